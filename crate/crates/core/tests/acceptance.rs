//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed. All comparisons are exact integers.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use logistic_ring::verify::{self, SuiteReport};
use logistic_ring::Caps;

const BIN: &str = env!("CARGO_BIN_EXE_logistic-ring");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn from_suites(reports: &[SuiteReport]) -> Self {
        Verdict {
            ok: reports.iter().all(SuiteReport::passed),
            detail: reports.iter().map(|r| format!("\n      {r}")).collect(),
        }
    }

    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Verdict { ok, detail: detail.into() }
    }
}

fn cli(args: &str) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(BIN).args(args.split_whitespace()).output().expect("spawn cli");
    let elapsed = start.elapsed();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"), elapsed)
}

fn suite(r: logistic_ring::Result<SuiteReport>) -> SuiteReport {
    r.unwrap_or_else(|e| SuiteReport {
        name: "error".into(),
        checks: 1,
        skipped: 0,
        failures: 1,
        first_failure: Some(e.to_string()),
        failure_classes: Default::default(),
    })
}

fn coprime_mus() -> impl Iterator<Item = u64> + Clone {
    (0..243u64).filter(|m| m % 3 != 0)
}

fn worked_example() -> Verdict {
    let (code, out, t) = cli("period --n 7 --mu 20 --x0 50 --check");
    let lines: BTreeSet<&str> = out.lines().collect();
    let want = ["mu_bar=2", "v=2", "L=486", "oracle=486", "AGREE"];
    let missing: Vec<_> = want.iter().filter(|l| !lines.contains(**l)).collect();
    let fast = t < Duration::from_secs(1);
    Verdict::check(
        code == 0 && missing.is_empty() && fast,
        format!("exit={code} missing={missing:?} time={t:.2?}"),
    )
}

fn theorem1() -> Verdict {
    Verdict::from_suites(&[suite(verify::theorem1(coprime_mus(), 7, &Caps::default()))])
}

fn corollary1() -> Verdict {
    Verdict::from_suites(&[suite(verify::corollary1(&[3, 19, 2, 5, 8, 26, 17], 4..=8, &Caps::default()))])
}

fn property5() -> Verdict {
    Verdict::from_suites(&[suite(verify::property5(coprime_mus(), 7, &Caps::default()))])
}

fn property1() -> Verdict {
    Verdict::from_suites(&[suite(verify::property1(5, 50))])
}

fn structure_checkers() -> Verdict {
    Verdict::from_suites(&[
        verify::property2(6, 20),
        suite(verify::property3(6, 4)),
        suite(verify::property4(6, 4, 26, 4)),
        suite(verify::lemma1(6, 4, 3, 26)),
    ])
}

fn legacy_refutation() -> Verdict {
    let (code, out, t) = cli("counterexample --mu-max 27 --n 4");
    let mut rows = BTreeSet::new();
    for line in out.lines().filter(|l| l.starts_with("mu=")) {
        let f: Vec<u64> = line.split(' ').map(|kv| kv.split_once('=').unwrap().1.parse().unwrap()).collect();
        rows.insert((f[0], f[1], f[2], f[3]));
    }
    // 2 * 3^(n-2) at n = 4
    let missing: Vec<u64> = (0..=27)
        .filter(|m| m % 9 == 2 || m % 9 == 5)
        .filter(|&m| !rows.contains(&(m, 4, 1, 18)))
        .collect();
    let ok = code == 0 && !rows.is_empty() && missing.is_empty() && t < Duration::from_secs(10);
    Verdict::check(ok, format!("exit={code} rows={} missing={missing:?} time={t:.2?}", rows.len()))
}

fn fixture_regression() -> Verdict {
    let mut problems = Vec::new();
    let mut docs = Vec::new();
    for n in 1..=4 {
        let args = format!("graph --n {n} --mu 19 --format json");
        let (c1, a, _) = cli(&args);
        let (c2, b, _) = cli(&args);
        let fixture = std::fs::read_to_string(format!("{FIXTURES}/smn_p3_mu19_n{n}.json")).expect("fixture");
        if c1 != 0 || c2 != 0 {
            problems.push(format!("n={n} exit {c1}/{c2}"));
        }
        if a != b {
            problems.push(format!("n={n} output differs between runs"));
        }
        if a.trim_end() != fixture.trim_end() {
            problems.push(format!("n={n} differs from fixture"));
        }
        docs.push(serde_json::from_str::<serde_json::Value>(&a).unwrap_or_default());
    }
    let cycles = |n: usize| -> Vec<Vec<u64>> { serde_json::from_value(docs[n - 1]["cycles"].clone()).unwrap_or_default() };
    if !cycles(3).contains(&vec![3, 12, 21]) {
        problems.push("n=3 lacks cycle [3, 12, 21]".into());
    }
    let nine = cycles(4).into_iter().find(|c| c.len() == 9 && c.starts_with(&[3, 66, 21, 30]));
    if nine.is_none() {
        problems.push("n=4 lacks 9-cycle 3 -> 66 -> 21 -> 30".into());
    }
    Verdict::check(problems.is_empty(), format!("problems={problems:?}"))
}

fn tripling() -> Verdict {
    Verdict::from_suites(&[suite(verify::tripling(&[19, 20, 2, 17], 3..=6, &Caps::default()))])
}

fn witness() -> Verdict {
    let mus = (0..81u64).filter(|m| [1, 2, 4, 5, 7].contains(&(m % 9)));
    Verdict::from_suites(&[suite(verify::witness(mus, 4..=7, &Caps::default()))])
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("worked example n=7 mu=20 x0=50", worked_example),
        ("closed-form period == oracle, mu<243, n<=7", theorem1),
        ("max-period formula == oracle, n 4..8", corollary1),
        ("pre-period == entry index, class counts", property5),
        ("H permutation, p in {2,3,5,7}", property1),
        ("composition/congruence/lifting checkers", structure_checkers),
        ("legacy formula counterexamples mu<=27 n=4", legacy_refutation),
        ("mu=19 graph fixtures n 1..4", fixture_regression),
        ("cycle tripling mu {19,20,2,17}", tripling),
        ("witness condition == oracle, n 4..7", witness),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        println!(
            "criterion {:>2} {} {name} ({:.2?}) {}",
            i + 1,
            if v.ok { "PASS" } else { "FAIL" },
            start.elapsed(),
            v.detail
        );
        if !v.ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
