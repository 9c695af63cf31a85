//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (including a DISAGREE
//! verdict), 2 usage or validation error, 3 resource cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::error::Error;
use crate::law::{closed_form_period, Branch};
use crate::maxperiod::{find_legacy_counterexamples, max_period_bruteforce, max_period_formula, MaxPeriodReport};
use crate::orbit::{detect_orbit, Caps};
use crate::ring::{LogisticMap, RingModulus};
use crate::smn::{build_smn, decompose, export_dot, export_json};
use crate::valuation::Valuation;
use crate::verify::{run_suite, VerifyConfig, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "logistic-ring", version, about = "Periods of the logistic map mu*x*(x+1) over Z/p^n")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pre-period, period and cycle entry of one trajectory (brute force)
    Orbit(RingArgs),
    /// Closed-form period over Z/3^n
    Period(PeriodArgs),
    /// Maximum period over all starting values
    Maxperiod(MaxPeriodArgs),
    /// State-mapping network as DOT or JSON
    Graph(RingArgs),
    /// Run the verification sweeps
    Verify(VerifyArgs),
    /// Search for disagreements between the legacy formula and brute force
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    orbit_cap: Option<u64>,
    #[arg(long)]
    sweep_cap: Option<u64>,
    #[arg(long)]
    graph_cap: Option<u64>,
}

impl Common {
    fn caps(&self) -> Result<Caps, Failure> {
        let d = Caps::default();
        let caps = Caps {
            orbit: self.orbit_cap.unwrap_or(d.orbit),
            sweep: self.sweep_cap.unwrap_or(d.sweep),
            graph: self.graph_cap.unwrap_or(d.graph),
        };
        if caps.orbit == 0 || caps.sweep == 0 || caps.graph == 0 {
            return Err(Failure::usage("caps must be positive"));
        }
        Ok(caps)
    }
}

#[derive(Debug, Args)]
struct RingArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    x0: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct PeriodArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Also run the brute-force oracle and print AGREE/DISAGREE
    #[arg(long)]
    check: bool,
}

#[derive(Debug, Args)]
struct MaxPeriodArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Require the exhaustive oracle even when it is not needed
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 7)]
    n_max: u32,
    #[arg(long, default_value_t = 242)]
    mu_max: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    /// A single mu to test
    #[arg(long, conflicts_with = "mu_max")]
    mu: Option<u64>,
    /// Test every mu in 0..=mu_max
    #[arg(long)]
    mu_max: Option<u64>,
    /// A single exponent to test
    #[arg(long, conflicts_with = "n_max")]
    n: Option<u32>,
    /// Test every exponent in 1..=n_max
    #[arg(long)]
    n_max: Option<u32>,
    #[command(flatten)]
    common: Common,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_cap() { EXIT_CAP } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

struct Report {
    code: i32,
    body: String,
    warnings: Vec<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };

    let out_path = match &cli.command {
        Command::Orbit(a) | Command::Graph(a) => a.common.out.clone(),
        Command::Period(a) => a.ring.common.out.clone(),
        Command::Maxperiod(a) => a.ring.common.out.clone(),
        Command::Verify(a) => a.common.out.clone(),
        Command::Counterexample(a) => a.common.out.clone(),
    };

    let result = match cli.command {
        Command::Orbit(a) => cmd_orbit(&a),
        Command::Period(a) => cmd_period(&a),
        Command::Maxperiod(a) => cmd_maxperiod(&a),
        Command::Graph(a) => cmd_graph(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Counterexample(a) => cmd_counterexample(&a),
    };

    match result {
        Ok(report) => {
            let mut stderr = String::new();
            for w in &report.warnings {
                writeln!(stderr, "warning: {w}").unwrap();
            }
            match out_path {
                Some(path) => match std::fs::write(&path, &report.body) {
                    Ok(()) => Outcome { code: report.code, stdout: String::new(), stderr },
                    Err(e) => {
                        writeln!(stderr, "error: cannot write {}: {e}", path.display()).unwrap();
                        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr }
                    }
                },
                None => Outcome { code: report.code, stdout: report.body, stderr },
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn parse_decimal(name: &str, s: &str) -> Result<BigUint, Failure> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::usage(format!("--{name} must be a non-negative decimal integer, got {s:?}")));
    }
    Ok(s.parse().expect("digits parse"))
}

/// Parses a decimal value and reduces it into the ring, noting any reduction.
fn ring_value(name: &str, s: &str, ring: &RingModulus, warnings: &mut Vec<String>) -> Result<u64, Failure> {
    let big = parse_decimal(name, s)?;
    let reduced = ring.reduce_big(&big);
    if big != BigUint::from(reduced) {
        warnings.push(format!("{name}={big} reduced mod {ring} to {reduced}"));
    }
    Ok(reduced)
}

struct Setup {
    map: LogisticMap,
    x0: Option<u64>,
    caps: Caps,
    warnings: Vec<String>,
}

fn setup(a: &RingArgs) -> Result<Setup, Failure> {
    let ring = RingModulus::new(a.p, a.n)?;
    let caps = a.common.caps()?;
    let mut warnings = Vec::new();
    let mu = ring_value("mu", &a.mu, &ring, &mut warnings)?;
    let x0 = a.x0.as_deref().map(|s| ring_value("x0", s, &ring, &mut warnings)).transpose()?;
    Ok(Setup {
        map: LogisticMap::new(mu, ring),
        x0,
        caps,
        warnings,
    })
}

fn reject_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        Err(Failure::usage("--format dot is only available for graph"))
    } else {
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct OrbitDoc {
    p: u64,
    n: u32,
    mu: u64,
    x0: u64,
    pre_period: u64,
    period: u64,
    cycle_entry: u64,
}

fn cmd_orbit(a: &RingArgs) -> Result<Report, Failure> {
    reject_dot(a.common.format)?;
    let s = setup(a)?;
    let x0 = s.x0.ok_or_else(|| Failure::usage("orbit needs --x0"))?;
    let info = detect_orbit(x0, &s.map, &s.caps)?;
    let ring = s.map.ring();
    let body = match a.common.format {
        Format::Json => to_json(&OrbitDoc {
            p: ring.p(),
            n: ring.n(),
            mu: s.map.mu(),
            x0,
            pre_period: info.pre_period,
            period: info.period,
            cycle_entry: info.cycle_entry,
        }),
        _ => {
            let mut t = format!(
                "ring={ring} mu={} x0={x0}\npre_period={}\nperiod={}\ncycle_entry={}\n",
                s.map.mu(),
                info.pre_period,
                info.period,
                info.cycle_entry
            );
            if ring.p() != 3 {
                t.push_str("note: brute-force result only; the closed form covers p=3\n");
            }
            t
        }
    };
    Ok(Report { code: EXIT_OK, body, warnings: s.warnings })
}

#[derive(Serialize)]
struct PeriodDoc {
    n: u32,
    mu: u64,
    x0: u64,
    mu_bar: u8,
    entry_index: u8,
    entry_value: u64,
    v: Valuation,
    branch: Branch,
    period: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_period: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
}

fn cmd_period(a: &PeriodArgs) -> Result<Report, Failure> {
    reject_dot(a.ring.common.format)?;
    if a.ring.p != 3 {
        return Err(Failure::usage(format!("period needs p=3, got p={}", a.ring.p)));
    }
    let s = setup(&a.ring)?;
    let x0 = s.x0.ok_or_else(|| Failure::usage("period needs --x0"))?;
    let law = closed_form_period(x0, &s.map)?;
    let oracle = if a.check {
        Some(detect_orbit(x0, &s.map, &s.caps)?.period)
    } else {
        None
    };
    let verdict = oracle.map(|o| if o == law.period { "AGREE" } else { "DISAGREE" });
    let code = if verdict == Some("DISAGREE") { EXIT_VERIFY_FAILED } else { EXIT_OK };
    let body = match a.ring.common.format {
        Format::Json => to_json(&PeriodDoc {
            n: s.map.ring().n(),
            mu: s.map.mu(),
            x0,
            mu_bar: law.mu_bar,
            entry_index: law.entry_index,
            entry_value: law.entry_value,
            v: law.v,
            branch: law.branch,
            period: law.period,
            oracle_period: oracle,
            verdict,
        }),
        _ => {
            let mut t = format!(
                "ring={} mu={} x0={x0}\nmu_bar={}\ni*={}\nx_i*={}\nv={}\nbranch={}\nL={}\n",
                s.map.ring(),
                s.map.mu(),
                law.mu_bar,
                law.entry_index,
                law.entry_value,
                law.v,
                law.branch,
                law.period
            );
            if let (Some(o), Some(v)) = (oracle, verdict) {
                writeln!(t, "oracle={o}\n{v}").unwrap();
            }
            t
        }
    };
    Ok(Report { code, body, warnings: s.warnings })
}

#[derive(Serialize)]
struct MaxPeriodDoc {
    p: u64,
    n: u32,
    mu: u64,
    formula: Option<MaxPeriodReport>,
    oracle: Option<MaxPeriodReport>,
}

fn cmd_maxperiod(a: &MaxPeriodArgs) -> Result<Report, Failure> {
    reject_dot(a.ring.common.format)?;
    let s = setup(&a.ring)?;
    let ring = *s.map.ring();
    let formula = if ring.p() == 3 {
        Some(max_period_formula(&s.map, &s.caps)?)
    } else {
        None
    };
    let oracle = if a.oracle || formula.is_none() || ring.modulus() <= s.caps.sweep {
        Some(max_period_bruteforce(&s.map, &s.caps)?)
    } else {
        None
    };
    let disagree = matches!((&formula, &oracle), (Some(f), Some(o)) if f.max_period != o.max_period);
    let code = if disagree { EXIT_VERIFY_FAILED } else { EXIT_OK };
    let body = match a.ring.common.format {
        Format::Json => to_json(&MaxPeriodDoc {
            p: ring.p(),
            n: ring.n(),
            mu: s.map.mu(),
            formula,
            oracle,
        }),
        _ => {
            let mut t = format!("ring={ring} mu={}\n", s.map.mu());
            let fmt_w = |w: Option<u64>| w.map_or("none".to_string(), |w| w.to_string());
            if let Some(f) = &formula {
                writeln!(t, "class={}\nformula={} source={:?} witness={}", f.mu_class, f.max_period, f.source, fmt_w(f.witness)).unwrap();
            }
            if let Some(o) = &oracle {
                writeln!(t, "oracle={} witness={}", o.max_period, fmt_w(o.witness)).unwrap();
            }
            if disagree {
                t.push_str("DISAGREE\n");
            }
            t
        }
    };
    Ok(Report { code, body, warnings: s.warnings })
}

fn cmd_graph(a: &RingArgs) -> Result<Report, Failure> {
    let s = setup(a)?;
    if s.x0.is_some() {
        return Err(Failure::usage("graph does not take --x0"));
    }
    let g = build_smn(s.map.mu(), *s.map.ring(), &s.caps)?;
    let d = decompose(&g);
    let body = match a.common.format {
        Format::Dot => export_dot(&g, Some(&d)),
        Format::Json => {
            let mut j = export_json(&g, &d);
            j.push('\n');
            j
        }
        Format::Text => {
            let mut t = format!("ring={} mu={}\ncycles={}\n", g.ring(), g.mu(), d.cycles().len());
            for (len, count) in d.cycle_length_multiset() {
                writeln!(t, "cycle_length {len}: {count}").unwrap();
            }
            for (depth, count) in d.tail_depth_histogram() {
                writeln!(t, "tail_depth {depth}: {count}").unwrap();
            }
            t
        }
    };
    Ok(Report { code: EXIT_OK, body, warnings: s.warnings })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report, Failure> {
    reject_dot(a.common.format)?;
    let cfg = VerifyConfig {
        n_max: a.n_max,
        mu_max: a.mu_max,
        caps: a.common.caps()?,
    };
    if cfg.n_max < 1 {
        return Err(Failure::usage("--n-max must be at least 1"));
    }
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(Failure::usage(format!("unknown suite {:?}; expected all or one of {}", a.suite, SUITES.join(", "))));
    };
    let mut reports = Vec::new();
    for name in names {
        reports.push(run_suite(name, &cfg)?);
    }
    let ok = reports.iter().all(|r| r.passed());
    let body = match a.common.format {
        Format::Json => to_json(&reports),
        _ => {
            let mut t = String::new();
            for r in &reports {
                writeln!(t, "{r}").unwrap();
            }
            writeln!(t, "overall {}", if ok { "PASS" } else { "FAIL" }).unwrap();
            t
        }
    };
    Ok(Report {
        code: if ok { EXIT_OK } else { EXIT_VERIFY_FAILED },
        body,
        warnings: Vec::new(),
    })
}

fn cmd_counterexample(a: &CounterexampleArgs) -> Result<Report, Failure> {
    reject_dot(a.common.format)?;
    let caps = a.common.caps()?;
    let mus: Vec<u64> = match (a.mu, a.mu_max) {
        (Some(m), _) => vec![m],
        (None, Some(max)) => (0..=max).collect(),
        (None, None) => return Err(Failure::usage("counterexample needs --mu or --mu-max")),
    };
    let ns: Vec<u32> = match (a.n, a.n_max) {
        (Some(n), _) => vec![n],
        (None, Some(max)) => (1..=max).collect(),
        (None, None) => return Err(Failure::usage("counterexample needs --n or --n-max")),
    };
    let found = find_legacy_counterexamples(mus, ns, &caps)?;
    let body = match a.common.format {
        Format::Json => to_json(&found),
        _ => {
            let mut t = String::new();
            for c in &found {
                writeln!(t, "mu={} n={} legacy={} actual={}", c.mu, c.n, c.legacy, c.actual).unwrap();
            }
            writeln!(t, "counterexamples={}", found.len()).unwrap();
            t
        }
    };
    Ok(Report { code: EXIT_OK, body, warnings: Vec::new() })
}
