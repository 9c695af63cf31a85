//! Maximum period over all starting values: the closed formula over `Z/3^n`,
//! the exhaustive oracle, the residue-set test for maximal starting values and
//! the older formula it replaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::law::{closed_form_period, entry_index, require_base3};
use crate::orbit::{detect_orbit, sweep_orbits, Caps};
use crate::ring::{LogisticMap, RingModulus};

/// Residue of `mu` that selects the formula case, e.g. `17 mod 27`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MuClass {
    pub modulus: u64,
    pub residue: u64,
}

impl MuClass {
    /// Governing class over `Z/3^n`: mod 3 for `mu = 0, 1 (mod 3)`, mod 9 for
    /// `mu = 2, 5 (mod 9)`, mod 27 for `mu = 8 (mod 9)`. Other bases use `mu mod p`.
    pub fn of(mu: u64, p: u64) -> Self {
        let modulus = if p != 3 || mu % 3 != 2 {
            p
        } else if mu % 9 != 8 {
            9
        } else {
            27
        };
        Self {
            modulus,
            residue: mu % modulus,
        }
    }
}

impl std::fmt::Display for MuClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "mu mod {} = {}", self.modulus, self.residue)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReportSource {
    Formula,
    /// The formula exponent was negative for this `n`; an exhaustive sweep was used.
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxPeriodReport {
    pub mu_class: MuClass,
    pub max_period: u64,
    pub witness: Option<u64>,
    pub source: ReportSource,
}

/// `(multiplier, exponent offset)` with `L = multiplier * 3^(n - offset)`.
fn formula_case(mu: u64) -> (u64, u32) {
    match mu % 3 {
        0 => (1, 0),
        1 => (1, 2),
        _ if mu % 27 == 17 => (2, 4),
        _ if mu % 9 == 8 => (2, 3),
        _ => (2, 2),
    }
}

/// Maximum period over `Z/3^n` from the residue class of `mu`.
///
/// Falls back to [`max_period_bruteforce`] when `n` is below the exponent
/// offset of the class.
pub fn max_period_formula(map: &LogisticMap, caps: &Caps) -> Result<MaxPeriodReport> {
    let ring = map.ring();
    require_base3(ring)?;
    let mu = map.mu();
    let (mult, offset) = formula_case(mu);
    let n = ring.n();
    if n < offset {
        return max_period_bruteforce(map, caps);
    }
    let max_period = if mu.is_multiple_of(3) { 1 } else { mult * 3u64.pow(n - offset) };
    // Small multiples of 3 that realise the maximum; which one does depends on
    // mu beyond its governing residue, so each is confirmed by the closed form.
    let witness = if mu.is_multiple_of(3) {
        Some(0)
    } else {
        [3u64, 6, 12, 15, 21, 24]
            .into_iter()
            .map(|x| ring.reduce(x))
            .find(|&x| closed_form_period(x, map).is_ok_and(|r| r.period == max_period))
    };
    Ok(MaxPeriodReport {
        mu_class: MuClass::of(mu, 3),
        max_period,
        witness,
        source: ReportSource::Formula,
    })
}

/// Exact maximum over every starting value. The witness is the smallest cycle
/// node on a longest cycle.
pub fn max_period_bruteforce(map: &LogisticMap, caps: &Caps) -> Result<MaxPeriodReport> {
    let table = sweep_orbits(map, caps)?;
    let max_period = table.iter().map(|o| o.period).max().unwrap_or(1);
    let witness = table
        .iter()
        .position(|o| o.period == max_period && o.pre_period == 0)
        .map(|x| x as u64);
    Ok(MaxPeriodReport {
        mu_class: MuClass::of(map.mu(), map.ring().p()),
        max_period,
        witness,
        source: ReportSource::BruteForce,
    })
}

const SET_A: [u64; 3] = [3, 12, 21];
const SET_B: [u64; 3] = [6, 15, 24];

/// Whether the orbit of `x0` reaches the maximum period, decided by the
/// residue of `f^{i*}(x0)` modulo 27.
///
/// Classes without a residue set (`mu = 8 (mod 9)`) compare the closed form
/// against the maximum-period formula; rings below `3^4` ask the oracle.
pub fn achieves_max_period(x0: u64, map: &LogisticMap, caps: &Caps) -> Result<bool> {
    let ring = map.ring();
    require_base3(ring)?;
    let mu = map.mu();
    if mu.is_multiple_of(3) {
        return Err(Error::MuDivisibleBy3(mu));
    }
    let x0 = ring.reduce(x0);
    if ring.n() < 4 {
        let max = max_period_bruteforce(map, caps)?.max_period;
        return Ok(detect_orbit(x0, map, caps)?.period == max);
    }
    let residue = map.iterate(x0, entry_index(x0) as u64) % 27;
    let in_a = SET_A.contains(&residue);
    let in_b = SET_B.contains(&residue);
    Ok(match mu % 9 {
        1 | 2 | 5 => in_a || in_b,
        4 => in_a,
        7 => in_b,
        _ => closed_form_period(x0, map)?.period == max_period_formula(map, caps)?.max_period,
    })
}

/// The earlier published maximum-period formula over `Z/3^n`, kept verbatim:
/// 1 for `mu mod 3` in {0, 2}, `3^(n-2)` for `mu mod 9 = 1`, `3^(n-3)` for
/// `mu mod 9` in {4, 7}. It is wrong for several classes.
pub fn legacy_max_period(mu: u64, n: u32) -> Result<u64> {
    let offset = match mu % 9 {
        _ if mu % 3 != 1 => return Ok(1),
        1 => 2,
        _ => 3,
    };
    let exponent = n as i64 - offset;
    if exponent < 0 {
        return Err(Error::ExponentOutOfRange { n, exponent });
    }
    Ok(3u64.pow(exponent as u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LegacyCounterexample {
    pub mu: u64,
    pub n: u32,
    pub legacy: u64,
    pub actual: u64,
}

/// Every `(mu, n)` where the legacy formula disagrees with the exhaustive
/// maximum, sorted by `mu` then `n`. Pairs where the legacy exponent would be
/// negative are skipped.
pub fn find_legacy_counterexamples(
    mus: impl IntoIterator<Item = u64>,
    ns: impl IntoIterator<Item = u32> + Clone,
    caps: &Caps,
) -> Result<Vec<LegacyCounterexample>> {
    let mut out = Vec::new();
    let mut mus: Vec<u64> = mus.into_iter().collect();
    mus.sort_unstable();
    mus.dedup();
    let mut ns: Vec<u32> = ns.into_iter().collect();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        let ring = RingModulus::new(3, n)?;
        Caps::check(ring.modulus(), caps.sweep)?;
    }
    for &mu in &mus {
        for &n in &ns {
            let Ok(legacy) = legacy_max_period(mu, n) else {
                continue;
            };
            let map = LogisticMap::new(mu, RingModulus::new(3, n)?);
            let actual = max_period_bruteforce(&map, caps)?.max_period;
            if actual != legacy {
                out.push(LegacyCounterexample { mu, n, legacy, actual });
            }
        }
    }
    Ok(out)
}
