//! Closed-form period law for the logistic map over `Z/3^n`.
//!
//! For `mu_bar = mu mod 3` and the entry value `x_i* = f^{i*}(x0)`, let `v` be
//! the 3-adic valuation of `F^{mu_bar}(x_i*) - x_i*` computed over the
//! integers. Then the period is `mu_bar * 3^(n - v)` when `n >= v`, and at most
//! `mu_bar` otherwise.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{eval_f_unreduced, LogisticMap, RingModulus};
use crate::valuation::{p_adic_valuation, Valuation};

/// Which case of the law produced the period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// `mu = 0 (mod 3)`: the orbit collapses onto a fixed point.
    MuBarZero,
    /// `v` finite and `n >= v`: period `mu_bar * 3^(n - v)`.
    Formula,
    /// `n < v` (or `v` infinite): period is 1 or `mu_bar`, settled by a direct check.
    SmallN,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::MuBarZero => "MuBarZero",
            Branch::Formula => "Formula",
            Branch::SmallN => "SmallN",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodLawResult {
    pub mu_bar: u8,
    pub entry_index: u8,
    pub entry_value: u64,
    pub v: Valuation,
    pub branch: Branch,
    pub period: u64,
}

/// Steps needed to reach a multiple of 3: 0, 1 or 2 for `x0 mod 3` = 0, 2, 1.
pub fn entry_index(x0: u64) -> u8 {
    match x0 % 3 {
        0 => 0,
        2 => 1,
        _ => 2,
    }
}

pub(crate) fn require_base3(ring: &RingModulus) -> Result<()> {
    if ring.p() == 3 {
        Ok(())
    } else {
        Err(Error::NotBase3(ring.p()))
    }
}

/// Entry value `x_i*` and the valuation `v` of `F^{mu_bar}(x_i*) - x_i*`.
pub fn v_of(x0: u64, map: &LogisticMap) -> Result<(u64, Valuation)> {
    require_base3(map.ring())?;
    let mu_bar = map.mu() % 3;
    if mu_bar == 0 {
        return Err(Error::MuDivisibleBy3(map.mu()));
    }
    let x0 = map.ring().reduce(x0);
    let entry = map.iterate(x0, entry_index(x0) as u64);
    let e = BigInt::from(entry);
    let diff = eval_f_unreduced(&e, &BigInt::from(map.mu()), mu_bar as u32) - &e;
    Ok((entry, p_adic_valuation(&diff, 3)))
}

pub fn closed_form_period(x0: u64, map: &LogisticMap) -> Result<PeriodLawResult> {
    let ring = map.ring();
    require_base3(ring)?;
    let x0 = ring.reduce(x0);
    let i_star = entry_index(x0);
    let mu_bar = (map.mu() % 3) as u8;

    if mu_bar == 0 {
        return mu_bar_zero(x0, i_star, map);
    }

    let (entry, v) = v_of(x0, map)?;
    let n = ring.n();
    let (branch, period) = match v {
        Valuation::Finite(t) if t <= n => (Branch::Formula, mu_bar as u64 * 3u64.pow(n - t)),
        _ => {
            let period = if map.step(entry) == entry { 1 } else { mu_bar as u64 };
            (Branch::SmallN, period)
        }
    };
    Ok(PeriodLawResult {
        mu_bar,
        entry_index: i_star,
        entry_value: entry,
        v,
        branch,
        period,
    })
}

/// Every step multiplies by `mu`, so the 3-adic valuation of the iterate grows
/// by at least one per step once it is positive; the value reaches a fixed
/// point within `n + 1` steps.
fn mu_bar_zero(x0: u64, i_star: u8, map: &LogisticMap) -> Result<PeriodLawResult> {
    let bound = map.ring().n() as u64 + 2;
    let mut x = x0;
    for _ in 0..bound {
        let y = map.step(x);
        if y == x {
            return Ok(PeriodLawResult {
                mu_bar: 0,
                entry_index: i_star,
                entry_value: x,
                v: Valuation::Infinite,
                branch: Branch::MuBarZero,
                period: 1,
            });
        }
        x = y;
    }
    Err(Error::PreconditionUnmet(format!(
        "orbit of {x0} under mu = {} did not settle within {bound} steps",
        map.mu()
    )))
}
