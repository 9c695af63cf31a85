//! Exact period analysis of the logistic map `f(x) = mu * x * (x + 1) mod p^n`.
//!
//! The crate is split the same way the analysis is:
//!
//! * [`ring`], [`poly`], [`valuation`]: exact arithmetic in `Z/p^n`, unreduced
//!   integer evaluation, symbolic self-composition and p-adic valuations.
//! * [`orbit`]: brute-force ground truth (Brent's algorithm for single orbits,
//!   a successor-table pass for whole rings).
//! * [`law`], [`maxperiod`], [`properties`]: the closed-form period law over
//!   `Z/3^n`, the maximum-period formula and checkers for the supporting
//!   congruences.
//! * [`smn`]: the state-mapping network (functional graph) of the map, its
//!   cycle/tree decomposition and DOT/JSON export.
//! * [`verify`] and [`cli`]: the sweep suites and the command-line front end.

pub mod cli;
pub mod error;
pub mod law;
pub mod maxperiod;
pub mod orbit;
pub mod poly;
pub mod properties;
pub mod ring;
pub mod smn;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use law::{closed_form_period, entry_index, v_of, Branch, PeriodLawResult};
pub use maxperiod::{
    achieves_max_period, find_legacy_counterexamples, legacy_max_period, max_period_bruteforce,
    max_period_formula, LegacyCounterexample, MaxPeriodReport, MuClass, ReportSource,
};
pub use orbit::{detect_orbit, sweep_orbits, Caps, OrbitInfo};
pub use poly::{compose_poly, IntPoly, DEFAULT_DEGREE_CAP_LOG2};
pub use ring::{eval_f_unreduced, LogisticMap, RingModulus};
pub use smn::{build_smn, cycle_expansion_check, decompose, export_dot, SmnDecomposition, SmnGraph};
pub use valuation::{p_adic_valuation, Valuation};
