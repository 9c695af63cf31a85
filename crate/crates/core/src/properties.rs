//! Checkers for the congruences behind the period law. Each returns whether the
//! congruence holds; inputs that do not meet the hypotheses are rejected with
//! [`Error::PreconditionUnmet`] so sweeps can count them separately.
//!
//! All of these only look at residues modulo a small power of `p`, so the
//! iteration runs in that ring rather than over unbounded integers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{is_prime, LogisticMap, RingModulus};

fn unmet(msg: impl Into<String>) -> Error {
    Error::PreconditionUnmet(msg.into())
}

fn ring(p: u64, e: u32) -> Result<RingModulus> {
    RingModulus::new(p, e)
}

/// `(x + k p^w)^exp = x^exp (mod p^(w+2))` for `x = 0 (mod p)`, `exp >= 3`.
pub fn check_property3(x: u64, k: u64, w: u32, exp: u32, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !x.is_multiple_of(p) {
        return Err(unmet(format!("{x} is not a multiple of {p}")));
    }
    if k < 1 || w < 1 || exp < 3 {
        return Err(unmet("need k >= 1, w >= 1, exp >= 3"));
    }
    let p = BigInt::from(p);
    let q = p.pow(w + 2);
    let x = BigInt::from(x);
    let shifted = &x + BigInt::from(k) * p.pow(w);
    Ok(((shifted.pow(exp) - x.pow(exp)) % q).is_zero())
}

/// Iterating `F^reps` `i` times moves `x` by `k p^w * sum_{j<i} mu^(j*reps)`
/// modulo `p^(w+2)`, where `F^reps(x) = x + k p^w` with `k` a unit and
/// `sum_{j<reps} mu^j = 0 (mod p)`.
pub fn check_property4(x: u64, mu: u64, reps: u32, w: u32, i: u32, p: u64) -> Result<bool> {
    if !x.is_multiple_of(p) {
        return Err(unmet(format!("{x} is not a multiple of {p}")));
    }
    if reps < 1 || w < 2 || i < 1 {
        return Err(unmet("need reps >= 1, w >= 2, i >= 1"));
    }
    let q = ring(p, w + 2)?;
    let pw = p.pow(w);
    let f = LogisticMap::new(mu, q);
    let x = q.reduce(x);

    let d = (f.iterate(x, reps as u64) + q.modulus() - x) % q.modulus();
    if !d.is_multiple_of(pw) || d.is_multiple_of(pw * p) {
        return Err(unmet(format!("F^{reps}({x}) - {x} does not have valuation exactly {w}")));
    }
    let mu_sum = (0..reps as u64).fold(0, |acc, j| q.add(acc, q.pow(mu, j)));
    if mu_sum % p != 0 {
        return Err(unmet(format!("sum of mu^j for j < {reps} is not divisible by {p}")));
    }
    let k = d / pw;

    let step = q.pow(mu, reps as u64);
    let geometric = (0..i as u64).fold(0, |acc, j| q.add(acc, q.pow(step, j)));
    let expected = q.add(x, q.mul(q.mul(k, pw), geometric));
    Ok(f.iterate(x, i as u64 * reps as u64) == expected)
}

/// If `F^{mu_bar}(x) - x` has 3-adic valuation exactly `w >= 2`, then
/// `F^{mu_bar * 3^t}(x) - x` has valuation exactly `w + t`.
pub fn check_lifting_lemma(x: u64, mu: u64, w: u32, t: u32) -> Result<bool> {
    let mu_bar = mu % 3;
    if mu_bar == 0 {
        return Err(Error::MuDivisibleBy3(mu));
    }
    if !x.is_multiple_of(3) {
        return Err(unmet(format!("{x} is not a multiple of 3")));
    }
    if w < 2 {
        return Err(unmet("need w >= 2"));
    }
    let q = ring(3, w + t + 1)?;
    let f = LogisticMap::new(mu, q);
    let x = q.reduce(x);
    let diff = |reps: u64| (f.iterate(x, reps) + q.modulus() - x) % q.modulus();

    let d = diff(mu_bar);
    let (lo, hi) = (3u64.pow(w), 3u64.pow(w + 1));
    if d % lo != 0 || d % hi == 0 {
        return Err(unmet(format!("F^{mu_bar}({x}) - {x} does not have valuation exactly {w}")));
    }
    if t == 0 {
        return Ok(true);
    }
    let big = diff(mu_bar * 3u64.pow(t));
    Ok(big % 3u64.pow(w + t) == 0 && big != 0)
}
