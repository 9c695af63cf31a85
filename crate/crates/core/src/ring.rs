//! Arithmetic of the logistic map over `Z/p^n`.
//!
//! Ring elements are plain `u64` residues. The modulus is restricted to
//! `p^n < 2^63`, so every product of two residues fits in a `u128` and
//! `mu * x * (x + 1)` is reduced in two exact steps. Anything larger than that
//! is far beyond the state-space caps used by the sweeps and is rejected at
//! construction. Unreduced evaluation goes through `BigInt`.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted, `2^63 - 1`.
pub const MAX_MODULUS: u64 = (1 << 63) - 1;

/// The ring `Z/p^n` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RingModulus {
    p: u64,
    n: u32,
    modulus: u64,
}

impl RingModulus {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 1 {
            return Err(Error::InvalidExponent(n));
        }
        let modulus = p
            .checked_pow(n)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or(Error::ModulusTooLarge { p, n })?;
        Ok(Self { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The ring one exponent higher, `Z/p^(n+1)`.
    pub fn lifted(&self) -> Result<Self> {
        Self::new(self.p, self.n + 1)
    }

    pub fn reduce(&self, value: u64) -> u64 {
        value % self.modulus
    }

    /// Reduces an arbitrary-size non-negative integer.
    pub fn reduce_big(&self, value: &num_bigint::BigUint) -> u64 {
        let r = value % self.modulus;
        r.try_into().expect("residue below a u64 modulus")
    }

    /// Whether `x` belongs to `H = { x : x = 0 mod p }`.
    pub fn in_h(&self, x: u64) -> bool {
        x.is_multiple_of(self.p)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = base % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for RingModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.n)
    }
}

/// Trial division; bases are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `f(x) = mu * x * (x + 1) mod p^n` for one fixed `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogisticMap {
    mu: u64,
    ring: RingModulus,
}

impl LogisticMap {
    /// `mu` is reduced modulo `p^n`.
    pub fn new(mu: u64, ring: RingModulus) -> Self {
        Self { mu: ring.reduce(mu), ring }
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn ring(&self) -> &RingModulus {
        &self.ring
    }

    /// Same parameter over `Z/p^(n+1)`.
    pub fn lifted(&self) -> Result<Self> {
        Ok(Self::new(self.mu, self.ring.lifted()?))
    }

    /// One application of the map. `x` must already be reduced.
    #[inline]
    pub fn step(&self, x: u64) -> u64 {
        debug_assert!(x < self.ring.modulus);
        let m = self.ring.modulus as u128;
        let mx = (self.mu as u128 * x as u128) % m;
        ((mx * (x as u128 + 1)) % m) as u64
    }

    /// `f^k(x)`; `k = 0` returns `x`.
    pub fn iterate(&self, x: u64, k: u64) -> u64 {
        (0..k).fold(x, |acc, _| self.step(acc))
    }
}

/// `F^reps(x)` over the integers, `F(x) = mu * x * (x + 1)`.
pub fn eval_f_unreduced(x: &BigInt, mu: &BigInt, reps: u32) -> BigInt {
    let mut acc = x.clone();
    for _ in 0..reps {
        let next = mu * &acc * (&acc + 1u32);
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, n: u32) -> RingModulus {
        RingModulus::new(p, n).unwrap()
    }

    #[test]
    fn modulus_construction() {
        assert_eq!(ring(3, 3).modulus(), 27);
        assert_eq!(ring(3, 7).modulus(), 2187);
        assert_eq!(RingModulus::new(4, 2), Err(Error::NotPrime(4)));
        assert_eq!(RingModulus::new(1, 2), Err(Error::NotPrime(1)));
        assert_eq!(RingModulus::new(3, 0), Err(Error::InvalidExponent(0)));
        assert_eq!(RingModulus::new(3, 40), Err(Error::ModulusTooLarge { p: 3, n: 40 }));
        assert_eq!(ring(2, 62).modulus(), 1 << 62);
    }

    #[test]
    fn step_examples() {
        let f = LogisticMap::new(19, ring(3, 3));
        assert_eq!(f.step(3), 12);
        assert_eq!(f.step(12), 21);
        assert_eq!(f.step(21), 3);
        for p in [2, 3, 5, 7] {
            for mu in 0..30 {
                assert_eq!(LogisticMap::new(mu, ring(p, 3)).step(0), 0);
            }
        }
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(LogisticMap::new(19, ring(3, 3)).iterate(3, 3), 3);
        assert_eq!(LogisticMap::new(20, ring(3, 7)).iterate(50, 0), 50);
        assert_eq!(LogisticMap::new(19, ring(3, 4)).iterate(3, 9), 3);
    }

    #[test]
    fn no_overflow_near_the_top() {
        let r = ring(2, 62);
        let x = r.modulus() - 1;
        let f = LogisticMap::new(x, r);
        let expect = (num_bigint::BigUint::from(x) * x * (x as u128 + 1)) % r.modulus();
        assert_eq!(num_bigint::BigUint::from(f.step(x)), expect);
    }

    #[test]
    fn unreduced_examples() {
        let b = BigInt::from;
        assert_eq!(eval_f_unreduced(&b(3), &b(2), 2), b(1200));
        assert_eq!(eval_f_unreduced(&b(3), &b(2), 1), b(24));
        assert_eq!(eval_f_unreduced(&b(0), &b(17), 4), b(0));
    }

    #[test]
    fn mu_is_reduced() {
        let r = ring(3, 3);
        assert_eq!(LogisticMap::new(19 + 27 * 5, r), LogisticMap::new(19, r));
    }

    #[test]
    fn permutation_on_h() {
        // x -> f(x) restricted to multiples of p is a bijection when p does not divide mu.
        for p in [2u64, 3, 5, 7] {
            for n in 1..=5u32 {
                let r = ring(p, n);
                let mus: Vec<u64> = (1..).filter(|m| m % p != 0).take(50).collect();
                for mu in mus {
                    let f = LogisticMap::new(mu, r);
                    let mut hit = vec![false; r.modulus() as usize];
                    for x in (0..r.modulus()).step_by(p as usize) {
                        let y = f.step(x);
                        assert!(r.in_h(y));
                        assert!(!hit[y as usize], "p={p} n={n} mu={mu}: {y} hit twice");
                        hit[y as usize] = true;
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn iterate_composes(x in 0u64..2187, mu in 0u64..5000, a in 0u64..40, b in 0u64..40) {
            let f = LogisticMap::new(mu, ring(3, 7));
            prop_assert_eq!(f.iterate(x, a + b), f.iterate(f.iterate(x, a), b));
        }

        #[test]
        fn step_matches_unreduced(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u32..6, x in 0u64..100_000, mu in 0u64..100_000) {
            let r = ring(p, n);
            let (x, mu) = (r.reduce(x), r.reduce(mu));
            let f = LogisticMap::new(mu, r);
            let exact = eval_f_unreduced(&BigInt::from(x), &BigInt::from(mu), 1) % r.modulus();
            prop_assert_eq!(BigInt::from(f.step(x)), exact);
        }
    }
}
