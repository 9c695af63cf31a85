//! Dense integer polynomials and the symbolic self-composition of
//! `F(x) = mu * x * (x + 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Default cap on `log2(degree)` for [`compose_poly`].
pub const DEFAULT_DEGREE_CAP_LOG2: u32 = 12;

/// Polynomial with exact integer coefficients; `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Trailing zero coefficients are dropped.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::from(1)])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation over the integers.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Evaluation reduced into `[0, modulus)`.
    pub fn eval_mod(&self, x: u64, modulus: u64) -> u64 {
        let m = BigInt::from(modulus);
        let x = BigInt::from(x);
        let r = self
            .coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &x + c) % &m);
        let r = if r.is_negative() { r + &m } else { r };
        r.try_into().expect("reduced value fits in u64")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            let unit = a == BigInt::from(1) && i > 0;
            if !unit {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `F^reps(x)` as an exact polynomial, where `F(x) = mu * x * (x + 1)`.
///
/// The degree is `2^reps`; `reps` above `cap_log2` is rejected.
pub fn compose_poly(mu: &BigInt, reps: u32, cap_log2: u32) -> Result<IntPoly> {
    if reps > cap_log2 {
        return Err(Error::DegreeCapExceeded { reps, cap_log2 });
    }
    let one = IntPoly::new(vec![BigInt::from(1)]);
    let mut acc = IntPoly::x();
    for _ in 0..reps {
        acc = acc.mul(&acc.add(&one)).scale(mu);
    }
    Ok(acc)
}
