//! p-adic valuations of exact integers.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

/// `Finite(t)`: `p^t` divides the argument and `p^(t+1)` does not.
/// `Infinite`: the argument is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(t) => Some(t),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(t) => write!(f, "{t}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(t) => s.serialize_u32(*t),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Valuation of `a` at the prime `p`.
pub fn p_adic_valuation(a: &BigInt, p: u64) -> Valuation {
    if a.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut t = 0;
    let mut rest = a.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(t);
        }
        rest = q;
        t += 1;
    }
}

/// Valuation of a machine integer.
pub fn valuation_u64(a: u64, p: u64) -> Valuation {
    if a == 0 {
        return Valuation::Infinite;
    }
    let (mut a, mut t) = (a, 0);
    while a % p == 0 {
        a /= p;
        t += 1;
    }
    Valuation::Finite(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(p_adic_valuation(&BigInt::from(1197), 3), Valuation::Finite(2));
        assert_eq!(p_adic_valuation(&BigInt::from(0), 3), Valuation::Infinite);
        assert_eq!(p_adic_valuation(&BigInt::from(7), 3), Valuation::Finite(0));
        assert_eq!(p_adic_valuation(&BigInt::from(-81), 3), Valuation::Finite(4));
        assert_eq!(p_adic_valuation(&BigInt::from(1u64 << 40), 2), Valuation::Finite(40));
    }

    #[test]
    fn ordering_puts_infinite_last() {
        assert!(Valuation::Finite(1000) < Valuation::Infinite);
    }

    proptest! {
        #[test]
        fn multiplicative(a in -100_000i64..100_000, b in -100_000i64..100_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(p_adic_valuation(&(&a * &b), p), p_adic_valuation(&a, p) + p_adic_valuation(&b, p));
        }

        #[test]
        fn defining_property(a in 1u64..10_000_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let t = valuation_u64(a, p).finite().unwrap();
            prop_assert_eq!(a % p.pow(t), 0);
            prop_assert_ne!(a % p.pow(t + 1), 0);
            prop_assert_eq!(p_adic_valuation(&BigInt::from(a), p), Valuation::Finite(t));
        }
    }
}
