//! Brute-force orbit detection, the ground truth every closed form is checked
//! against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::LogisticMap;
use crate::smn;

/// Size guards for orbit scans, exhaustive sweeps and graph construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest ring a single orbit scan may run in.
    pub orbit: u64,
    /// Largest ring an exhaustive sweep over every `x0` may cover.
    pub sweep: u64,
    /// Largest state-mapping network that may be materialized.
    pub graph: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            orbit: 3u64.pow(17),
            sweep: 3u64.pow(13),
            graph: 3u64.pow(13),
        }
    }
}

impl Caps {
    pub(crate) fn check(states: u64, cap: u64) -> Result<()> {
        if states > cap {
            Err(Error::StateSpaceTooLarge { states, cap })
        } else {
            Ok(())
        }
    }
}

/// Pre-period, period and the first cycle value of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitInfo {
    pub pre_period: u64,
    pub period: u64,
    /// `x_{pre_period}`, the first value of the trajectory that lies on its cycle.
    pub cycle_entry: u64,
}

/// Brent's cycle detection on the trajectory of `x0`.
pub fn detect_orbit(x0: u64, map: &LogisticMap, caps: &Caps) -> Result<OrbitInfo> {
    let ring = map.ring();
    Caps::check(ring.modulus(), caps.orbit)?;
    let x0 = ring.reduce(x0);

    let mut power = 1u64;
    let mut period = 1u64;
    let mut tortoise = x0;
    let mut hare = map.step(x0);
    while tortoise != hare {
        if power == period {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        hare = map.step(hare);
        period += 1;
    }

    let mut tortoise = x0;
    let mut hare = map.iterate(x0, period);
    let mut pre_period = 0u64;
    while tortoise != hare {
        tortoise = map.step(tortoise);
        hare = map.step(hare);
        pre_period += 1;
    }

    Ok(OrbitInfo {
        pre_period,
        period,
        cycle_entry: tortoise,
    })
}

/// Orbit information for every `x0` in the ring, indexed by `x0`.
///
/// One pass over the successor table, linear in the ring size.
pub fn sweep_orbits(map: &LogisticMap, caps: &Caps) -> Result<Vec<OrbitInfo>> {
    Caps::check(map.ring().modulus(), caps.sweep)?;
    let graph = smn::SmnGraph::from_map(map);
    let dec = smn::decompose(&graph);
    Ok((0..graph.len())
        .map(|x| {
            let node = dec.node(x as u64);
            OrbitInfo {
                pre_period: node.tail_depth,
                period: dec.cycles()[node.cycle_id].len() as u64,
                cycle_entry: node.entry,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingModulus;
    use proptest::prelude::*;

    fn map(mu: u64, p: u64, n: u32) -> LogisticMap {
        LogisticMap::new(mu, RingModulus::new(p, n).unwrap())
    }

    /// Naive oracle: remember every visited value.
    fn naive(x0: u64, f: &LogisticMap) -> OrbitInfo {
        let mut seen = std::collections::HashMap::new();
        let mut x = x0;
        let mut i = 0u64;
        while !seen.contains_key(&x) {
            seen.insert(x, i);
            x = f.step(x);
            i += 1;
        }
        let pre = seen[&x];
        OrbitInfo {
            pre_period: pre,
            period: i - pre,
            cycle_entry: x,
        }
    }

    #[test]
    fn examples() {
        let caps = Caps::default();
        assert_eq!(detect_orbit(50, &map(20, 3, 7), &caps).unwrap().period, 486);
        assert_eq!(
            detect_orbit(0, &map(19, 3, 3), &caps).unwrap(),
            OrbitInfo { pre_period: 0, period: 1, cycle_entry: 0 }
        );
        assert_eq!(
            detect_orbit(3, &map(2, 3, 2), &caps).unwrap(),
            OrbitInfo { pre_period: 0, period: 2, cycle_entry: 3 }
        );
    }

    #[test]
    fn cap_guard() {
        let caps = Caps { orbit: 26, ..Caps::default() };
        assert_eq!(
            detect_orbit(1, &map(19, 3, 3), &caps),
            Err(Error::StateSpaceTooLarge { states: 27, cap: 26 })
        );
        let caps = Caps { sweep: 80, ..Caps::default() };
        assert!(sweep_orbits(&map(19, 3, 4), &caps).is_err());
    }

    #[test]
    fn brent_and_table_agree() {
        let caps = Caps::default();
        for p in [2u64, 3, 5, 7] {
            for n in 1..=4 {
                for mu in 0..40 {
                    let f = map(mu, p, n);
                    let table = sweep_orbits(&f, &caps).unwrap();
                    for (x0, info) in table.iter().enumerate() {
                        assert_eq!(detect_orbit(x0 as u64, &f, &caps).unwrap(), *info, "p={p} n={n} mu={mu} x0={x0}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn matches_naive_and_is_minimal(x0 in 0u64..6561, mu in 0u64..6561, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let f = map(mu, p, 4);
            let x0 = f.ring().reduce(x0);
            let info = detect_orbit(x0, &f, &Caps::default()).unwrap();
            prop_assert_eq!(info, naive(x0, &f));
            let m = info.pre_period;
            prop_assert_eq!(f.iterate(x0, m + info.period), f.iterate(x0, m));
            prop_assert_eq!(f.iterate(x0, m), info.cycle_entry);
            if m > 0 {
                prop_assert_ne!(f.iterate(x0, m - 1 + info.period), f.iterate(x0, m - 1));
            }
            for l in 1..info.period {
                prop_assert_ne!(f.iterate(info.cycle_entry, l), info.cycle_entry);
            }
        }
    }
}
