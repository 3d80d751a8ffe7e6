//! An automorphism of order `N` permuting `m` nodes cyclically acts on their
//! smoothing parameters through an `m x m` block whose `m`-th power is the
//! scalar `exp(2 pi i l m / N)`. Its eigenvalues are the `m`-th roots of that
//! scalar, with fractions `l/N + j/m`, `j = 0..m-1`, so the block adds
//! `m l / N + (m - 1)/2` to the age.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{serde_q, Q};

use super::action::RootOfUnity;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeOrbitContribution {
    /// `l` reduced modulo `N/m`.
    pub reduced_power: u32,
    #[serde(with = "serde_q")]
    pub value: Q,
    /// `m/N + (m-1)/2`, the value at `l = 1`.
    #[serde(with = "serde_q")]
    pub lower_bound: Q,
}

fn check(order: u32, orbit: u32, l: u32) -> Result<u32> {
    if order == 0 || orbit == 0 || !order.is_multiple_of(orbit) {
        return Err(Error::InvalidNodeOrbit(format!(
            "orbit length {orbit} must divide the order {order}"
        )));
    }
    let period = order / orbit;
    let reduced = l % period;
    if reduced == 0 {
        return Err(Error::InvalidNodeOrbit(format!(
            "power {l} acts trivially on the smoothing parameters (period {period})"
        )));
    }
    Ok(reduced)
}

pub fn node_orbit_contribution(order: u32, orbit: u32, l: u32) -> Result<NodeOrbitContribution> {
    let reduced = check(order, orbit, l)?;
    let (n, m) = (order as i64, orbit as i64);
    let half = Q::new((m - 1).into(), 2.into());
    Ok(NodeOrbitContribution {
        reduced_power: reduced,
        value: Q::new((m * reduced as i64).into(), n.into()) + &half,
        lower_bound: Q::new(m.into(), n.into()) + half,
    })
}

/// The eigenvalues of the block, listed explicitly.
pub fn node_orbit_exponents(order: u32, orbit: u32, l: u32) -> Result<Vec<RootOfUnity>> {
    let reduced = check(order, orbit, l)?;
    let period = order / orbit;
    (0..orbit)
        .map(|j| RootOfUnity::new((reduced + j * period) as i64, order))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn values() {
        assert_eq!(node_orbit_contribution(6, 2, 1).unwrap().value, q(5, 6));
        assert_eq!(node_orbit_contribution(4, 2, 1).unwrap().value, qi(1));
        for l in 1..7 {
            assert_eq!(
                node_orbit_contribution(7, 1, l).unwrap().value,
                q(l as i64, 7)
            );
        }
        assert_eq!(node_orbit_contribution(6, 2, 4).unwrap().reduced_power, 1);
    }

    #[test]
    fn agrees_with_eigenvalues() {
        for order in 1..=24u32 {
            for orbit in (1..=order).filter(|m| order % m == 0) {
                for l in 1..order / orbit {
                    let c = node_orbit_contribution(order, orbit, l).unwrap();
                    let sum: Q = node_orbit_exponents(order, orbit, l)
                        .unwrap()
                        .iter()
                        .map(|z| z.fraction())
                        .sum();
                    assert_eq!(c.value, sum);
                    assert!(c.value >= c.lower_bound);
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert!(node_orbit_contribution(6, 4, 1).is_err());
        assert!(node_orbit_contribution(6, 2, 3).is_err());
        assert!(node_orbit_contribution(0, 1, 1).is_err());
    }
}
