use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Largest group order accepted; every query scans all powers.
pub const MAX_ORDER: u32 = 10_000;

/// `exp(2 pi i num/den)`, stored in lowest terms with `0 <= num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootOfUnity {
    num: u32,
    den: u32,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { num: 1, den: 2 };

    /// `exp(2 pi i num/den)`; `num` may be negative or exceed `den`.
    pub fn new(num: i64, den: u32) -> Result<Self> {
        if den == 0 || den > MAX_ORDER {
            return Err(Error::InvalidAction(format!(
                "root of unity needs an order in 1..={MAX_ORDER}, got {den}"
            )));
        }
        let num = num.rem_euclid(den as i64) as u32;
        let g = num.gcd(&den);
        Ok(RootOfUnity {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(self) -> u32 {
        self.num
    }

    /// Multiplicative order.
    pub fn order(self) -> u32 {
        self.den
    }

    /// The angle as a fraction of a turn in `[0, 1)`.
    pub fn fraction(self) -> Q {
        Q::new(self.num.into(), self.den.into())
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Parses a fraction of a turn, `"1/6"`, `"-1/3"` or `"0"`.
impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || {
            Error::Parse(format!(
                "expected a fraction of a turn like 1/6, got {text:?}"
            ))
        };
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| bad())?,
                d.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (text.parse::<i64>().map_err(|_| bad())?, 1),
        };
        RootOfUnity::new(num, den)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A faithful diagonal action of `Z/k` on `C^d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CyclicAction {
    order: u32,
    exponents: Vec<u32>,
}

pub(crate) fn exponent_order(a: u32, k: u32) -> u32 {
    k / a.gcd(&k)
}

impl CyclicAction {
    pub fn new(order: u32, exponents: Vec<u32>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidAction(format!(
                "order must lie in 1..={MAX_ORDER}, got {order}"
            )));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidAction(
                "an action needs at least one coordinate".into(),
            ));
        }
        if let Some(a) = exponents.iter().find(|&&a| a >= order) {
            return Err(Error::InvalidAction(format!(
                "exponent {a} is not reduced modulo {order}"
            )));
        }
        let exact = exponents
            .iter()
            .fold(1u32, |acc, &a| acc.lcm(&exponent_order(a, order)));
        if exact != order {
            return Err(Error::InvalidAction(format!(
                "exponents generate a group of order {exact}, not {order}"
            )));
        }
        Ok(CyclicAction { order, exponents })
    }

    /// The action with the given eigenvalues; its order is the lcm of theirs.
    pub fn from_eigenvalues(eigenvalues: &[RootOfUnity]) -> Result<Self> {
        let order = eigenvalues.iter().fold(1u32, |acc, z| acc.lcm(&z.order()));
        let exponents = eigenvalues
            .iter()
            .map(|z| z.numer() * (order / z.order()))
            .collect();
        CyclicAction::new(order, exponents)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn eigenvalues(&self) -> Vec<RootOfUnity> {
        self.exponents
            .iter()
            .map(|&a| RootOfUnity::new(a.into(), self.order).expect("order already checked"))
            .collect()
    }

    /// `l * a_j mod k` for each `j`.
    pub(crate) fn residues(&self, l: u32) -> impl Iterator<Item = u64> + '_ {
        let k = self.order as u64;
        self.exponents
            .iter()
            .map(move |&a| (l as u64 * a as u64) % k)
    }

    /// `k * age(g^l)`, with `l` taken modulo `k`.
    pub fn scaled_age(&self, l: u32) -> u64 {
        self.residues(l).sum()
    }

    fn check_power(&self, l: u32) -> Result<()> {
        if l == 0 || l >= self.order {
            return Err(Error::PowerOutOfRange {
                l,
                max: self.order.saturating_sub(1),
            });
        }
        Ok(())
    }

    /// `sum_j {l a_j / k}` for `1 <= l <= k - 1`.
    pub fn age(&self, l: u32) -> Result<Q> {
        self.check_power(l)?;
        Ok(Q::new(self.scaled_age(l).into(), self.order.into()))
    }

    /// Number of coordinates moved by `g^l`.
    pub fn moved_coordinates(&self, l: u32) -> usize {
        self.residues(l).filter(|&r| r != 0).count()
    }

    /// `g^l` has exactly one eigenvalue different from 1.
    pub fn is_quasi_reflection(&self, l: u32) -> bool {
        self.moved_coordinates(l) == 1
    }

    pub fn quasi_reflection_powers(&self) -> Vec<u32> {
        (1..self.order)
            .filter(|&l| self.is_quasi_reflection(l))
            .collect()
    }

    pub fn has_quasi_reflections(&self) -> bool {
        (1..self.order).any(|l| self.is_quasi_reflection(l))
    }

    /// Powers with `0 < age < 1`, with their ages, for this action as given.
    pub fn junior_powers(&self) -> Vec<(u32, Q)> {
        let k = self.order as u64;
        (1..self.order)
            .filter(|&l| {
                let a = self.scaled_age(l);
                a > 0 && a < k
            })
            .map(|l| (l, Q::new(self.scaled_age(l).into(), k.into())))
            .collect()
    }

    /// `C^d / G` has canonical singularities: after removing quasi-reflections,
    /// no element is junior.
    pub fn is_canonical(&self) -> bool {
        super::reduce_quasi_reflections(self)
            .reduced
            .junior_powers()
            .is_empty()
    }
}

impl fmt::Display for CyclicAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.exponents.iter().map(|a| a.to_string()).collect();
        write!(f, "Z/{} acting by ({})", self.order, exps.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn act(k: u32, a: &[u32]) -> CyclicAction {
        CyclicAction::new(k, a.to_vec()).unwrap()
    }

    #[test]
    fn ages() {
        assert_eq!(act(4, &[1, 2]).age(1).unwrap(), q(3, 4));
        assert_eq!(act(6, &[2, 2, 3]).age(1).unwrap(), q(7, 6));
        assert_eq!(act(3, &[1, 1]).age(1).unwrap(), q(2, 3));
        assert_eq!(act(2, &[1; 6]).age(1).unwrap(), qi(3));
        assert!(matches!(
            act(4, &[1, 2]).age(4),
            Err(Error::PowerOutOfRange { .. })
        ));
        assert!(act(4, &[1, 2]).age(0).is_err());
    }

    #[test]
    fn quasi_reflections() {
        assert!(act(4, &[1, 2, 0]).is_quasi_reflection(2));
        assert!(act(6, &[1, 2, 0]).is_quasi_reflection(3));
        assert!(!act(2, &[1, 1]).is_quasi_reflection(1));
        assert!(!act(3, &[1, 2]).has_quasi_reflections());
    }

    #[test]
    fn validation() {
        assert!(CyclicAction::new(6, vec![2, 4]).is_err());
        assert!(CyclicAction::new(6, vec![6]).is_err());
        assert!(CyclicAction::new(6, vec![]).is_err());
        assert!(CyclicAction::new(0, vec![0]).is_err());
        assert!(CyclicAction::new(6, vec![2, 3]).is_ok());
        assert!(CyclicAction::new(1, vec![0, 0]).is_ok());
    }

    #[test]
    fn roots_of_unity() {
        let z: RootOfUnity = "2/6".parse().unwrap();
        assert_eq!(z, RootOfUnity::new(1, 3).unwrap());
        assert_eq!(z.to_string(), "1/3");
        assert_eq!("-1/4".parse::<RootOfUnity>().unwrap().to_string(), "3/4");
        assert_eq!("0".parse::<RootOfUnity>().unwrap(), RootOfUnity::ONE);
        assert!("1/0".parse::<RootOfUnity>().is_err());
        assert!("x".parse::<RootOfUnity>().is_err());
        let eig: Vec<RootOfUnity> = ["1/6", "1/3", "0"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(
            CyclicAction::from_eigenvalues(&eig).unwrap(),
            act(6, &[1, 2, 0])
        );
    }
}
