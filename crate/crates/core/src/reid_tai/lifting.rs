use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{serde_q, Q};

use super::action::CyclicAction;
use super::reduction::{reduce_quasi_reflections, ReductionResult};

/// Does an `m`-canonical form vanishing to order `b_j` along `x_j = 0` lift
/// to a resolution of `C^d / <g>`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingQuery {
    pub action: CyclicAction,
    pub m: u32,
    pub b: Vec<u32>,
}

impl LiftingQuery {
    pub fn new(action: CyclicAction, m: u32, b: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAction("the weight m must be positive".into()));
        }
        if b.len() != action.dim() {
            return Err(Error::InvalidAction(format!(
                "{} vanishing orders for {} coordinates",
                b.len(),
                action.dim()
            )));
        }
        Ok(LiftingQuery { action, m, b })
    }
}

/// `sum_j (b_j + m) {l a_j / k}` against `m` for one power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCheck {
    pub l: u32,
    #[serde(with = "serde_q")]
    pub lhs: Q,
    #[serde(with = "serde_q")]
    pub rhs: Q,
}

impl PowerCheck {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }

    pub fn is_tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingReport {
    pub lifts: bool,
    pub checks: Vec<PowerCheck>,
    pub tight_powers: Vec<u32>,
    pub failing_powers: Vec<u32>,
}

fn check_no_quasi_reflections(action: &CyclicAction) -> Result<()> {
    if let Some(&power) = action.quasi_reflection_powers().first() {
        return Err(Error::HasQuasiReflections { power });
    }
    Ok(())
}

pub fn lifting_report(query: &LiftingQuery) -> Result<LiftingReport> {
    let action = &query.action;
    check_no_quasi_reflections(action)?;
    let k = action.order() as u64;
    let m = query.m as u64;
    let checks: Vec<PowerCheck> = (1..action.order())
        .map(|l| {
            let total: u64 = action
                .residues(l)
                .zip(&query.b)
                .map(|(r, &b)| (b as u64 + m) * r)
                .sum();
            PowerCheck {
                l,
                lhs: Q::new(total.into(), k.into()),
                rhs: Q::from_integer(m.into()),
            }
        })
        .collect();
    let tight_powers = checks
        .iter()
        .filter(|c| c.is_tight())
        .map(|c| c.l)
        .collect();
    let failing_powers: Vec<u32> = checks.iter().filter(|c| !c.holds()).map(|c| c.l).collect();
    Ok(LiftingReport {
        lifts: failing_powers.is_empty(),
        checks,
        tight_powers,
        failing_powers,
    })
}

/// The lifting inequality at every nontrivial power. Refuses actions with
/// quasi-reflections; reduce first.
pub fn lifts(query: &LiftingQuery) -> Result<bool> {
    let action = &query.action;
    check_no_quasi_reflections(action)?;
    let (k, m) = (action.order() as u64, query.m as u64);
    Ok((1..action.order()).all(|l| {
        let total: u64 = action
            .residues(l)
            .zip(&query.b)
            .map(|(r, &b)| (b as u64 + m) * r)
            .sum();
        total >= m * k
    }))
}

/// Least `rho >= 0` such that vanishing of order `b_1 >= rho m` along the
/// first coordinate (and none elsewhere) makes every power pass, or `None`
/// if some power with `{l a_1 / k} = 0` has age below 1.
pub fn minimal_first_vanishing(action: &CyclicAction) -> Result<Option<Q>> {
    check_no_quasi_reflections(action)?;
    let k = action.order() as u64;
    let mut rho = Q::zero();
    for l in 1..action.order() {
        let age = action.scaled_age(l);
        if age >= k {
            continue;
        }
        let first = action.residues(l).next().unwrap_or(0);
        if first == 0 {
            return Ok(None);
        }
        let needed = Q::new((k - age).into(), first.into());
        if needed > rho {
            rho = needed;
        }
    }
    Ok(Some(rho))
}

/// Reduction followed by the lifting test, keeping each `b_j` attached to
/// coordinate `j`. How vanishing orders change under `y_j = x_j^{lambda_j}`
/// is a convention here, not a derived rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionalLift {
    pub reduction: ReductionResult,
    pub report: LiftingReport,
    pub convention: &'static str,
}

pub const VANISHING_CONVENTION: &str =
    "vanishing orders carried unchanged to the reduced coordinates";

pub fn reduce_then_lift(action: &CyclicAction, m: u32, b: Vec<u32>) -> Result<ConventionalLift> {
    LiftingQuery::new(action.clone(), m, b.clone())?;
    let reduction = reduce_quasi_reflections(action);
    let query = LiftingQuery::new(reduction.reduced.clone(), m, b)?;
    Ok(ConventionalLift {
        report: lifting_report(&query)?,
        reduction,
        convention: VANISHING_CONVENTION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn act(k: u32, a: &[u32]) -> CyclicAction {
        CyclicAction::new(k, a.to_vec()).unwrap()
    }

    #[test]
    fn first_vanishing_suffices() {
        for m in 1..=6 {
            let q = LiftingQuery::new(act(3, &[1, 1]), m, vec![m, 0]).unwrap();
            let report = lifting_report(&q).unwrap();
            assert!(report.lifts);
            assert_eq!(report.tight_powers, [1]);
            assert_eq!(report.checks[0].lhs, qi(m as i64));

            let q = LiftingQuery::new(act(3, &[1, 1]), m, vec![0, 0]).unwrap();
            assert!(!lifts(&q).unwrap());
            assert!(!lifting_report(&q).unwrap().lifts);
        }
    }

    #[test]
    fn needs_reduction() {
        let q = LiftingQuery::new(act(6, &[1, 2]), 1, vec![1, 0]).unwrap();
        assert!(matches!(
            lifts(&q),
            Err(Error::HasQuasiReflections { power: 3 })
        ));
        let wrapped = reduce_then_lift(&act(6, &[1, 2, 0]), 2, vec![2, 0, 0]).unwrap();
        assert!(wrapped.report.lifts);
        assert_eq!(wrapped.report.tight_powers, [1]);
    }

    #[test]
    fn minimal_ratio() {
        assert_eq!(
            minimal_first_vanishing(&act(3, &[1, 1])).unwrap(),
            Some(qi(1))
        );
        assert_eq!(
            minimal_first_vanishing(&act(3, &[1, 2])).unwrap(),
            Some(qi(0))
        );
        // first coordinate fixed, second junior: nothing helps
        assert_eq!(minimal_first_vanishing(&act(5, &[0, 1, 1])).unwrap(), None);
    }

    #[test]
    fn bad_queries() {
        assert!(LiftingQuery::new(act(3, &[1, 1]), 0, vec![0, 0]).is_err());
        assert!(LiftingQuery::new(act(3, &[1, 1]), 1, vec![0]).is_err());
    }
}
