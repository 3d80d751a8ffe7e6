//! Automorphisms of curves with an elliptic tail, acting on the deformation
//! space. The first coordinate is the smoothing parameter of the node joining
//! the tail; an `m`-canonical form pulled back from the boundary divisor of
//! elliptic tails vanishes to order at least `m` along it.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_q, serde_q, Q};

use super::action::{CyclicAction, RootOfUnity};
use super::lifting::minimal_first_vanishing;
use super::reduction::{reduce_quasi_reflections, ReductionResult};

/// The three eigenvalue shapes an automorphism of such a curve can have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailFamily {
    /// `(+-1, ..., +-1)`.
    Real,
    /// `(+-i, -1, +-1, ...)`: tail with `j = 1728`.
    J1728,
    /// `(+-zeta_6, zeta_6^2, +-1, ...)`: tail with `j = 0`.
    J0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailRoute {
    RealEigenvalues,
    J1728,
    /// `(zeta_6, zeta_6^2, 1, ..., 1)`.
    J0Case1,
    /// `(-zeta_6, zeta_6^2, ...)` with some `-1`.
    J0Case2,
    J0Case3,
}

impl TailRoute {
    pub fn label(self) -> &'static str {
        match self {
            TailRoute::RealEigenvalues => "real eigenvalues",
            TailRoute::J1728 => "j=1728 elliptic tail",
            TailRoute::J0Case1 => "j=0 elliptic tail, case 1 route",
            TailRoute::J0Case2 => "j=0 elliptic tail, case 2 route",
            TailRoute::J0Case3 => "j=0 elliptic tail, case 3 route",
        }
    }
}

impl fmt::Display for TailRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TailVerdict {
    Canonical,
    /// Forms vanishing to order `b_1 >= ratio * m` along the first coordinate
    /// lift.
    LiftsGivenVanishing {
        #[serde(with = "serde_q")]
        ratio: Q,
    },
    NonCanonicalWithoutVanishing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JuniorPower {
    pub power: u32,
    #[serde(with = "serde_q")]
    pub age: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailClassification {
    pub family: TailFamily,
    pub route: TailRoute,
    pub verdict: TailVerdict,
    /// Junior elements of the action after removing quasi-reflections.
    pub reduced_junior: Vec<JuniorPower>,
    /// Non-canonical `j = 0` tail: the shape that cuts out the singular locus.
    pub j0_signature: bool,
}

fn frac(z: RootOfUnity) -> (u32, u32) {
    (z.numer(), z.order())
}

fn is_real(z: RootOfUnity) -> bool {
    z.order() <= 2
}

fn family_of(pattern: &[RootOfUnity]) -> Option<TailFamily> {
    if pattern.iter().all(|&z| is_real(z)) {
        return Some(TailFamily::Real);
    }
    if pattern.len() < 2 || !pattern[2..].iter().all(|&z| is_real(z)) {
        return None;
    }
    match (frac(pattern[0]), frac(pattern[1])) {
        ((1, 4) | (3, 4), (1, 2)) => Some(TailFamily::J1728),
        ((1, 6) | (2, 3), (1, 3)) => Some(TailFamily::J0),
        _ => None,
    }
}

fn junior(reduction: &ReductionResult) -> Vec<JuniorPower> {
    reduction
        .reduced
        .junior_powers()
        .into_iter()
        .map(|(power, age)| JuniorPower { power, age })
        .collect()
}

/// Classifies an eigenvalue list whose first entry is the action on the
/// smoothing parameter of the tail node.
pub fn classify_elliptic_tail(pattern: &[RootOfUnity]) -> Result<TailClassification> {
    let family = family_of(pattern).ok_or_else(|| {
        let shown: Vec<String> = pattern.iter().map(|z| z.to_string()).collect();
        Error::UnknownTailPattern(format!("({})", shown.join(", ")))
    })?;
    let action = CyclicAction::from_eigenvalues(pattern)?;
    Ok(classify_tail_action(&action, family))
}

fn classify_tail_action(action: &CyclicAction, family: TailFamily) -> TailClassification {
    let pattern = action.eigenvalues();
    let rest_trivial = pattern[2.min(pattern.len())..].iter().all(|z| z.is_one());
    let route = match family {
        TailFamily::Real => TailRoute::RealEigenvalues,
        TailFamily::J1728 => TailRoute::J1728,
        TailFamily::J0 => match frac(pattern[0]) {
            (1, 6) if rest_trivial => TailRoute::J0Case1,
            (2, 3) if !rest_trivial => TailRoute::J0Case2,
            _ => TailRoute::J0Case3,
        },
    };
    let reduction = reduce_quasi_reflections(action);
    let reduced_junior = junior(&reduction);
    let verdict = if reduced_junior.is_empty() {
        TailVerdict::Canonical
    } else if family == TailFamily::J0 {
        match minimal_first_vanishing(&reduction.reduced)
            .expect("reduced actions are reflection-free")
        {
            Some(ratio) if ratio <= Q::one() => TailVerdict::LiftsGivenVanishing { ratio },
            _ => TailVerdict::NonCanonicalWithoutVanishing,
        }
    } else {
        TailVerdict::NonCanonicalWithoutVanishing
    };
    TailClassification {
        family,
        route,
        j0_signature: family == TailFamily::J0 && verdict != TailVerdict::Canonical,
        verdict,
        reduced_junior,
    }
}

/// Everything known about one action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub action: CyclicAction,
    pub eigenvalues: Vec<RootOfUnity>,
    pub quasi_reflection_powers: Vec<u32>,
    pub reduction: ReductionResult,
    pub reduced_junior: Vec<JuniorPower>,
    pub canonical: bool,
    /// Least `b_1 / m` that lets every form lift, on the reduced action.
    #[serde(with = "serde_q::option")]
    pub min_first_vanishing: Option<Q>,
    pub tail: Option<TailClassification>,
    pub summary: String,
}

fn vanishing_phrase(ratio: &Q) -> String {
    if ratio.is_one() {
        "b1 >= m".to_string()
    } else {
        format!("b1 >= {} m", format_q(ratio))
    }
}

pub fn classify(action: &CyclicAction) -> Classification {
    let eigenvalues = action.eigenvalues();
    let reduction = reduce_quasi_reflections(action);
    let reduced_junior = junior(&reduction);
    let canonical = reduced_junior.is_empty();
    let min_first_vanishing =
        minimal_first_vanishing(&reduction.reduced).expect("reduced actions are reflection-free");
    let tail = family_of(&eigenvalues).map(|family| classify_tail_action(action, family));

    let summary = match (&tail, canonical) {
        (Some(t), _) => match &t.verdict {
            TailVerdict::Canonical => format!("canonical ({})", t.route),
            TailVerdict::LiftsGivenVanishing { ratio } => format!(
                "non-canonical; lifts given vanishing {} ({})",
                vanishing_phrase(ratio),
                t.route
            ),
            TailVerdict::NonCanonicalWithoutVanishing => format!("non-canonical ({})", t.route),
        },
        (None, true) => "canonical".to_string(),
        (None, false) => match &min_first_vanishing {
            Some(ratio) => format!(
                "non-canonical; lifts given vanishing {}",
                vanishing_phrase(ratio)
            ),
            None => "non-canonical".to_string(),
        },
    };
    Classification {
        action: action.clone(),
        eigenvalues,
        quasi_reflection_powers: action.quasi_reflection_powers(),
        reduction,
        reduced_junior,
        canonical,
        min_first_vanishing,
        tail,
        summary,
    }
}
