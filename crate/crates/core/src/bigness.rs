//! Bigness of the canonical class of `M_{3,n}`.
//!
//! With `H` the hyperelliptic divisor pulled back from `M_3` and `D_n` the
//! symmetric average of the Farkas divisor on `M_{3,14}`, the numbers `s, t`
//! are chosen so that `K - s H - t D_n` has no `lambda` or `psi` term. Moving
//! `epsilon` of the multipliers back gives
//! `K = (s - 9e) H + (t - e) D_n + (8e lambda + (56e/n) psi) + boundary`,
//! which exhibits `K` as big plus effective as soon as every boundary
//! coefficient stays non-negative for some `e > 0`.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::picard::{
    boundary_types, canonical_class_sym, hyperelliptic_class_sym, ClassKey, ModuliIndex, SymBasis,
    SymDivisorClass,
};
use crate::pullback::{symmetric_pullback, FarkasAveraging, FarkasSpec, WithSlack};
use crate::rational::{qi, serde_q, Q};
use crate::registry::{averaging_strategies, DEFAULT_AVERAGING};

/// Smallest `n` on which the averaged Farkas divisor exists.
pub const MIN_MARKINGS: u32 = 14;

pub const ASSUMPTIONS: [&str; 3] = [
    "a lambda + b psi is big on M_{3,n} whenever a, b > 0",
    "the hyperelliptic divisor of M_3 and the Farkas divisor on M_{3,14} are effective",
    "the unspecified boundary part of the Farkas divisor is effective",
];

/// `K - s H - t D_n` with its ingredients.
#[derive(Clone, Debug)]
pub struct Difference {
    pub n: u32,
    pub s: Q,
    pub t: Q,
    pub canonical: SymDivisorClass,
    pub hyperelliptic: SymDivisorClass,
    pub farkas: WithSlack<SymBasis>,
    /// Known part of the difference; the true difference exceeds it by
    /// `t` times the effective slack of `D_n`.
    pub known: SymDivisorClass,
}

fn check_range(n: u32) -> Result<ModuliIndex> {
    if n < MIN_MARKINGS {
        return Err(Error::BignessRange {
            n,
            min: MIN_MARKINGS,
        });
    }
    ModuliIndex::new(3, n)
}

pub fn difference_class(n: u32) -> Result<Difference> {
    difference_class_with(n, averaging_strategies().get(DEFAULT_AVERAGING)?)
}

pub fn difference_class_with(n: u32, averaging: &dyn FarkasAveraging) -> Result<Difference> {
    check_range(n)?;
    let canonical = canonical_class_sym(3, n)?;
    let hyperelliptic = symmetric_pullback(&hyperelliptic_class_sym(), n)?;
    let farkas = averaging.average(FarkasSpec::GENUS_THREE, n)?;
    let d = &farkas.known;

    // s H + t D = K on the lambda and psi coordinates
    let (l, p) = (&SymBasis::Lambda, &SymBasis::Psi);
    let det = hyperelliptic.coeff(l) * d.coeff(p) - d.coeff(l) * hyperelliptic.coeff(p);
    if det.is_zero() {
        return Err(Error::Inconsistent(
            "lambda and psi coefficients of H and D_n are dependent".into(),
        ));
    }
    let s = (canonical.coeff(l) * d.coeff(p) - d.coeff(l) * canonical.coeff(p)) / &det;
    let t = (hyperelliptic.coeff(l) * canonical.coeff(p)
        - canonical.coeff(l) * hyperelliptic.coeff(p))
        / &det;

    let mut known = canonical.clone();
    known.add_scaled(&hyperelliptic, &-&s)?;
    known.add_scaled(d, &-&t)?;
    if !known.coeff(l).is_zero() || !known.coeff(p).is_zero() {
        return Err(Error::Inconsistent(format!(
            "difference keeps lambda = {} and psi = {}",
            known.coeff(l),
            known.coeff(p)
        )));
    }
    Ok(Difference {
        n,
        s,
        t,
        canonical,
        hyperelliptic,
        farkas,
        known,
    })
}

impl Difference {
    /// `9 H + D_n`: the class added per unit of `epsilon`.
    pub fn epsilon_direction(&self) -> Result<SymDivisorClass> {
        let mut out = self.hyperelliptic.scaled(&qi(9));
        out.add_scaled(&self.farkas.known, &qi(1))?;
        Ok(out)
    }

    /// `K - (s - 9e) H - (t - e) D_n`, known part.
    pub fn perturbed(&self, epsilon: &Q) -> Result<SymDivisorClass> {
        let mut out = self.known.clone();
        out.add_scaled(&self.epsilon_direction()?, epsilon)?;
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Named rationals in a fixed order, serialized as a JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table(pub Vec<(String, Q)>);

impl Table {
    pub fn get(&self, name: &str) -> Option<&Q> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    fn push(&mut self, name: impl Into<String>, value: Q) {
        self.0.push((name.into(), value));
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, &crate::rational::format_q(v))?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub constraint: String,
    #[serde(with = "serde_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BignessCertificate {
    pub n: u32,
    #[serde(with = "serde_q")]
    pub s: Q,
    #[serde(with = "serde_q")]
    pub t: Q,
    #[serde(with = "serde_q::option")]
    pub epsilon_max: Option<Q>,
    /// `delta_irr`, the aggregate `delta_1`, `delta_0_2`, ..., `delta_0_n`.
    pub coefficients: Table,
    /// Every `delta_{1,k}` coefficient.
    pub delta_1_by_size: Table,
    /// `delta_{1,k}` minus the aggregate; the unnamed boundary residue.
    pub residuals: Table,
    /// Coefficient of each constraint's boundary class per unit of epsilon.
    pub epsilon_direction: Table,
    /// `lambda` and `psi` coefficients at `epsilon_max`.
    pub big_part: Table,
    /// `t, t - e, s, s - 9e`, the multipliers of effective classes.
    pub multipliers: Table,
    pub verdict: Verdict,
    pub binding: Option<String>,
    pub violated: Option<Violation>,
    pub averaging: String,
    pub assumptions: Vec<String>,
}

impl BignessCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

fn name(ty: &SymBasis) -> String {
    ty.to_string()
}

pub fn certify(n: u32) -> Result<BignessCertificate> {
    certify_with(n, averaging_strategies().get(DEFAULT_AVERAGING)?)
}

pub fn certify_with(n: u32, averaging: &dyn FarkasAveraging) -> Result<BignessCertificate> {
    let diff = difference_class_with(n, averaging)?;
    let index = diff.known.index();
    let direction = diff.epsilon_direction()?;
    let types = boundary_types(index);

    let tail = SymBasis::delta(1, 0);
    let aggregate = diff.known.coeff(&tail);
    let mut coefficients = Table::default();
    let mut delta_1_by_size = Table::default();
    let mut residuals = Table::default();
    let mut epsilon_direction = Table::default();
    coefficients.push("delta_irr", diff.known.coeff(&SymBasis::DeltaIrr));
    coefficients.push("delta_1", aggregate.clone());
    for ty in &types {
        match *ty {
            SymBasis::Delta { genus: 0, .. } => coefficients.push(name(ty), diff.known.coeff(ty)),
            SymBasis::Delta { genus: 1, .. } => {
                delta_1_by_size.push(name(ty), diff.known.coeff(ty));
                residuals.push(name(ty), diff.known.coeff(ty) - &aggregate);
            }
            _ => {}
        }
    }
    for ty in &types {
        epsilon_direction.push(name(ty), direction.coeff(ty));
    }

    // constraints c + e * d >= 0, listed in a fixed order
    let mut constraints: Vec<(String, Q, Q)> = types
        .iter()
        .map(|ty| (name(ty), diff.known.coeff(ty), direction.coeff(ty)))
        .collect();
    constraints.push(("t - epsilon".into(), diff.t.clone(), qi(-1)));
    constraints.push(("s - 9 epsilon".into(), diff.s.clone(), qi(-9)));

    let stray_types: Vec<&SymBasis> = diff
        .known
        .iter()
        .map(|(ty, _)| ty)
        .filter(|ty| !ty.is_boundary())
        .collect();
    if !stray_types.is_empty() {
        return Err(Error::Inconsistent(format!(
            "unexpected terms {stray_types:?}"
        )));
    }

    let violated = constraints
        .iter()
        .find(|(_, c, _)| !c.is_positive())
        .map(|(k, c, _)| Violation {
            constraint: k.clone(),
            value: c.clone(),
        })
        .or_else(|| {
            residuals
                .0
                .iter()
                .find(|(_, v)| v.is_negative())
                .map(|(k, v)| Violation {
                    constraint: format!("{k} residual"),
                    value: v.clone(),
                })
        });

    let mut epsilon_max = None;
    let mut binding = None;
    if violated.is_none() {
        let mut best: Option<(Q, &String)> = None;
        for (k, c, d) in &constraints {
            if d.is_negative() {
                let bound = c / -d;
                if best.as_ref().is_none_or(|(b, _)| &bound < b) {
                    best = Some((bound, k));
                }
            }
        }
        if let Some((bound, k)) = best {
            binding = Some(k.clone());
            epsilon_max = Some(bound);
        }
    }

    let mut big_part = Table::default();
    let mut multipliers = Table::default();
    let zero = Q::zero();
    let e = epsilon_max.as_ref().unwrap_or(&zero);
    let perturbed = diff.perturbed(e)?;
    big_part.push("lambda", perturbed.coeff(&SymBasis::Lambda));
    big_part.push("psi", perturbed.coeff(&SymBasis::Psi));
    multipliers.push("t", diff.t.clone());
    multipliers.push("t - epsilon", &diff.t - e);
    multipliers.push("s", diff.s.clone());
    multipliers.push("s - 9 epsilon", &diff.s - qi(9) * e);

    let pass = violated.is_none()
        && epsilon_max.as_ref().is_some_and(|e| e.is_positive())
        && multipliers.0.iter().all(|(_, v)| !v.is_negative())
        && perturbed
            .iter()
            .all(|(ty, v)| !ty.is_boundary() || !v.is_negative())
        && big_part.0.iter().all(|(_, v)| v.is_positive());

    Ok(BignessCertificate {
        n,
        s: diff.s,
        t: diff.t,
        epsilon_max,
        coefficients,
        delta_1_by_size,
        residuals,
        epsilon_direction,
        big_part,
        multipliers,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        binding,
        violated,
        averaging: averaging.name().to_string(),
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
    })
}

/// Largest admissible `epsilon`, or `None` when the certificate fails.
pub fn epsilon_max(n: u32) -> Result<Option<Q>> {
    let cert = certify(n)?;
    Ok(if cert.passed() {
        cert.epsilon_max
    } else {
        None
    })
}

/// Certificates for `lo..=hi`, computed in parallel and returned in order.
pub fn sweep(lo: u32, hi: u32) -> Result<Vec<BignessCertificate>> {
    sweep_with(lo, hi, averaging_strategies().get(DEFAULT_AVERAGING)?)
}

pub fn sweep_with(
    lo: u32,
    hi: u32,
    averaging: &dyn FarkasAveraging,
) -> Result<Vec<BignessCertificate>> {
    check_range(lo)?;
    if hi < lo {
        return Err(Error::Inconsistent(format!(
            "empty sweep range {lo}..={hi}"
        )));
    }
    (lo..=hi)
        .into_par_iter()
        .map(|n| certify_with(n, averaging))
        .collect()
}
