//! Averaged pull-backs `(1/C(n,m)) sum_{|T|=m} pi_T^*` and the interchangeable
//! routes for averaging a Farkas divisor.
//!
//! Every route splits the Farkas class into its tautological part and its
//! named boundary part `-delta_{0,2}` and pulls both back exactly. Of the
//! averaged named part only the `delta_{0,2}` component is kept in the known
//! class; the remainder (negative multiples of `delta_{0,k}`, `k >= 3`) is
//! moved into the effective slack. The routes must agree exactly.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::picard::{
    boundary_types, canonical_type, is_valid_boundary_size, symmetrize, BasisElement, DivisorClass,
    ModuliIndex, SymBasis, SymDivisorClass,
};
use crate::rational::{binomial, hypergeometric, qi, Q};
use crate::registry::Registered;
use crate::subset::Subset;

use super::farkas::{farkas_parts, farkas_parts_sym, FarkasParts, FarkasSpec};
use super::slack::{SlackSupport, WithSlack};
use super::{pullback_multi, ForgetfulMap};

/// Largest `n` accepted by [`BruteForceAveraging`].
pub const BRUTE_FORCE_LIMIT: u32 = 16;

/// Averaged pull-back of a symmetric class from `M_{g,m}` to `M_{g,n}`.
///
/// For a fixed target generator `delta_{i,S}`, `|S| = k`, the pull-back along
/// `pi_T` has the coefficient of the source type `(i, |S n T|)`, or minus the
/// `psi` coefficient when `S n T` is a single marking on the genus-0 side, or
/// zero when the restricted divisor is unstable. `|S n T|` is
/// hypergeometric over `T`.
pub fn symmetric_pullback(class: &SymDivisorClass, n: u32) -> Result<SymDivisorClass> {
    let source = class.index();
    let (g, m) = (source.genus(), source.markings());
    let target = source.with_markings(n)?;
    if n < m {
        return Err(Error::InvalidForgetfulMap(format!(
            "cannot pull back from n = {m} to n = {n}"
        )));
    }
    let psi = class.coeff(&SymBasis::Psi);
    let source_coeff = |i: u32, j: u32| -> Result<Q> {
        if is_valid_boundary_size(i, j, source) {
            Ok(class.coeff(&canonical_type(i, j, source)?))
        } else if (i == 0 && j == 1) || (i == g && j + 1 == m) {
            Ok(-psi.clone())
        } else {
            Ok(Q::zero())
        }
    };

    let mut out = SymDivisorClass::zero(target)?;
    out.add_term_unchecked(SymBasis::Lambda, class.coeff(&SymBasis::Lambda));
    out.add_term_unchecked(SymBasis::DeltaIrr, class.coeff(&SymBasis::DeltaIrr));
    if m > 0 {
        out.add_term_unchecked(SymBasis::Psi, psi.clone() * qi(m as i64) / qi(n as i64));
    }
    let pascal = pascal_table(n, m);
    let denominator = Q::from_integer(pascal[n as usize][m as usize].clone());
    for ty in boundary_types(target) {
        let SymBasis::Delta { genus: i, size: k } = ty else {
            continue;
        };
        // sum_j C(k,j) C(n-k,m-j) c(i,j) / C(n,m)
        let mut total = Q::zero();
        for j in k.saturating_sub(n - m)..=k.min(m) {
            let c = source_coeff(i, j)?;
            if !c.is_zero() {
                let count =
                    &pascal[k as usize][j as usize] * &pascal[(n - k) as usize][(m - j) as usize];
                total += c * Q::from_integer(count);
            }
        }
        out.add_term_unchecked(ty, total / &denominator);
    }
    Ok(out)
}

/// `C(a, b)` for `a <= n`, `b <= m`.
fn pascal_table(n: u32, m: u32) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize + 1);
    for a in 0..=n as usize {
        let mut row = vec![BigInt::zero(); m as usize + 1];
        row[0] = BigInt::one();
        for b in 1..=(m as usize).min(a) {
            row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
        }
        rows.push(row);
    }
    rows
}

/// Literal average of `pi_T^* c` over all `m`-subsets `T`, marking `j` of the
/// source going to the `j`-th smallest element of `T`. Subsets are processed
/// in parallel; exact arithmetic makes the sum order-independent.
pub fn average_pullback_full(class: &DivisorClass, n: u32) -> Result<DivisorClass> {
    let source = class.index();
    let m = source.markings();
    let target = source.with_markings(n)?;
    if n < m {
        return Err(Error::InvalidForgetfulMap(format!(
            "cannot pull back from n = {m} to n = {n}"
        )));
    }
    let subsets: Vec<Subset> = Subset::combinations(n, m).collect();
    let scale = Q::new(One::one(), binomial(n as u64, m as u64));
    if let Some(sum) = integer_sum(class, &subsets, n)? {
        return Ok(sum.scaled(&scale));
    }
    let zero = DivisorClass::zero(target)?;
    let sum = subsets
        .par_iter()
        .map(|t| {
            let kept: Vec<u32> = t.elements().collect();
            pullback_multi(class, &kept, n)
        })
        .try_fold(|| zero.clone(), |acc, pulled| acc.try_add(&pulled?))
        .try_reduce(|| zero.clone(), |a, b| a.try_add(&b))?;
    Ok(sum.scaled(&scale))
}

/// The subset sum with denominators cleared, accumulated in machine integers.
/// `None` when the numerators do not fit, in which case the caller falls back
/// to rational arithmetic.
fn integer_sum(class: &DivisorClass, subsets: &[Subset], n: u32) -> Result<Option<DivisorClass>> {
    let denom = class.iter().fold(BigInt::one(), |acc, (_, v)| {
        num_integer::Integer::lcm(&acc, v.denom())
    });
    let numerators: Option<Vec<(BasisElement, i128)>> = class
        .iter()
        .map(|(e, v)| {
            (v * Q::from_integer(denom.clone()))
                .to_integer()
                .to_i128()
                .map(|c| (*e, c))
        })
        .collect();
    let Some(numerators) = numerators else {
        return Ok(None);
    };
    let source = class.index();
    let partial = subsets
        .par_iter()
        .try_fold(
            || Some(HashMap::new()),
            |acc, t| -> Result<Option<HashMap<BasisElement, i128>>> {
                let Some(mut acc) = acc else { return Ok(None) };
                let map = ForgetfulMap::keeping(source, n, t.elements().collect())?;
                for (elem, c) in &numerators {
                    for (image, sign) in map.pull_generator(elem)? {
                        let slot = acc.entry(image).or_insert(0i128);
                        match (sign as i128)
                            .checked_mul(*c)
                            .and_then(|d| slot.checked_add(d))
                        {
                            Some(v) => *slot = v,
                            None => return Ok(None),
                        }
                    }
                }
                Ok(Some(acc))
            },
        )
        .try_reduce(
            || Some(HashMap::new()),
            |a, b| {
                let (Some(mut a), Some(b)) = (a, b) else {
                    return Ok(None);
                };
                for (k, v) in b {
                    let slot = a.entry(k).or_insert(0i128);
                    match slot.checked_add(v) {
                        Some(x) => *slot = x,
                        None => return Ok(None),
                    }
                }
                Ok(Some(a))
            },
        )?;
    let Some(totals) = partial else {
        return Ok(None);
    };
    let mut out = DivisorClass::zero(source.with_markings(n)?)?;
    for (k, v) in totals {
        out.add_term_unchecked(k, Q::new(BigInt::from(v), denom.clone()));
    }
    Ok(Some(out))
}

/// A route for computing the symmetric average of a Farkas divisor.
pub trait FarkasAveraging: Registered {
    fn average(&self, spec: FarkasSpec, n: u32) -> Result<WithSlack<SymBasis>>;
}

fn check_target(spec: FarkasSpec, n: u32) -> Result<ModuliIndex> {
    if n < spec.markings() {
        return Err(Error::OutOfRange {
            what: "the averaged Farkas divisor",
            requirement: "n at least the number of markings of the Farkas class",
            g: spec.genus,
            n,
        });
    }
    ModuliIndex::new(spec.genus, n)
}

/// Keeps the part of the averaged named boundary term that lies on the same
/// boundary types as the source term; the rest goes to the slack.
fn split_average(
    tautological: &SymDivisorClass,
    named: &SymDivisorClass,
    source_named: &SymDivisorClass,
) -> Result<WithSlack<SymBasis>> {
    let target = named.index();
    let kept_types: BTreeSet<SymBasis> = source_named
        .iter()
        .filter_map(|(ty, _)| match *ty {
            SymBasis::Delta { genus, size } => canonical_type(genus, size, target).ok(),
            other => Some(other),
        })
        .collect();
    let retained = named.restricted(|ty| kept_types.contains(ty));
    let spill = retained.try_sub(named)?;
    let mut out = WithSlack::new(tautological.try_add(named)?, SlackSupport::AllBoundary)?;
    out.absorb(&spill)?;
    Ok(out)
}

/// The closed form
/// `-(6r^2+6r+1) lambda + (r+1)(m/n) omega + C(r+1,2) delta_irr
///  - C(m,2)/C(n,2) delta_{0,2}`,
/// with slack `sum_{k>=3} C(k,2) C(n-k,m-2)/C(n,m) delta_{0,k}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClosedFormAveraging;

impl Registered for ClosedFormAveraging {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn description(&self) -> &'static str {
        "explicit formula in n"
    }
}

impl FarkasAveraging for ClosedFormAveraging {
    fn average(&self, spec: FarkasSpec, n: u32) -> Result<WithSlack<SymBasis>> {
        let target = check_target(spec, n)?;
        let parts = farkas_parts_sym(spec.genus, spec.rank)?;
        let m = spec.markings();
        let ratio = Q::new(m.into(), n.into());
        let r = spec.rank as i64;
        let omega = qi(r + 1) * &ratio;

        let mut known = SymDivisorClass::zero(target)?;
        known.add_term(
            SymBasis::Lambda,
            &parts.tautological.coeff(&SymBasis::Lambda),
        )?;
        known.add_term(
            SymBasis::DeltaIrr,
            &parts.tautological.coeff(&SymBasis::DeltaIrr),
        )?;
        known.add_term(SymBasis::Psi, &omega)?;
        for k in 2..=n {
            known.add_term(canonical_type(0, k, target)?, &(-&omega * qi(k as i64)))?;
        }
        let pair_weight = Q::new(binomial(m as u64, 2), binomial(n as u64, 2));
        known.add_term(canonical_type(0, 2, target)?, &-pair_weight)?;

        let mut absorbed = SymDivisorClass::zero(target)?;
        for k in 3..=n {
            let w = hypergeometric(n as u64, k as u64, m as u64, 2);
            absorbed.add_term(canonical_type(0, k, target)?, &w)?;
        }
        Ok(WithSlack {
            known,
            support: SlackSupport::AllBoundary,
            absorbed,
        })
    }
}

/// Exact averaging of the symmetric class type by type.
#[derive(Clone, Copy, Debug, Default)]
pub struct HypergeometricAveraging;

impl Registered for HypergeometricAveraging {
    fn name(&self) -> &'static str {
        "hypergeometric"
    }

    fn description(&self) -> &'static str {
        "averaged pull-back of the symmetric class, weighted by |S n T|"
    }
}

impl FarkasAveraging for HypergeometricAveraging {
    fn average(&self, spec: FarkasSpec, n: u32) -> Result<WithSlack<SymBasis>> {
        check_target(spec, n)?;
        let FarkasParts {
            tautological,
            named_boundary,
        } = farkas_parts_sym(spec.genus, spec.rank)?;
        split_average(
            &symmetric_pullback(&tautological, n)?,
            &symmetric_pullback(&named_boundary, n)?,
            &named_boundary,
        )
    }
}

/// Pulls the full-basis class back along every subset and averages; limited
/// to `n <= 16`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForceAveraging;

impl Registered for BruteForceAveraging {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn description(&self) -> &'static str {
        "literal average over all subsets in the full basis (n <= 16)"
    }
}

impl FarkasAveraging for BruteForceAveraging {
    fn average(&self, spec: FarkasSpec, n: u32) -> Result<WithSlack<SymBasis>> {
        check_target(spec, n)?;
        if n > BRUTE_FORCE_LIMIT {
            return Err(Error::TooManyMarkings {
                n,
                max: BRUTE_FORCE_LIMIT,
            });
        }
        let parts = farkas_parts(spec.genus, spec.rank)?;
        let sym = farkas_parts_sym(spec.genus, spec.rank)?;
        split_average(
            &symmetrize(&average_pullback_full(&parts.tautological, n)?)?,
            &symmetrize(&average_pullback_full(&parts.named_boundary, n)?)?,
            &sym.named_boundary,
        )
    }
}
