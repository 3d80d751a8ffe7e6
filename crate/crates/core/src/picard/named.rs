//! The standard named classes: Hodge, psi, boundary, kappa_1, the canonical
//! class, omega classes, the hyperelliptic divisor of genus 3, and coarse
//! boundary divisors.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::picard::basis::canonicalize;
use crate::picard::full::separating_boundary;
use crate::picard::symmetric::{boundary_types, canonical_type, type_multiplicity};
use crate::picard::{BasisElement, DivisorClass, ModuliIndex, SymBasis, SymDivisorClass};
use crate::rational::{qi, Q};
use crate::subset::Subset;

pub fn lambda_class(index: ModuliIndex) -> Result<DivisorClass> {
    DivisorClass::from_terms(index, [(BasisElement::Lambda, qi(1))])
}

pub fn psi_class(j: u32, index: ModuliIndex) -> Result<DivisorClass> {
    DivisorClass::from_terms(index, [(BasisElement::psi(j, index)?, qi(1))])
}

pub fn delta_irr_class(index: ModuliIndex) -> Result<DivisorClass> {
    DivisorClass::from_terms(index, [(BasisElement::DeltaIrr, qi(1))])
}

/// `delta_{i,S}` as a class, canonicalizing `(i, S)`.
pub fn delta_class(i: u32, s: Subset, index: ModuliIndex) -> Result<DivisorClass> {
    DivisorClass::from_terms(index, [(canonicalize(i, s, index)?, qi(1))])
}

/// Total boundary `delta = delta_irr + sum of all delta_{i,S}`.
pub fn delta_total(index: ModuliIndex) -> Result<DivisorClass> {
    let mut out = DivisorClass::zero(index)?;
    if index.genus() >= 1 {
        out.add_term_unchecked(BasisElement::DeltaIrr, qi(1));
    }
    for elem in separating_boundary(index)? {
        out.add_term_unchecked(elem, qi(1));
    }
    Ok(out)
}

pub fn delta_total_sym(index: ModuliIndex) -> SymDivisorClass {
    let mut out = SymDivisorClass::zero(index).expect("symmetric classes have no size cap");
    for ty in boundary_types(index) {
        out.add_term_unchecked(ty, qi(1));
    }
    out
}

fn check_canonical_range(g: u32, n: u32) -> Result<ModuliIndex> {
    if g < 1 || g + n < 4 {
        return Err(Error::OutOfRange {
            what: "the canonical class formula",
            requirement: "g >= 1 and g + n >= 4",
            g,
            n,
        });
    }
    ModuliIndex::new(g, n)
}

/// `K = 13 lambda + sum psi_j - 2 delta - delta_{1,{}}` for `g >= 1`,
/// `g + n >= 4`.
pub fn canonical_class(g: u32, n: u32) -> Result<DivisorClass> {
    let index = check_canonical_range(g, n)?;
    let mut out = DivisorClass::zero(index)?;
    out.add_term_unchecked(BasisElement::Lambda, qi(13));
    for j in 1..=n {
        out.add_term_unchecked(BasisElement::Psi(j), qi(1));
    }
    out.add_scaled(&delta_total(index)?, &qi(-2))?;
    out.add_term(canonicalize(1, Subset::EMPTY, index)?, &qi(-1))?;
    Ok(out)
}

pub fn canonical_class_sym(g: u32, n: u32) -> Result<SymDivisorClass> {
    let index = check_canonical_range(g, n)?;
    let mut out = SymDivisorClass::zero(index)?;
    out.add_term_unchecked(SymBasis::Lambda, qi(13));
    out.add_term_unchecked(SymBasis::Psi, qi(1));
    out.add_scaled(&delta_total_sym(index), &qi(-2))?;
    let tail = canonical_type(1, 0, index)?;
    if !type_multiplicity(&tail, index).is_one() {
        return Err(Error::Inconsistent(format!(
            "delta_1_{{}} is not alone in its symmetric type {tail}"
        )));
    }
    out.add_term_unchecked(tail, qi(-1));
    Ok(out)
}

/// Mumford's relation `kappa_1 = 12 lambda + psi - delta`.
pub fn kappa1(g: u32, n: u32) -> Result<DivisorClass> {
    let index = ModuliIndex::new(g, n)?;
    let mut out = DivisorClass::zero(index)?;
    out.add_term_unchecked(BasisElement::Lambda, qi(12));
    for j in 1..=n {
        out.add_term_unchecked(BasisElement::Psi(j), qi(1));
    }
    out.add_scaled(&delta_total(index)?, &qi(-1))?;
    Ok(out)
}

pub fn kappa1_sym(g: u32, n: u32) -> Result<SymDivisorClass> {
    let index = ModuliIndex::new(g, n)?;
    let mut out = SymDivisorClass::zero(index)?;
    out.add_term_unchecked(SymBasis::Lambda, qi(12));
    if n > 0 {
        out.add_term_unchecked(SymBasis::Psi, qi(1));
    }
    out.add_scaled(&delta_total_sym(index), &qi(-1))?;
    Ok(out)
}

fn check_omega(g: u32, n: u32) -> Result<ModuliIndex> {
    if g < 1 || n < 1 {
        return Err(Error::OutOfRange {
            what: "omega classes",
            requirement: "g >= 1 and n >= 1",
            g,
            n,
        });
    }
    ModuliIndex::new(g, n)
}

/// `omega_j = psi_j - sum_{S containing j, |S| >= 2} delta_{0,S}`.
pub fn omega_class(j: u32, g: u32, n: u32) -> Result<DivisorClass> {
    let index = check_omega(g, n)?;
    index.check_marking(j)?;
    let mut out = DivisorClass::zero(index)?;
    out.add_term_unchecked(BasisElement::Psi(j), qi(1));
    let rest = Subset::singleton(j).complement(n);
    for extra in rest.subsets().filter(|s| !s.is_empty()) {
        out.add_term_unchecked(canonicalize(0, extra.with(j), index)?, qi(-1));
    }
    Ok(out)
}

/// `omega = psi - sum_{k=2}^{n} k delta_{0,k}`.
pub fn omega_total(g: u32, n: u32) -> Result<DivisorClass> {
    let index = check_omega(g, n)?;
    let mut out = DivisorClass::zero(index)?;
    for j in 1..=n {
        out.add_scaled(&omega_class(j, g, n)?, &Q::one())?;
    }
    Ok(out)
}

pub fn omega_total_sym(g: u32, n: u32) -> Result<SymDivisorClass> {
    let index = check_omega(g, n)?;
    let mut out = SymDivisorClass::zero(index)?;
    out.add_term_unchecked(SymBasis::Psi, qi(1));
    for k in 2..=n {
        out.add_term(canonical_type(0, k, index)?, &qi(-(k as i64)))?;
    }
    Ok(out)
}

/// Class of the closure of the hyperelliptic locus in `M_3`:
/// `9 lambda - delta_irr - 3 delta_1`.
pub fn hyperelliptic_class() -> DivisorClass {
    let index = ModuliIndex::new(3, 0).expect("M_3 is stable");
    DivisorClass::from_terms(
        index,
        [
            (BasisElement::Lambda, qi(9)),
            (BasisElement::DeltaIrr, qi(-1)),
            (
                BasisElement::DeltaSep {
                    genus: 1,
                    markings: Subset::EMPTY,
                },
                qi(-3),
            ),
        ],
    )
    .expect("hyperelliptic class is well formed")
}

pub fn hyperelliptic_class_sym() -> SymDivisorClass {
    let index = ModuliIndex::new(3, 0).expect("M_3 is stable");
    SymDivisorClass::from_terms(
        index,
        [
            (SymBasis::Lambda, qi(9)),
            (SymBasis::DeltaIrr, qi(-1)),
            (SymBasis::delta(1, 0), qi(-3)),
        ],
    )
    .expect("hyperelliptic class is well formed")
}

/// A boundary divisor of the coarse moduli space, as opposed to its class
/// in the stack basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoarseDivisor {
    Irreducible,
    Separating { genus: u32, markings: Subset },
}

impl CoarseDivisor {
    pub fn elliptic_tail() -> Self {
        CoarseDivisor::Separating {
            genus: 1,
            markings: Subset::EMPTY,
        }
    }

    /// The stack generator this divisor is a multiple of.
    pub fn generator(&self, index: ModuliIndex) -> Result<BasisElement> {
        match *self {
            CoarseDivisor::Irreducible => {
                BasisElement::DeltaIrr.validate(index)?;
                Ok(BasisElement::DeltaIrr)
            }
            CoarseDivisor::Separating { genus, markings } => canonicalize(genus, markings, index),
        }
    }

    /// `[Delta] = multiplicity * delta`: 2 for the elliptic-tail divisor
    /// `Delta_{1,{}}`, whose general member has an extra involution, else 1.
    pub fn stack_multiplicity(&self, index: ModuliIndex) -> Result<Q> {
        let generator = self.generator(index)?;
        let tail = canonicalize(1, Subset::EMPTY, index).ok();
        Ok(if Some(generator) == tail {
            qi(2)
        } else {
            qi(1)
        })
    }
}

impl fmt::Display for CoarseDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoarseDivisor::Irreducible => f.write_str("Delta_irr"),
            CoarseDivisor::Separating { genus, markings } => write!(f, "Delta_{genus}_{markings}"),
        }
    }
}

/// `[Delta_{i,S}]` expressed in the stack basis.
pub fn coarse_boundary_class(divisor: CoarseDivisor, index: ModuliIndex) -> Result<DivisorClass> {
    let generator = divisor.generator(index)?;
    DivisorClass::from_terms(index, [(generator, divisor.stack_multiplicity(index)?)])
}
