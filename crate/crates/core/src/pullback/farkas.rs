//! The Farkas divisor `D^r_{g,n}` and its symmetric averages.
//!
//! On `M_{g,n}` with `n = (2r+1)(g-1)` the class is
//! `-(6r^2+6r+1) lambda + (r+1) omega + C(r+1,2) delta_irr - delta_{0,2} - E`
//! with `E` an unspecified effective boundary class. The marking count is the
//! rank `h^0(omega^{r+1})` of the bundle whose degeneracy locus defines it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::picard::{
    canonical_type, omega_class, omega_total_sym, BasisElement, ClassKey, DivisorClass,
    LinearClass, ModuliIndex, SymBasis, SymDivisorClass,
};
use crate::rational::{qi, Q};
use crate::subset::Subset;

use super::averaging::{ClosedFormAveraging, FarkasAveraging};
use super::slack::{SlackSupport, WithSlack};

/// Parameters `(g, r)` of a Farkas divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FarkasSpec {
    pub genus: u32,
    pub rank: u32,
}

impl FarkasSpec {
    /// `D^3_{3,14}`.
    pub const GENUS_THREE: FarkasSpec = FarkasSpec { genus: 3, rank: 3 };

    pub fn new(genus: u32, rank: u32) -> Result<Self> {
        farkas_markings(genus, rank)?;
        Ok(FarkasSpec { genus, rank })
    }

    pub fn markings(self) -> u32 {
        (2 * self.rank + 1) * (self.genus - 1)
    }

    pub fn index(self) -> ModuliIndex {
        ModuliIndex::new(self.genus, self.markings()).expect("Farkas indices are stable")
    }

    fn lambda_coeff(self) -> Q {
        let r = self.rank as i64;
        qi(-(6 * r * r + 6 * r + 1))
    }

    fn omega_coeff(self) -> Q {
        qi(self.rank as i64 + 1)
    }

    fn delta_irr_coeff(self) -> Q {
        let r = self.rank as i64;
        qi((r + 1) * r / 2)
    }
}

/// `(2r+1)(g-1)`, defined for `g >= 2`, `r >= 1`.
pub fn farkas_markings(g: u32, r: u32) -> Result<u32> {
    if g < 2 || r < 1 {
        return Err(Error::OutOfRange {
            what: "the Farkas divisor",
            requirement: "g >= 2 and r >= 1",
            g,
            n: 0,
        });
    }
    Ok((2 * r + 1) * (g - 1))
}

/// The known part of a Farkas class, split into its tautological piece
/// `-(6r^2+6r+1) lambda + (r+1) omega + C(r+1,2) delta_irr` and the named
/// boundary piece `-delta_{0,2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasParts<K: ClassKey> {
    pub tautological: LinearClass<K>,
    pub named_boundary: LinearClass<K>,
}

impl<K: ClassKey> FarkasParts<K> {
    pub fn known(&self) -> Result<LinearClass<K>> {
        self.tautological.try_add(&self.named_boundary)
    }

    pub fn class(&self) -> Result<WithSlack<K>> {
        WithSlack::new(self.known()?, SlackSupport::AllBoundary)
    }
}

pub fn farkas_parts(g: u32, r: u32) -> Result<FarkasParts<BasisElement>> {
    let spec = FarkasSpec::new(g, r)?;
    let index = spec.index();
    let n = spec.markings();
    let mut tautological = DivisorClass::zero(index)?;
    tautological.add_term_unchecked(BasisElement::Lambda, spec.lambda_coeff());
    tautological.add_term_unchecked(BasisElement::DeltaIrr, spec.delta_irr_coeff());
    for j in 1..=n {
        tautological.add_scaled(&omega_class(j, g, n)?, &spec.omega_coeff())?;
    }
    let mut named_boundary = DivisorClass::zero(index)?;
    for pair in Subset::combinations(n, 2) {
        named_boundary.add_term(BasisElement::delta(0, pair, index)?, &qi(-1))?;
    }
    Ok(FarkasParts {
        tautological,
        named_boundary,
    })
}

pub fn farkas_parts_sym(g: u32, r: u32) -> Result<FarkasParts<SymBasis>> {
    let spec = FarkasSpec::new(g, r)?;
    let index = spec.index();
    let mut tautological = omega_total_sym(g, spec.markings())?.scaled(&spec.omega_coeff());
    tautological.add_term(SymBasis::Lambda, &spec.lambda_coeff())?;
    tautological.add_term(SymBasis::DeltaIrr, &spec.delta_irr_coeff())?;
    let named_boundary =
        SymDivisorClass::from_terms(index, [(canonical_type(0, 2, index)?, qi(-1))])?;
    Ok(FarkasParts {
        tautological,
        named_boundary,
    })
}

/// `D^r_{g,(2r+1)(g-1)}` in the full basis; the slack may be any effective
/// boundary class.
pub fn farkas_class(g: u32, r: u32) -> Result<WithSlack<BasisElement>> {
    farkas_parts(g, r)?.class()
}

pub fn farkas_class_sym(g: u32, r: u32) -> Result<WithSlack<SymBasis>> {
    farkas_parts_sym(g, r)?.class()
}

/// The average of `pi_T^* D^3_{3,14}` over all 14-subsets `T` of `{1..n}`,
/// `n >= 14`, in closed form.
pub fn symmetric_pullback_farkas(n: u32) -> Result<WithSlack<SymBasis>> {
    ClosedFormAveraging.average(FarkasSpec::GENUS_THREE, n)
}
