//! Basis of `Pic_Q` and canonical representatives of separating boundary
//! divisors.

use std::fmt;

use crate::error::{Error, Result};
use crate::picard::ModuliIndex;
use crate::subset::{Subset, SUBSET_CAPACITY};

/// One generator of `Pic_Q(M_{g,n})`: `lambda`, `psi_j`, `delta_irr` or a
/// separating boundary class `delta_{i,S}`.
///
/// The derived order (`Lambda < Psi(1) < ... < DeltaIrr < DeltaSep`, the last
/// by genus then lexicographic marking set) is the serialization order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Lambda,
    Psi(u32),
    DeltaIrr,
    DeltaSep { genus: u32, markings: Subset },
}

/// Whether `(i, S)` names a boundary divisor in this orientation. The
/// condition is invariant under `(i, S) -> (g - i, S^c)`.
pub fn is_valid_boundary(i: u32, s: Subset, index: ModuliIndex) -> bool {
    if s.max_element().is_some_and(|m| m > index.markings()) {
        return false;
    }
    is_valid_boundary_size(i, s.len(), index)
}

/// Size-only form of [`is_valid_boundary`].
pub fn is_valid_boundary_size(i: u32, k: u32, index: ModuliIndex) -> bool {
    let (g, n) = (index.genus(), index.markings());
    i <= g && k <= n && (i != 0 || k >= 2) && (i != g || k + 2 <= n)
}

/// Canonical representative of `Delta_{i,S} = Delta_{g-i,S^c}`: the side with
/// `2i < g`, or for `2i = g` the side not containing marking `n`.
pub fn canonicalize(i: u32, s: Subset, index: ModuliIndex) -> Result<BasisElement> {
    let (g, n) = (index.genus(), index.markings());
    if !is_valid_boundary(i, s, index) {
        return Err(Error::InvalidBoundary {
            genus: i,
            markings: s.to_string(),
            g,
            n,
        });
    }
    let flip = match (2 * i).cmp(&g) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => n > 0 && s.contains(n),
    };
    Ok(if flip {
        BasisElement::DeltaSep {
            genus: g - i,
            markings: s.complement(n),
        }
    } else {
        BasisElement::DeltaSep {
            genus: i,
            markings: s,
        }
    })
}

impl BasisElement {
    pub fn psi(j: u32, index: ModuliIndex) -> Result<Self> {
        index.check_marking(j)?;
        Ok(BasisElement::Psi(j))
    }

    pub fn delta(i: u32, s: Subset, index: ModuliIndex) -> Result<Self> {
        canonicalize(i, s, index)
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, BasisElement::DeltaIrr | BasisElement::DeltaSep { .. })
    }

    /// Checks that `self` is a canonical generator for `index`.
    pub fn validate(&self, index: ModuliIndex) -> Result<()> {
        match *self {
            BasisElement::Lambda => Ok(()),
            BasisElement::Psi(j) => index.check_marking(j),
            BasisElement::DeltaIrr => {
                if index.genus() == 0 {
                    Err(Error::OutOfRange {
                        what: "delta_irr",
                        requirement: "g >= 1",
                        g: index.genus(),
                        n: index.markings(),
                    })
                } else {
                    Ok(())
                }
            }
            BasisElement::DeltaSep { genus, markings } => {
                let canonical = canonicalize(genus, markings, index)?;
                if canonical != *self {
                    return Err(Error::Inconsistent(format!(
                        "{self} is not the canonical representative of {canonical}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Parses the serialized key form (`lambda`, `psi_3`, `delta_irr`,
    /// `delta_1_{}`, `delta_0_{1,2}`) and canonicalizes it for `index`.
    pub fn parse(key: &str, index: ModuliIndex) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognised basis key '{key}'"));
        match key {
            "lambda" => return Ok(BasisElement::Lambda),
            "delta_irr" => {
                let elem = BasisElement::DeltaIrr;
                elem.validate(index)?;
                return Ok(elem);
            }
            _ => {}
        }
        if let Some(j) = key.strip_prefix("psi_") {
            let j: u32 = j.parse().map_err(|_| bad())?;
            return BasisElement::psi(j, index);
        }
        let rest = key.strip_prefix("delta_").ok_or_else(bad)?;
        let (genus, set) = rest.split_once('_').ok_or_else(bad)?;
        let genus: u32 = genus.parse().map_err(|_| bad())?;
        let inner = set
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut markings = Subset::EMPTY;
        if !inner.is_empty() {
            for part in inner.split(',') {
                let j: u32 = part.trim().parse().map_err(|_| bad())?;
                if j == 0 || j > SUBSET_CAPACITY {
                    return Err(bad());
                }
                index.check_marking(j)?;
                markings = markings.with(j);
            }
        }
        canonicalize(genus, markings, index)
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Lambda => f.write_str("lambda"),
            BasisElement::Psi(j) => write!(f, "psi_{j}"),
            BasisElement::DeltaIrr => f.write_str("delta_irr"),
            BasisElement::DeltaSep { genus, markings } => write!(f, "delta_{genus}_{markings}"),
        }
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
