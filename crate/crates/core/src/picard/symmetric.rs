//! `S_n`-invariant classes in the basis `lambda, psi, delta_irr, delta_{i,k}`.
//!
//! A coefficient `c` on `delta_{i,k}` means `c` times the sum of the distinct
//! canonical generators `delta_{i,S}` of that type; likewise `psi` stands for
//! `psi_1 + ... + psi_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::picard::basis::is_valid_boundary_size;
use crate::picard::{BasisElement, ClassKey, DivisorClass, ModuliIndex, SymDivisorClass};
use crate::rational::{binomial, Q};
use crate::subset::Subset;

/// Generators of the `S_n`-invariant part of `Pic_Q(M_{g,n})`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymBasis {
    Lambda,
    Psi,
    DeltaIrr,
    /// `delta_{i,k}`: separating boundary with genus `genus` and `size`
    /// markings on the canonical side.
    Delta {
        genus: u32,
        size: u32,
    },
}

impl SymBasis {
    pub fn delta(genus: u32, size: u32) -> Self {
        SymBasis::Delta { genus, size }
    }
}

/// Symmetric type of a canonical full-basis generator.
pub fn symmetric_type(elem: &BasisElement, index: ModuliIndex) -> SymBasis {
    match *elem {
        BasisElement::Lambda => SymBasis::Lambda,
        BasisElement::Psi(_) => SymBasis::Psi,
        BasisElement::DeltaIrr => SymBasis::DeltaIrr,
        BasisElement::DeltaSep { genus, markings } => {
            let k = markings.len();
            let size = if 2 * genus == index.genus() {
                k.min(index.markings() - k)
            } else {
                k
            };
            SymBasis::Delta { genus, size }
        }
    }
}

/// Canonical symmetric type of the (possibly non-canonical) pair `(i, k)`.
pub fn canonical_type(i: u32, k: u32, index: ModuliIndex) -> Result<SymBasis> {
    let (g, n) = (index.genus(), index.markings());
    if i > g || k > n {
        return Err(invalid_type(i, k, index));
    }
    let (i, k) = if 2 * i > g { (g - i, n - k) } else { (i, k) };
    let k = if 2 * i == g { k.min(n - k) } else { k };
    let key = SymBasis::Delta { genus: i, size: k };
    key.validate(index)?;
    Ok(key)
}

fn invalid_type(i: u32, k: u32, index: ModuliIndex) -> Error {
    Error::InvalidBoundary {
        genus: i,
        markings: format!("#{k}"),
        g: index.genus(),
        n: index.markings(),
    }
}

/// All symmetric boundary types of `M_{g,n}` in basis order.
pub fn boundary_types(index: ModuliIndex) -> Vec<SymBasis> {
    let (g, n) = (index.genus(), index.markings());
    let mut out = Vec::new();
    if g >= 1 {
        out.push(SymBasis::DeltaIrr);
    }
    for i in (0..=g).filter(|i| 2 * i <= g) {
        for k in 0..=n {
            let key = SymBasis::Delta { genus: i, size: k };
            if key.validate(index).is_ok() {
                out.push(key);
            }
        }
    }
    out
}

/// Number of distinct canonical generators of a symmetric type.
pub fn type_multiplicity(key: &SymBasis, index: ModuliIndex) -> BigInt {
    let (g, n) = (index.genus(), index.markings());
    match *key {
        SymBasis::Lambda | SymBasis::DeltaIrr => BigInt::from(1),
        SymBasis::Psi => BigInt::from(n),
        SymBasis::Delta { genus, size } => {
            let all = binomial(n as u64, size as u64);
            if 2 * genus == g && 2 * size == n && n > 0 {
                all / 2
            } else {
                all
            }
        }
    }
}

/// Canonical full-basis generators of one symmetric type, sorted.
pub fn generators_of_type(key: &SymBasis, index: ModuliIndex) -> Result<Vec<BasisElement>> {
    let (g, n) = (index.genus(), index.markings());
    DivisorClass::zero(index)?;
    let mut out = match *key {
        SymBasis::Lambda => vec![BasisElement::Lambda],
        SymBasis::Psi => (1..=n).map(BasisElement::Psi).collect(),
        SymBasis::DeltaIrr => vec![BasisElement::DeltaIrr],
        SymBasis::Delta { genus, size } => {
            let mut elems: Vec<BasisElement> = Subset::combinations(n, size)
                .map(|markings| BasisElement::DeltaSep { genus, markings })
                .collect();
            if 2 * genus == g && n > 0 {
                // canonical side avoids marking n; either size may carry it
                elems.retain(|e| matches!(e, BasisElement::DeltaSep { markings, .. } if !markings.contains(n)));
                if 2 * size != n {
                    elems.extend(
                        Subset::combinations(n, n - size)
                            .filter(|s| !s.contains(n))
                            .map(|markings| BasisElement::DeltaSep { genus, markings }),
                    );
                }
            }
            elems
        }
    };
    out.sort();
    Ok(out)
}

impl ClassKey for SymBasis {
    const MAX_MARKINGS: Option<u32> = None;

    fn is_boundary(&self) -> bool {
        matches!(self, SymBasis::DeltaIrr | SymBasis::Delta { .. })
    }

    fn validate(&self, index: ModuliIndex) -> Result<()> {
        let (g, n) = (index.genus(), index.markings());
        match *self {
            SymBasis::Lambda => Ok(()),
            SymBasis::Psi if n >= 1 => Ok(()),
            SymBasis::Psi => Err(Error::MarkingOutOfRange { marking: 1, n }),
            SymBasis::DeltaIrr if g >= 1 => Ok(()),
            SymBasis::DeltaIrr => BasisElement::DeltaIrr.validate(index),
            SymBasis::Delta { genus, size } => {
                let canonical_side = 2 * genus < g || (2 * genus == g && 2 * size <= n);
                if canonical_side && is_valid_boundary_size(genus, size, index) {
                    Ok(())
                } else {
                    Err(invalid_type(genus, size, index))
                }
            }
        }
    }

    fn parse_key(key: &str, index: ModuliIndex) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognised symmetric key '{key}'"));
        let parsed = match key {
            "lambda" => SymBasis::Lambda,
            "psi" => SymBasis::Psi,
            "delta_irr" => SymBasis::DeltaIrr,
            _ => {
                let rest = key.strip_prefix("delta_").ok_or_else(bad)?;
                let (i, k) = rest.split_once('_').ok_or_else(bad)?;
                let i: u32 = i.parse().map_err(|_| bad())?;
                let k: u32 = k.parse().map_err(|_| bad())?;
                return canonical_type(i, k, index);
            }
        };
        parsed.validate(index)?;
        Ok(parsed)
    }
}

impl fmt::Display for SymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymBasis::Lambda => f.write_str("lambda"),
            SymBasis::Psi => f.write_str("psi"),
            SymBasis::DeltaIrr => f.write_str("delta_irr"),
            SymBasis::Delta { genus, size } => write!(f, "delta_{genus}_{size}"),
        }
    }
}

impl fmt::Debug for SymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reads off the symmetric coefficients of an `S_n`-invariant class.
pub fn symmetrize(class: &DivisorClass) -> Result<SymDivisorClass> {
    let index = class.index();
    let mut groups: BTreeMap<SymBasis, Vec<(&BasisElement, &Q)>> = BTreeMap::new();
    for (key, value) in class.iter() {
        groups
            .entry(symmetric_type(key, index))
            .or_default()
            .push((key, value));
    }
    let mut out = SymDivisorClass::zero(index)?;
    for (ty, members) in groups {
        let (first_key, first_value) = members[0];
        if let Some((other, _)) = members.iter().find(|(_, v)| *v != first_value) {
            return Err(Error::NotSymmetric {
                first: first_key.to_string(),
                second: other.to_string(),
            });
        }
        if BigInt::from(members.len()) != type_multiplicity(&ty, index) {
            let present: Vec<&BasisElement> = members.iter().map(|(k, _)| *k).collect();
            let missing = generators_of_type(&ty, index)?
                .into_iter()
                .find(|e| present.binary_search(&e).is_err())
                .ok_or_else(|| Error::Inconsistent(format!("type {ty} miscounted")))?;
            return Err(Error::NotSymmetric {
                first: first_key.to_string(),
                second: missing.to_string(),
            });
        }
        out.add_term_unchecked(ty, first_value.clone());
    }
    Ok(out)
}

/// Expands a symmetric class into the full basis (`n <= 20`).
pub fn expand(class: &SymDivisorClass) -> Result<DivisorClass> {
    let index = class.index();
    let mut out = DivisorClass::zero(index)?;
    for (ty, value) in class.iter() {
        for elem in generators_of_type(ty, index)? {
            out.add_term_unchecked(elem, value.clone());
        }
    }
    Ok(out)
}

impl SymDivisorClass {
    /// Sum of the coefficient times multiplicity over the given types;
    /// zero-coefficient types contribute nothing.
    pub fn total_weight(&self, key: &SymBasis) -> Q {
        let c = self.coeff(key);
        if c.is_zero() {
            return c;
        }
        c * Q::from_integer(type_multiplicity(key, self.index()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn idx(g: u32, n: u32) -> ModuliIndex {
        ModuliIndex::new(g, n).unwrap()
    }

    #[test]
    fn type_validation() {
        let index = idx(3, 4);
        assert!(SymBasis::delta(0, 2).validate(index).is_ok());
        assert!(SymBasis::delta(0, 1).validate(index).is_err());
        assert!(SymBasis::delta(1, 0).validate(index).is_ok());
        assert!(SymBasis::delta(2, 0).validate(index).is_err());
        // g = 2: delta_{1,k} with k <= n/2
        let even = idx(2, 4);
        assert!(SymBasis::delta(1, 2).validate(even).is_ok());
        assert!(SymBasis::delta(1, 3).validate(even).is_err());
        assert_eq!(canonical_type(1, 3, even).unwrap(), SymBasis::delta(1, 1));
        assert_eq!(canonical_type(3, 2, index).unwrap(), SymBasis::delta(0, 2));
    }

    #[test]
    fn multiplicities_match_enumeration() {
        for (g, n) in [(3, 5), (2, 4), (2, 5), (4, 3), (0, 6), (1, 4)] {
            let index = idx(g, n);
            for ty in boundary_types(index) {
                assert_eq!(
                    BigInt::from(generators_of_type(&ty, index).unwrap().len()),
                    type_multiplicity(&ty, index),
                    "{ty} on {index}"
                );
            }
        }
    }

    #[test]
    fn expand_delta_0_2() {
        let index = idx(3, 4);
        let sym = SymDivisorClass::from_terms(index, [(SymBasis::delta(0, 2), qi(1))]).unwrap();
        let full = expand(&sym).unwrap();
        assert_eq!(full.len(), 6);
        assert!(full.iter().all(|(_, v)| *v == qi(1)));
        assert_eq!(symmetrize(&full).unwrap(), sym);
    }

    #[test]
    fn rejects_asymmetric_psi() {
        let index = idx(3, 2);
        let class = DivisorClass::from_terms(index, [(BasisElement::Psi(1), qi(1))]).unwrap();
        let err = symmetrize(&class).unwrap_err();
        assert_eq!(
            err,
            Error::NotSymmetric {
                first: "psi_1".into(),
                second: "psi_2".into()
            }
        );
    }

    #[test]
    fn rejects_unequal_coefficients() {
        let index = idx(3, 2);
        let class = DivisorClass::from_terms(
            index,
            [(BasisElement::Psi(1), qi(1)), (BasisElement::Psi(2), qi(2))],
        )
        .unwrap();
        assert!(matches!(
            symmetrize(&class),
            Err(Error::NotSymmetric { .. })
        ));
    }
}
