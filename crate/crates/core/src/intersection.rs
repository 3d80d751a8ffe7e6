//! The elliptic-tail test curve `gamma` on `M_{3,n}` and rigid components.
//!
//! `gamma` is the class of a pencil of plane cubics glued at a base point to
//! a fixed pointed curve of genus 2. Its intersection numbers are
//! `gamma . delta_irr = 1`, `gamma . delta_{1,{}} = -1/12`, `gamma . kappa_1 =
//! 1/12`, and zero against `psi_j` and every other `delta_{i,S}`.
//!
//! `gamma . lambda` is not tabulated directly. From
//! `kappa_1 = 12 lambda + psi - delta` and `gamma . delta = 1 - 1/12` one gets
//! `1/12 = 12 (gamma . lambda) - 11/12`, so `gamma . lambda = 1/12`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::picard::{
    is_valid_boundary_size, BasisElement, ClassKey, CoarseDivisor, LinearClass, ModuliIndex,
    SymBasis,
};
use crate::rational::{q, qi, Q};

pub const GAMMA_GENUS: u32 = 3;

/// Generators with a known pairing against `gamma`.
pub trait GammaPairing: ClassKey {
    fn gamma_value(&self, index: ModuliIndex) -> Q;
}

fn is_tail(genus: u32, size: u32, index: ModuliIndex) -> bool {
    (genus == 1 && size == 0) || (genus == index.genus() - 1 && size == index.markings())
}

impl GammaPairing for BasisElement {
    fn gamma_value(&self, index: ModuliIndex) -> Q {
        match *self {
            BasisElement::Lambda => q(1, 12),
            BasisElement::DeltaIrr => qi(1),
            BasisElement::DeltaSep { genus, markings } if is_tail(genus, markings.len(), index) => {
                q(-1, 12)
            }
            _ => qi(0),
        }
    }
}

impl GammaPairing for SymBasis {
    fn gamma_value(&self, index: ModuliIndex) -> Q {
        match *self {
            SymBasis::Lambda => q(1, 12),
            SymBasis::DeltaIrr => qi(1),
            SymBasis::Delta { genus, size } if is_tail(genus, size, index) => q(-1, 12),
            _ => qi(0),
        }
    }
}

fn check_genus(index: ModuliIndex) -> Result<()> {
    if index.genus() != GAMMA_GENUS {
        return Err(Error::WrongGenus {
            expected: GAMMA_GENUS,
            found: index.genus(),
        });
    }
    Ok(())
}

/// `gamma . c` for a class on `M_{3,n}`.
pub fn gamma_dot<K: GammaPairing>(class: &LinearClass<K>) -> Result<Q> {
    let index = class.index();
    check_genus(index)?;
    Ok(class
        .iter()
        .map(|(key, value)| key.gamma_value(index) * value)
        .sum())
}

/// `gamma . [Delta]` for a coarse boundary divisor covered by `gamma`-curves.
/// Only the elliptic-tail divisor `Delta_{1,{}}` is.
pub fn gamma_dot_coarse(divisor: CoarseDivisor, index: ModuliIndex) -> Result<Q> {
    check_genus(index)?;
    match divisor {
        CoarseDivisor::Irreducible => Err(Error::NotGammaCovered(divisor.to_string())),
        CoarseDivisor::Separating { genus, markings } => {
            if let Some(j) = markings.max_element() {
                index.check_marking(j)?;
            }
            if !is_valid_boundary_size(genus, markings.len(), index) {
                return Err(Error::InvalidBoundary {
                    genus,
                    markings: markings.to_string(),
                    g: index.genus(),
                    n: index.markings(),
                });
            }
            if !is_tail(genus, markings.len(), index) {
                return Err(Error::NotGammaCovered(divisor.to_string()));
            }
            // the coarse divisor is twice the stack generator
            Ok(qi(2) * q(-1, 12))
        }
    }
}

/// If curves of class `gamma` cover `divisor` and meet both `divisor` and
/// `class` negatively, then `divisor` is a fixed component of every effective
/// representative of `class`, with multiplicity at least
/// `(gamma . class) / (gamma . divisor)`. Returns `None` when the sign test
/// fails.
pub fn rigid_component<K: GammaPairing>(
    class: &LinearClass<K>,
    divisor: CoarseDivisor,
) -> Result<Option<Q>> {
    let on_divisor = gamma_dot_coarse(divisor, class.index())?;
    let on_class = gamma_dot(class)?;
    if on_class.is_negative() && on_divisor.is_negative() {
        Ok(Some(on_class / on_divisor))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::{
        canonical_class, canonical_class_sym, coarse_boundary_class, delta_class, kappa1,
        kappa1_sym, lambda_class, psi_class,
    };
    use crate::subset::Subset;

    fn idx(n: u32) -> ModuliIndex {
        ModuliIndex::new(3, n).unwrap()
    }

    #[test]
    fn table_values() {
        for n in 0..=6 {
            assert_eq!(gamma_dot(&kappa1(3, n).unwrap()).unwrap(), q(1, 12));
            assert_eq!(gamma_dot(&lambda_class(idx(n)).unwrap()).unwrap(), q(1, 12));
            assert_eq!(gamma_dot(&kappa1_sym(3, n).unwrap()).unwrap(), q(1, 12));
        }
        assert_eq!(gamma_dot(&psi_class(1, idx(2)).unwrap()).unwrap(), qi(0));
        let tail = coarse_boundary_class(CoarseDivisor::elliptic_tail(), idx(2)).unwrap();
        assert_eq!(gamma_dot(&tail).unwrap(), q(-1, 6));
        let other = delta_class(1, Subset::singleton(1), idx(2)).unwrap();
        assert_eq!(gamma_dot(&other).unwrap(), qi(0));
    }

    #[test]
    fn canonical_class_value() {
        for n in 1..=6 {
            assert_eq!(
                gamma_dot(&canonical_class(3, n).unwrap()).unwrap(),
                q(-2, 3)
            );
        }
        assert_eq!(
            gamma_dot(&canonical_class_sym(3, 40).unwrap()).unwrap(),
            q(-2, 3)
        );
    }

    #[test]
    fn tail_in_complement_form() {
        let index = idx(2);
        let complement = CoarseDivisor::Separating {
            genus: 2,
            markings: Subset::full(2),
        };
        assert_eq!(gamma_dot_coarse(complement, index).unwrap(), q(-1, 6));
    }

    #[test]
    fn rigid_components() {
        for m in 1..=5 {
            let k = canonical_class(3, 2).unwrap().scaled(&qi(m));
            assert_eq!(
                rigid_component(&k, CoarseDivisor::elliptic_tail()).unwrap(),
                Some(qi(4 * m))
            );
        }
        let lambda = lambda_class(idx(2)).unwrap();
        assert_eq!(
            rigid_component(&lambda, CoarseDivisor::elliptic_tail()).unwrap(),
            None
        );
        let rational_tail = CoarseDivisor::Separating {
            genus: 0,
            markings: Subset::full(2),
        };
        let k = canonical_class(3, 2).unwrap();
        assert!(matches!(
            rigid_component(&k, rational_tail),
            Err(Error::NotGammaCovered(_))
        ));
        assert!(matches!(
            rigid_component(&k, CoarseDivisor::Irreducible),
            Err(Error::NotGammaCovered(_))
        ));
    }

    #[test]
    fn wrong_genus() {
        let k = canonical_class(2, 3).unwrap();
        assert!(matches!(gamma_dot(&k), Err(Error::WrongGenus { .. })));
    }
}
