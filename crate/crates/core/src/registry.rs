//! Runtime lookup of named classes and averaging strategies.
//!
//! Each registry holds `'static` trait objects selected by name, so the CLI
//! can list what is available and pick an implementation from a flag.

use std::fmt;

use crate::error::{Error, Result};
use crate::picard::{
    canonical_class, canonical_class_sym, delta_total, delta_total_sym, hyperelliptic_class,
    hyperelliptic_class_sym, kappa1, kappa1_sym, lambda_class, omega_total, omega_total_sym,
    symmetrize, DivisorClass, ModuliIndex, SymBasis, SymDivisorClass,
};
use crate::pullback::{
    BruteForceAveraging, ClosedFormAveraging, FarkasAveraging, HypergeometricAveraging,
};
use crate::rational::qi;

/// Something that can be looked up by name.
pub trait Registered: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Registered + 'static> {
    kind: &'static str,
    entries: Vec<&'static T>,
}

impl<T: ?Sized + Registered + 'static> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds an entry; a later entry with the same name replaces the earlier.
    pub fn register(&mut self, entry: &'static T) {
        self.entries.retain(|e| e.name() != entry.name());
        self.entries.push(entry);
    }

    pub fn get(&self, name: &str) -> Result<&'static T> {
        self.entries
            .iter()
            .copied()
            .find(|e| e.name() == name)
            .ok_or_else(|| Error::UnknownName {
                kind: self.kind,
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &'static T> + '_ {
        self.entries.iter().copied()
    }
}

impl<T: ?Sized + Registered + 'static> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("kind", &self.kind)
            .field("entries", &self.names())
            .finish()
    }
}

/// A class defined on a range of `(g, n)`, available in both bases.
pub trait NamedClass: Registered {
    fn full(&self, g: u32, n: u32) -> Result<DivisorClass>;
    fn symmetric(&self, g: u32, n: u32) -> Result<SymDivisorClass>;
}

struct Formula {
    name: &'static str,
    description: &'static str,
    full: fn(u32, u32) -> Result<DivisorClass>,
    symmetric: fn(u32, u32) -> Result<SymDivisorClass>,
}

impl Registered for Formula {
    fn name(&self) -> &'static str {
        self.name
    }

    fn description(&self) -> &'static str {
        self.description
    }
}

impl NamedClass for Formula {
    fn full(&self, g: u32, n: u32) -> Result<DivisorClass> {
        (self.full)(g, n)
    }

    fn symmetric(&self, g: u32, n: u32) -> Result<SymDivisorClass> {
        (self.symmetric)(g, n)
    }
}

fn genus_three_only(g: u32, n: u32) -> Result<()> {
    if (g, n) != (3, 0) {
        return Err(Error::OutOfRange {
            what: "the hyperelliptic class",
            requirement: "(g, n) = (3, 0)",
            g,
            n,
        });
    }
    Ok(())
}

static FORMULAS: [Formula; 7] = [
    Formula {
        name: "lambda",
        description: "first Chern class of the Hodge bundle",
        full: |g, n| lambda_class(ModuliIndex::new(g, n)?),
        symmetric: |g, n| {
            SymDivisorClass::from_terms(ModuliIndex::new(g, n)?, [(SymBasis::Lambda, qi(1))])
        },
    },
    Formula {
        name: "delta",
        description: "total boundary",
        full: |g, n| delta_total(ModuliIndex::new(g, n)?),
        symmetric: |g, n| Ok(delta_total_sym(ModuliIndex::new(g, n)?)),
    },
    Formula {
        name: "psi",
        description: "sum of the cotangent classes psi_1 + ... + psi_n",
        full: |g, n| {
            let index = ModuliIndex::new(g, n)?;
            DivisorClass::from_terms(index, (1..=n).map(|j| (crate::BasisElement::Psi(j), qi(1))))
        },
        symmetric: |g, n| {
            SymDivisorClass::from_terms(ModuliIndex::new(g, n)?, [(SymBasis::Psi, qi(1))])
        },
    },
    Formula {
        name: "kappa1",
        description: "12 lambda + psi - delta",
        full: kappa1,
        symmetric: kappa1_sym,
    },
    Formula {
        name: "canonical",
        description: "canonical class of the stack, g >= 1 and g + n >= 4",
        full: canonical_class,
        symmetric: canonical_class_sym,
    },
    Formula {
        name: "omega",
        description: "psi - sum_k k delta_{0,k}, the sum of the pulled-back psi classes",
        full: omega_total,
        symmetric: omega_total_sym,
    },
    Formula {
        name: "hyperelliptic",
        description: "closure of the hyperelliptic locus in M_3",
        full: |g, n| genus_three_only(g, n).map(|_| hyperelliptic_class()),
        symmetric: |g, n| genus_three_only(g, n).map(|_| hyperelliptic_class_sym()),
    },
];

pub fn named_classes() -> Registry<dyn NamedClass> {
    let mut registry: Registry<dyn NamedClass> = Registry::new("class");
    for formula in &FORMULAS {
        registry.register(formula);
    }
    registry
}

pub const DEFAULT_AVERAGING: &str = "closed-form";

pub fn averaging_strategies() -> Registry<dyn FarkasAveraging> {
    let mut registry: Registry<dyn FarkasAveraging> = Registry::new("averaging strategy");
    registry.register(&ClosedFormAveraging);
    registry.register(&HypergeometricAveraging);
    registry.register(&BruteForceAveraging);
    registry
}

/// Full and symmetric forms of a named class agree.
pub fn check_named_class(class: &dyn NamedClass, g: u32, n: u32) -> Result<bool> {
    Ok(symmetrize(&class.full(g, n)?)? == class.symmetric(g, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pullback::FarkasSpec;

    #[test]
    fn lookup() {
        let classes = named_classes();
        assert_eq!(classes.get("kappa1").unwrap().name(), "kappa1");
        match classes.get("kappa") {
            Err(Error::UnknownName { known, .. }) => assert!(known.contains("kappa1")),
            other => panic!("unexpected {:?}", other.map(|c| c.name())),
        }
        let strategies = averaging_strategies();
        assert_eq!(
            strategies.names(),
            ["closed-form", "hypergeometric", "brute-force"]
        );
        assert!(strategies.get(DEFAULT_AVERAGING).is_ok());
    }

    #[test]
    fn both_bases_agree() {
        for class in named_classes().iter() {
            for (g, n) in [(3, 0), (3, 2), (2, 3), (1, 4), (4, 1)] {
                if let Ok(ok) = check_named_class(class, g, n) {
                    assert!(ok, "{} at ({g},{n})", class.name());
                }
            }
        }
    }

    #[test]
    fn strategies_agree_through_registry() {
        let spec = FarkasSpec::new(2, 1).unwrap();
        let results: Vec<_> = averaging_strategies()
            .iter()
            .map(|s| s.average(spec, 5).unwrap())
            .collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn later_registration_replaces() {
        let mut registry: Registry<dyn FarkasAveraging> = Registry::new("averaging strategy");
        registry.register(&ClosedFormAveraging);
        registry.register(&ClosedFormAveraging);
        assert_eq!(registry.names().len(), 1);
    }
}
