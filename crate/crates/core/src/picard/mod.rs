//! Rational divisor classes on `M_{g,n}` in the basis `lambda`, `psi_j`,
//! `delta_irr`, `delta_{i,S}`.
//!
//! Separating boundary classes are stored at their canonical representative
//! (see [`canonicalize`]). The basis holds stack classes: `delta_{1,{}}` is half
//! of the coarse divisor `Delta_{1,{}}`, and coarse divisors only enter through
//! [`coarse_boundary_class`].

mod basis;
mod class;
mod full;
mod index;
mod named;
pub mod symmetric;

pub use basis::{canonicalize, is_valid_boundary, is_valid_boundary_size, BasisElement};
pub use class::{ClassKey, LinearClass};
pub use full::{all_generators, separating_boundary, MAX_FULL_MARKINGS};
pub use index::ModuliIndex;
pub use named::{
    canonical_class, canonical_class_sym, coarse_boundary_class, delta_class, delta_irr_class,
    delta_total, delta_total_sym, hyperelliptic_class, hyperelliptic_class_sym, kappa1, kappa1_sym,
    lambda_class, omega_class, omega_total, omega_total_sym, psi_class, CoarseDivisor,
};
pub use symmetric::{
    boundary_types, canonical_type, expand, generators_of_type, symmetric_type, symmetrize,
    type_multiplicity, SymBasis,
};

/// A class in the full basis (`n <= 20`).
pub type DivisorClass = LinearClass<BasisElement>;

/// An `S_n`-invariant class in the symmetric basis (any `n`).
pub type SymDivisorClass = LinearClass<SymBasis>;
