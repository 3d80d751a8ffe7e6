//! Exact rational divisor classes on the moduli spaces of stable pointed
//! curves, forgetful pull-backs, an elliptic-tail test curve, a bigness
//! certificate for the canonical class in genus 3, and an age calculus for
//! diagonal cyclic quotient singularities.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! roots of unity are carried as fractions of a turn.

pub mod bigness;
pub mod error;
pub mod intersection;
pub mod picard;
pub mod pullback;
pub mod rational;
pub mod registry;
pub mod reid_tai;
pub mod subset;

pub use error::{Error, Result};
pub use picard::{
    BasisElement, ClassKey, DivisorClass, LinearClass, ModuliIndex, SymBasis, SymDivisorClass,
};
pub use rational::Q;
pub use subset::Subset;
