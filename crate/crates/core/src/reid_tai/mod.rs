//! Ages of diagonal cyclic actions and the Reid-Shepherd-Barron-Tai test.
//!
//! An action of order `k` on `C^d` is stored as integer exponents `a_j`: the
//! generator multiplies `x_j` by `exp(2 pi i a_j / k)`. Ages and the lifting
//! inequality are evaluated in integers and reported as exact rationals.

mod action;
mod elliptic_tail;
mod lifting;
mod nodes;
mod reduction;
mod table1;

pub use action::{CyclicAction, RootOfUnity, MAX_ORDER};
pub use elliptic_tail::{
    classify, classify_elliptic_tail, Classification, TailClassification, TailFamily, TailRoute,
    TailVerdict,
};
pub use lifting::{
    lifting_report, lifts, minimal_first_vanishing, reduce_then_lift, ConventionalLift,
    LiftingQuery, LiftingReport, PowerCheck,
};
pub use nodes::{node_orbit_contribution, node_orbit_exponents, NodeOrbitContribution};
pub use reduction::{reduce_quasi_reflections, ReductionResult};
pub use table1::{table1_catalog, AutomorphismCase};
