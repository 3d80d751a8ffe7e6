//! Junior automorphisms of smooth pointed curves of small genus, as a
//! catalog. Eigenvalues are fractions of a turn with `zeta_k = exp(2 pi i/k)`:
//! `-1 = 1/2`, `zeta_4 = 1/4`, `zeta_3^2 = 2/3`, `zeta_6^2 = 1/3`.

use serde::Serialize;

use crate::rational::{serde_q, Q};

use super::action::RootOfUnity;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismCase {
    pub case: u32,
    pub genus: u32,
    /// Marked points fixed.
    pub fixed_points: u32,
    /// Pairs of marked points swapped.
    pub swapped_pairs: u32,
    pub curve: &'static str,
    pub automorphism: &'static str,
    pub order: u32,
    pub eigenvalues: Vec<RootOfUnity>,
    #[serde(with = "serde_q")]
    pub age: Q,
}

impl AutomorphismCase {
    pub fn nontrivial_eigenvalues(&self) -> usize {
        self.eigenvalues.iter().filter(|z| !z.is_one()).count()
    }
}

fn row(
    case: u32,
    genus: u32,
    fixed_points: u32,
    curve: &'static str,
    automorphism: &'static str,
    order: u32,
    eigenvalues: &[(i64, u32)],
) -> AutomorphismCase {
    let eigenvalues: Vec<RootOfUnity> = eigenvalues
        .iter()
        .map(|&(n, d)| RootOfUnity::new(n, d).expect("catalog entries are valid"))
        .collect();
    AutomorphismCase {
        case,
        genus,
        fixed_points,
        swapped_pairs: 0,
        curve,
        automorphism,
        order,
        age: eigenvalues.iter().map(|z| z.fraction()).sum(),
        eigenvalues,
    }
}

pub fn table1_catalog() -> Vec<AutomorphismCase> {
    vec![
        row(1, 1, 1, "any", "order 2", 2, &[(0, 1)]),
        row(2, 1, 2, "any", "order 2", 2, &[(0, 1), (1, 2)]),
        row(3, 1, 1, "j = 0", "order 3", 3, &[(2, 3)]),
        row(4, 1, 1, "j = 0", "order 6", 6, &[(1, 3)]),
        row(5, 1, 1, "j = 1728", "order 4", 4, &[(1, 2)]),
        row(6, 1, 2, "j = 1728", "order 4", 4, &[(1, 2), (1, 4)]),
        row(
            7,
            2,
            1,
            "any",
            "hyperelliptic involution",
            2,
            &[(0, 1), (0, 1), (0, 1), (1, 2)],
        ),
        row(
            8,
            3,
            0,
            "hyperelliptic",
            "hyperelliptic involution",
            2,
            &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2)],
        ),
    ]
}
