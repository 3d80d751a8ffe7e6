use num_integer::Integer;
use serde::Serialize;

use super::action::{exponent_order, CyclicAction};

/// The quotient by the subgroup `H` generated by quasi-reflections.
///
/// `m_j` is the least positive power fixing every coordinate but `x_j`, so
/// `g^{m_j}` is trivial or a quasi-reflection and `H = <g^h>` with
/// `h = gcd(m_j)`. `C^d / H` has coordinates `y_j = x_j^{lambda_j}`,
/// `lambda_j = k / m_j`, on which `g` acts by `exp(2 pi i a_j / m_j)`; the
/// quotient group `G/H` is cyclic of order `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    pub reduced: CyclicAction,
    pub lambdas: Vec<u32>,
    pub quasi_reflection_generators: Vec<u32>,
}

impl ReductionResult {
    /// `|H|`.
    pub fn subgroup_order(&self, original: &CyclicAction) -> u32 {
        original.order() / self.reduced.order()
    }
}

pub fn reduce_quasi_reflections(action: &CyclicAction) -> ReductionResult {
    let k = action.order();
    let a = action.exponents();
    let orders: Vec<u32> = a.iter().map(|&x| exponent_order(x, k)).collect();
    let m: Vec<u32> = (0..a.len())
        .map(|j| {
            orders
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(1u32, |acc, (_, &o)| acc.lcm(&o))
        })
        .collect();
    let h = m.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    let lambdas = m.iter().map(|&mj| k / mj).collect();
    let exponents = a
        .iter()
        .zip(&m)
        .map(|(&aj, &mj)| {
            let scaled = aj as u64 * h as u64;
            debug_assert_eq!(scaled % mj as u64, 0);
            ((scaled / mj as u64) % h as u64) as u32
        })
        .collect();
    ReductionResult {
        reduced: CyclicAction::new(h, exponents).expect("the quotient acts faithfully"),
        lambdas,
        quasi_reflection_generators: m,
    }
}
