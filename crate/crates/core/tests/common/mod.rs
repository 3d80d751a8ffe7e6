#![allow(dead_code)]

use mbar_core::picard::{
    all_generators, boundary_types, canonicalize, expand, is_valid_boundary, omega_class,
    psi_class, symmetrize,
};
use mbar_core::pullback::{pullback_multi, pullback_stepwise};
use mbar_core::rational::qi;
use mbar_core::reid_tai::{
    lifts, reduce_quasi_reflections, CyclicAction, LiftingQuery, RootOfUnity,
};
use mbar_core::{BasisElement, DivisorClass, ModuliIndex, Subset, SymBasis, SymDivisorClass, Q};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rayon::prelude::*;

pub fn idx(g: u32, n: u32) -> ModuliIndex {
    ModuliIndex::new(g, n).unwrap()
}

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

// ---- pull-backs ----

pub fn class_from(index: ModuliIndex, coeffs: &[i64]) -> DivisorClass {
    let gens = all_generators(index).unwrap();
    DivisorClass::from_terms(
        index,
        gens.into_iter().zip(coeffs).map(|(e, &c)| (e, qi(c))),
    )
    .unwrap()
}

/// Every generator with a distinct coefficient.
pub fn generic_class(index: ModuliIndex) -> DivisorClass {
    let n = all_generators(index).unwrap().len();
    let coeffs: Vec<i64> = (1..=n as i64).map(|i| i * i - 7).collect();
    class_from(index, &coeffs)
}

pub fn injections(m: u32, n: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for prefix in injections(m - 1, n) {
        for x in 1..=n {
            if !prefix.contains(&x) {
                let mut next = prefix.clone();
                next.push(x);
                out.push(next);
            }
        }
    }
    out
}

pub fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Coefficient of each target generator read off by restricting it to the
/// kept markings.
pub fn dual_pullback(class: &DivisorClass, kept: &[u32], n: u32) -> DivisorClass {
    let source = class.index();
    let target = source.with_markings(n).unwrap();
    let g = source.genus();
    let m = source.markings();
    let preimage = |s: Subset| -> Subset {
        Subset::from_elements((1..=m).filter(|&j| s.contains(kept[j as usize - 1])))
    };
    let psi_of = |s: Subset| class.coeff(&BasisElement::Psi(s.elements().next().unwrap()));
    let mut out = DivisorClass::zero(target).unwrap();
    for elem in all_generators(target).unwrap() {
        let value: Q = match elem {
            BasisElement::Lambda | BasisElement::DeltaIrr => class.coeff(&elem),
            BasisElement::Psi(q) => match kept.iter().position(|&x| x == q) {
                Some(j) => class.coeff(&BasisElement::Psi(j as u32 + 1)),
                None => qi(0),
            },
            BasisElement::DeltaSep { genus, markings } => {
                let restricted = preimage(markings);
                let other = restricted.complement(m);
                if is_valid_boundary(genus, restricted, source) {
                    class.coeff(&canonicalize(genus, restricted, source).unwrap())
                } else if genus == 0 && restricted.len() == 1 {
                    -psi_of(restricted)
                } else if genus == g && other.len() == 1 {
                    -psi_of(other)
                } else {
                    qi(0)
                }
            }
        };
        out.add_term(elem, &value).unwrap();
    }
    out
}

/// All injections and up to 24 forgetting orders, `m <= 3`, `n <= 6`.
pub fn check_order_independence() -> usize {
    let mut checked = 0;
    for (g, m) in [
        (3, 0),
        (3, 1),
        (2, 1),
        (3, 2),
        (1, 2),
        (2, 3),
        (0, 3),
        (1, 3),
    ] {
        let class = generic_class(idx(g, m));
        for n in m..=6 {
            for kept in injections(m, n) {
                let direct = pullback_multi(&class, &kept, n).unwrap();
                let forgotten: Vec<u32> = (1..=n).filter(|x| !kept.contains(x)).collect();
                for order in permutations(&forgotten).into_iter().take(24) {
                    let stepwise = pullback_stepwise(&class, &kept, n, &order).unwrap();
                    assert_eq!(
                        direct, stepwise,
                        "({g},{m}) -> {n} keeping {kept:?} order {order:?}"
                    );
                    checked += 1;
                }
            }
        }
    }
    checked
}

pub fn check_omega_consistency() -> usize {
    let mut checked = 0;
    for g in 1..=3 {
        let psi = psi_class(1, idx(g, 1)).unwrap();
        for n in 1..=8 {
            for j in 1..=n {
                assert_eq!(
                    pullback_multi(&psi, &[j], n).unwrap(),
                    omega_class(j, g, n).unwrap()
                );
                checked += 1;
            }
        }
    }
    checked
}

pub fn check_canonical_involution() -> usize {
    let mut checked = 0;
    for g in 0..=4 {
        for n in 0..=8 {
            let Ok(index) = ModuliIndex::new(g, n) else {
                continue;
            };
            for i in 0..=g {
                for s in Subset::full(n).subsets() {
                    if !is_valid_boundary(i, s, index) {
                        assert!(canonicalize(i, s, index).is_err());
                        continue;
                    }
                    let c = canonicalize(i, s, index).unwrap();
                    assert_eq!(canonicalize(g - i, s.complement(n), index).unwrap(), c);
                    let BasisElement::DeltaSep { genus, markings } = c else {
                        panic!("{c}")
                    };
                    assert_eq!(canonicalize(genus, markings, index).unwrap(), c);
                    checked += 1;
                }
            }
        }
    }
    checked
}

pub fn sym_class_strategy() -> impl Strategy<Value = SymDivisorClass> {
    (0u32..=4, 0u32..=8)
        .prop_filter_map("stable", |(g, n)| ModuliIndex::new(g, n).ok())
        .prop_flat_map(|index| {
            let len = boundary_types(index).len() + 2;
            prop::collection::vec(-9i64..=9, len).prop_map(move |coeffs| {
                let mut keys = vec![SymBasis::Lambda, SymBasis::Psi];
                keys.extend(boundary_types(index));
                let terms = keys
                    .into_iter()
                    .zip(coeffs)
                    .filter(|(k, _)| index.markings() > 0 || *k != SymBasis::Psi)
                    .map(|(k, c)| (k, qi(c)));
                SymDivisorClass::from_terms(index, terms).unwrap()
            })
        })
}

pub fn check_round_trip(class: &SymDivisorClass) {
    assert_eq!(&symmetrize(&expand(class).unwrap()).unwrap(), class);
}

// ---- Reid-Tai ----

/// Non-decreasing exponent tuples of length `d` modulo `k` that act faithfully.
pub fn faithful_multisets(k: u32, d: usize) -> Vec<CyclicAction> {
    fn rec(k: u32, d: usize, start: u32, prefix: &mut Vec<u32>, out: &mut Vec<CyclicAction>) {
        if prefix.len() == d {
            if let Ok(a) = CyclicAction::new(k, prefix.clone()) {
                out.push(a);
            }
            return;
        }
        for a in start..k {
            prefix.push(a);
            rec(k, d, a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, d, 0, &mut Vec::new(), &mut out);
    out
}

pub fn check_reduction(action: &CyclicAction) {
    let r = reduce_quasi_reflections(action);
    assert!(
        !r.reduced.has_quasi_reflections(),
        "{action}: {}",
        r.reduced
    );
    assert_eq!(
        reduce_quasi_reflections(&r.reduced).reduced,
        r.reduced,
        "{action}"
    );
    let k = action.order();
    for (j, (&mj, &lam)) in r
        .quasi_reflection_generators
        .iter()
        .zip(&r.lambdas)
        .enumerate()
    {
        assert_eq!(mj * lam, k);
        // m_j is the least power fixing every other coordinate
        let fixes_others = |p: u32| {
            action
                .exponents()
                .iter()
                .enumerate()
                .all(|(i, &a)| i == j || (p as u64 * a as u64).is_multiple_of(k as u64))
        };
        assert!(fixes_others(mj));
        assert!((1..mj).all(|p| !fixes_others(p)));
        // eigenvalue of the reduced generator on y_j is exp(2 pi i lambda_j a_j / k)
        let expected = RootOfUnity::new(lam as i64 * action.exponents()[j] as i64, k).unwrap();
        assert_eq!(r.reduced.eigenvalues()[j], expected);
    }
    if !action.has_quasi_reflections() {
        assert_eq!(&r.reduced, action);
        assert!(r.lambdas.iter().all(|&l| l == 1));
    }
}

pub fn check_age_pairing(action: &CyclicAction) {
    let k = action.order();
    for l in 1..k {
        let moved = action.moved_coordinates(l) as u64;
        assert_eq!(
            action.scaled_age(l) + action.scaled_age(k - l),
            moved * k as u64
        );
    }
}

pub fn check_age_pairing_exact(action: &CyclicAction) {
    let k = action.order();
    for l in 1..k {
        let moved = action.moved_coordinates(l) as i64;
        assert_eq!(
            action.age(l).unwrap() + action.age(k - l).unwrap(),
            qi(moved)
        );
    }
}

pub fn check_lifting_without_vanishing(action: &CyclicAction) {
    let reduced = reduce_quasi_reflections(action).reduced;
    let k = reduced.order() as u64;
    let all_big = (1..reduced.order()).all(|l| reduced.scaled_age(l) >= k);
    for m in [1, 2, 3, 7] {
        let q = LiftingQuery::new(reduced.clone(), m, vec![0; reduced.dim()]).unwrap();
        assert_eq!(lifts(&q).unwrap(), all_big, "{reduced} m = {m}");
    }
}

/// Every faithful multiset with `d <= 3` and `k <= 60`, `d <= 4` and
/// `k <= 30`, `d <= 6` and `k <= 12`.
pub fn grid() -> Vec<(u32, usize)> {
    let mut cells = Vec::new();
    for k in 1..=60u32 {
        let max_d = if k <= 12 {
            6
        } else if k <= 30 {
            4
        } else {
            3
        };
        for d in 1..=max_d {
            cells.push((k, d));
        }
    }
    cells
}

pub fn run_reid_tai_grid() -> usize {
    grid()
        .into_par_iter()
        .map(|(k, d)| {
            let actions = faithful_multisets(k, d);
            for a in &actions {
                check_reduction(a);
                check_age_pairing(a);
                check_lifting_without_vanishing(a);
            }
            actions.len()
        })
        .sum()
}

pub fn random_action() -> impl Strategy<Value = CyclicAction> {
    (1u32..=60, 1usize..=6).prop_flat_map(|(k, d)| {
        prop::collection::vec(0..k, d)
            .prop_filter_map("faithful", move |e| CyclicAction::new(k, e).ok())
    })
}

pub fn check_random_action(action: &CyclicAction) {
    check_reduction(action);
    check_age_pairing_exact(action);
    check_lifting_without_vanishing(action);
}
