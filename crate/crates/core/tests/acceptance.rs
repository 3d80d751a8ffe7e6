//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use mbar_core::bigness::{certify, difference_class_with, sweep, Verdict};
use mbar_core::intersection::{gamma_dot, gamma_dot_coarse, rigid_component};
use mbar_core::picard::{
    all_generators, canonical_class, canonical_class_sym, coarse_boundary_class, delta_total,
    kappa1, kappa1_sym, psi_class, CoarseDivisor,
};
use mbar_core::pullback::{
    BruteForceAveraging, ClosedFormAveraging, FarkasAveraging, FarkasSpec, HypergeometricAveraging,
};
use mbar_core::rational::{binomial, q, qi};
use mbar_core::reid_tai::{
    classify, classify_elliptic_tail, lifting_report, reduce_quasi_reflections, CyclicAction,
    LiftingQuery, TailVerdict,
};
use mbar_core::{BasisElement, DivisorClass, Subset, SymBasis, SymDivisorClass, Q};
use proptest::strategy::Strategy;
use proptest::strategy::ValueTree;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn tail_generator(n: u32) -> BasisElement {
    BasisElement::delta(1, Subset::EMPTY, idx(3, n)).unwrap()
}

fn canonical_class_criterion() -> Outcome {
    for n in 1..=10 {
        let index = idx(3, n);
        // 13 lambda + sum psi_j - 2 delta - delta_{1,{}}, term by term
        let mut expected = DivisorClass::zero(index).unwrap();
        for elem in all_generators(index).unwrap() {
            let c = match elem {
                BasisElement::Lambda => qi(13),
                BasisElement::Psi(_) => qi(1),
                BasisElement::DeltaIrr => qi(-2),
                e if e == tail_generator(n) => qi(-3),
                _ => qi(-2),
            };
            expected.add_term(elem, &c).unwrap();
        }
        let k = canonical_class(3, n).unwrap();
        ensure(k == expected, || format!("n = {n}: {k} != {expected}"))?;

        let mut via_kappa = kappa1(3, n).unwrap().scaled(&q(13, 12));
        for j in 1..=n {
            via_kappa
                .add_scaled(&psi_class(j, index).unwrap(), &q(-1, 12))
                .unwrap();
        }
        via_kappa
            .add_scaled(&delta_total(index).unwrap(), &q(-11, 12))
            .unwrap();
        via_kappa.add_term(tail_generator(n), &qi(-1)).unwrap();
        ensure(k == via_kappa, || format!("n = {n}: kappa form differs"))?;
    }
    Ok("n = 1..10, both bases".into())
}

/// Beyond this the full basis has millions of generators; the symmetric
/// basis covers the rest of the range.
const FULL_BASIS_LIMIT: u32 = 12;

fn intersection_criterion() -> Outcome {
    let mut checks = 0;
    for n in 1..=50u32 {
        let index = idx(3, n);
        let eq = |a: Q, b: Q, what: &str| {
            ensure(a == b, || format!("n = {n}: {what} = {a}, expected {b}"))
        };
        eq(
            gamma_dot(&kappa1_sym(3, n).unwrap()).unwrap(),
            q(1, 12),
            "gamma.kappa1",
        )?;
        let irr = SymDivisorClass::from_terms(index, [(SymBasis::DeltaIrr, qi(1))]).unwrap();
        eq(gamma_dot(&irr).unwrap(), qi(1), "gamma.delta_irr")?;
        let tail = SymDivisorClass::from_terms(index, [(SymBasis::delta(1, 0), qi(1))]).unwrap();
        eq(gamma_dot(&tail).unwrap(), q(-1, 12), "gamma.delta_1_{}")?;
        let psi = SymDivisorClass::from_terms(index, [(SymBasis::Psi, qi(1))]).unwrap();
        eq(gamma_dot(&psi).unwrap(), qi(0), "gamma.psi")?;
        eq(
            gamma_dot_coarse(CoarseDivisor::elliptic_tail(), index).unwrap(),
            q(-1, 6),
            "gamma.Delta_1_{}",
        )?;
        let full_k = (n <= FULL_BASIS_LIMIT).then(|| canonical_class(3, n).unwrap());
        if n <= FULL_BASIS_LIMIT {
            eq(
                gamma_dot(&kappa1(3, n).unwrap()).unwrap(),
                q(1, 12),
                "gamma.kappa1 (full)",
            )?;
            for j in 1..=n {
                eq(
                    gamma_dot(&psi_class(j, index).unwrap()).unwrap(),
                    qi(0),
                    "gamma.psi_j",
                )?;
            }
            let coarse = coarse_boundary_class(CoarseDivisor::elliptic_tail(), index).unwrap();
            eq(
                gamma_dot(&coarse).unwrap(),
                q(-1, 6),
                "gamma.[Delta_1_{}] (full)",
            )?;
        }
        for m in 1..=5i64 {
            let mk = canonical_class_sym(3, n).unwrap().scaled(&qi(m));
            eq(gamma_dot(&mk).unwrap(), q(-2 * m, 3), "gamma.mK")?;
            let rigid = rigid_component(&mk, CoarseDivisor::elliptic_tail()).unwrap();
            ensure(rigid == Some(qi(4 * m)), || {
                format!("n = {n}, m = {m}: rigid component {rigid:?}")
            })?;
            if let Some(k) = &full_k {
                eq(
                    gamma_dot(&k.scaled(&qi(m))).unwrap(),
                    q(-2 * m, 3),
                    "gamma.mK (full)",
                )?;
            }
            checks += 1;
        }
    }
    Ok(format!(
        "n = 1..50, m = 1..5 ({checks} (n, m) pairs, full basis for n <= {FULL_BASIS_LIMIT})"
    ))
}

fn bigness_criterion() -> Outcome {
    let c14 = certify(14).map_err(|e| e.to_string())?;
    let v = c14.violated.clone();
    ensure(
        c14.verdict == Verdict::Fail
            && v.as_ref()
                .is_some_and(|v| v.constraint == "delta_irr" && v.value == q(-1, 36)),
        || format!("n = 14: {:?} {:?}", c14.verdict, v),
    )?;
    let c15 = certify(15).map_err(|e| e.to_string())?;
    ensure(
        c15.coefficients.get("delta_irr") == Some(&q(5, 504)),
        || "n = 15 margin".into(),
    )?;
    ensure(c15.epsilon_max == Some(q(5, 1512)), || {
        format!("n = 15 epsilon {:?}", c15.epsilon_max)
    })?;
    let certs = sweep(15, 200).map_err(|e| e.to_string())?;
    for c in &certs {
        ensure(c.passed(), || {
            format!("n = {} fails: {:?}", c.n, c.violated)
        })?;
        let e = c.epsilon_max.clone().unwrap();
        ensure(c.big_part.get("lambda") == Some(&(qi(8) * &e)), || {
            format!("n = {}: lambda part", c.n)
        })?;
        ensure(
            c.big_part.get("psi") == Some(&(qi(56) * &e / qi(c.n as i64))),
            || format!("n = {}: psi part", c.n),
        )?;
    }
    Ok(format!(
        "fail at 14 (delta_irr = -1/36), pass 15..200 ({} certificates), margin(15) = 5/504, epsilon_max(15) = 5/1512",
        certs.len()
    ))
}

fn families_match(n: u32, known: &SymDivisorClass, s: &Q, t: &Q) -> Result<(), String> {
    let nn = n as i64;
    let hand_t = q(nn, 56);
    let hand_s = (qi(13) + qi(73) * &hand_t) / qi(9);
    ensure(s == &hand_s && t == &hand_t, || {
        format!("n = {n}: s = {s}, t = {t}")
    })?;
    let checks = [
        (SymBasis::DeltaIrr, s - qi(6) * t - qi(2)),
        (SymBasis::delta(1, 0), qi(3) * s - qi(3)),
        (SymBasis::delta(0, 2), qi(182) * t / qi(nn * (nn - 1))),
    ];
    for (ty, expected) in checks {
        ensure(known.coeff(&ty) == expected, || {
            format!("n = {n}: {ty} = {}", known.coeff(&ty))
        })?;
    }
    for k in 3..=n {
        let ty = SymBasis::delta(0, k);
        ensure(known.coeff(&ty) == qi(k as i64 - 2), || {
            format!("n = {n}: {ty}")
        })?;
    }
    ensure(
        known.coeff(&SymBasis::Lambda) == qi(0) && known.coeff(&SymBasis::Psi) == qi(0),
        || format!("n = {n}: lambda/psi survive"),
    )
}

fn difference_criterion() -> Outcome {
    for n in [15, 16, 20, 56] {
        let d = difference_class_with(n, &HypergeometricAveraging).map_err(|e| e.to_string())?;
        families_match(n, &d.known, &d.s, &d.t)?;
    }
    for n in [15, 16] {
        let d = difference_class_with(n, &BruteForceAveraging).map_err(|e| e.to_string())?;
        families_match(n, &d.known, &d.s, &d.t)?;
    }
    Ok("n in {15, 16, 20, 56} by exact averaging; n in {15, 16} also by subset enumeration".into())
}

fn symmetric_oracle_criterion() -> Outcome {
    let mut counts = Vec::new();
    for n in [14u32, 15, 16] {
        let closed = ClosedFormAveraging
            .average(FarkasSpec::GENUS_THREE, n)
            .map_err(|e| e.to_string())?;
        let brute = BruteForceAveraging
            .average(FarkasSpec::GENUS_THREE, n)
            .map_err(|e| e.to_string())?;
        ensure(closed == brute, || {
            format!("n = {n}: closed form and subset average differ")
        })?;
        counts.push(binomial(n as u64, 14).to_string());
    }
    Ok(format!("n = 14, 15, 16 over {} subsets", counts.join(", ")))
}

fn reid_tai_criterion() -> Outcome {
    let act = |k: u32, a: &[u32]| CyclicAction::new(k, a.to_vec()).unwrap();
    // (+-i, -1, +-1, ...)
    for a in [
        &[1u32, 2][..],
        &[3, 2],
        &[1, 2, 0, 2],
        &[3, 2, 2, 2, 0],
        &[1, 2, 0, 0],
    ] {
        let action = act(4, a);
        ensure(action.is_canonical(), || {
            format!("{action} should be canonical")
        })?;
    }
    let case1 = act(6, &[1, 2, 0, 0]);
    let r = reduce_quasi_reflections(&case1);
    ensure(!case1.is_canonical(), || {
        "case 1 should be non-canonical".into()
    })?;
    ensure(r.reduced.junior_powers() == vec![(1, q(2, 3))], || {
        format!("case 1 junior {:?}", r.reduced.junior_powers())
    })?;
    for m in 1..=10 {
        let report =
            lifting_report(&LiftingQuery::new(r.reduced.clone(), m, vec![m, 0, 0, 0]).unwrap())
                .unwrap();
        ensure(report.lifts && report.tight_powers.contains(&1), || {
            format!("m = {m}: lifting fails")
        })?;
        ensure(report.checks[0].lhs == qi(m as i64), || {
            "equality at l = 1".into()
        })?;
    }
    let case2 = act(6, &[4, 2, 3, 0]);
    ensure(case2.is_canonical(), || "case 2 should be canonical".into())?;
    let signature = classify_elliptic_tail(&act(6, &[1, 2, 0, 0, 0]).eigenvalues()).unwrap();
    ensure(
        signature.j0_signature
            && matches!(signature.verdict, TailVerdict::LiftsGivenVanishing { .. }),
        || "j = 0 signature not flagged".into(),
    )?;
    Ok(classify(&act(6, &[1, 2, 0])).summary)
}

fn property_criterion() -> Outcome {
    let grid = run_reid_tai_grid();
    let mut runner = runner(10_000);
    let strategy = random_action();
    for _ in 0..10_000 {
        let action = strategy.new_tree(&mut runner).unwrap().current();
        check_random_action(&action);
    }
    let orders = check_order_independence();
    let omega = check_omega_consistency();
    let involution = check_canonical_involution();
    let sym = sym_class_strategy();
    for _ in 0..2_000 {
        check_round_trip(&sym.new_tree(&mut runner).unwrap().current());
    }
    Ok(format!(
        "{grid} grid actions + 10000 random actions, {orders} forgetting orders, {omega} omega checks, {involution} boundary pairs, 2000 round trips"
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("canonical class in both bases", canonical_class_criterion),
        (
            "elliptic-tail intersection numbers and rigid component",
            intersection_criterion,
        ),
        ("bigness threshold", bigness_criterion),
        (
            "difference class coefficient families",
            difference_criterion,
        ),
        (
            "closed-form average vs subset enumeration",
            symmetric_oracle_criterion,
        ),
        ("Reid-Tai examples", reid_tai_criterion),
        ("property suites", property_criterion),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS  {name} [exact] ({secs:.1}s) {detail}",
                i + 1
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "criterion {}: FAIL  {name} [exact] ({secs:.1}s) {why}",
                    i + 1
                );
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
