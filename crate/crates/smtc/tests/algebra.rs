use num_rational::Rational64;
use proptest::prelude::*;
use smtc::algebra::{self, Invariants};
use smtc::{catalog, cis, Category, C64};
use std::f64::consts::PI;

const TOL: f64 = 1e-9;

fn idx(c: &Category, name: &str) -> usize {
    c.index_of(name).unwrap()
}

fn is_super_modular(c: &Category) -> bool {
    c.fermion().is_some() && algebra::muger_center(c, TOL).unwrap().len() == 2
}

#[test]
fn quantum_dimensions() {
    let d = algebra::quantum_dimension(&catalog::u1k(5)).unwrap();
    assert!(d.iter().all(|x| (x - 1.0).abs() < TOL));

    let so = catalog::so33();
    let d = algebra::quantum_dimension(&so).unwrap();
    let golden = 1.0 + 2f64.sqrt();
    assert!((d[idx(&so, "s")] - golden).abs() < TOL);
    assert!((d[idx(&so, "st")] - golden).abs() < TOL);

    let d = algebra::quantum_dimension(&catalog::trivial()).unwrap();
    assert_eq!(d.len(), 2);
    assert!(d.iter().all(|x| (x - 1.0).abs() < TOL));
}

#[test]
fn total_dimensions() {
    let so = algebra::total_dimension(&catalog::so33()).unwrap();
    assert!((so * so - (8.0 + 4.0 * 2f64.sqrt())).abs() < TOL);
    let t = algebra::total_dimension(&catalog::trivial()).unwrap();
    assert!((t - 2f64.sqrt()).abs() < TOL);
    let u = algebra::total_dimension(&catalog::u1k(5)).unwrap();
    assert!((u - 10f64.sqrt()).abs() < TOL);
}

#[test]
fn twists() {
    let i = C64::new(0.0, 1.0);
    let so = catalog::so33();
    for (name, want) in [("1", C64::new(1.0, 0.0)), ("s", i), ("st", -i), ("psi", C64::new(-1.0, 0.0))] {
        let got = algebra::topological_twist(&so, idx(&so, name)).unwrap();
        assert!((got - want).norm() < TOL, "{name}: {got}");
    }
    let sf = catalog::semion_fermion();
    let s = idx(&sf, "s");
    assert!((sf.r(s, s, 0) - i).norm() < TOL);
    assert!((algebra::topological_twist(&sf, s).unwrap() - i).norm() < TOL);
    for name in catalog::CATEGORY_NAMES {
        let c = catalog::category(name).unwrap();
        assert!((algebra::topological_twist(&c, 0).unwrap() - 1.0).norm() < TOL);
    }
}

#[test]
fn s_matrix_of_trivial_theory() {
    let s = algebra::s_matrix(&catalog::trivial()).unwrap();
    let h = 1.0 / 2f64.sqrt();
    for a in 0..2 {
        for b in 0..2 {
            assert!((s[(a, b)] - h).norm() < TOL);
        }
    }
}

#[test]
fn s_matrix_of_u1_5_matches_direct_sum() {
    let c = catalog::u1k(5);
    let s = algebra::s_matrix(&c).unwrap();
    let theta = |x: usize| cis(PI * ((x % 10) * (x % 10)) as f64 / 5.0);
    for a in 0..10 {
        for b in 0..10 {
            let abar = (10 - a) % 10;
            let fused = (abar + b) % 10;
            let want = theta(fused) / (theta(abar) * theta(b)) / 10f64.sqrt();
            assert!((s[(a, b)] - want).norm() < TOL, "S[{a}][{b}]");
        }
    }
}

#[test]
fn s_matrix_unit_row_of_so3_3() {
    let c = catalog::so33();
    let s = algebra::s_matrix(&c).unwrap();
    let g = 1.0 + 2f64.sqrt();
    let d_total = (8.0 + 4.0 * 2f64.sqrt()).sqrt();
    for (name, d) in [("1", 1.0), ("s", g), ("psi", 1.0), ("st", g)] {
        assert!((s[(0, idx(&c, name))] - d / d_total).norm() < TOL);
    }
}

#[test]
fn monodromy_examples() {
    let t = catalog::trivial();
    assert!((algebra::monodromy(&t, 1, 1).unwrap() - 1.0).norm() < TOL);
    for name in catalog::CATEGORY_NAMES {
        let c = catalog::category(name).unwrap();
        for b in 0..c.rank() {
            assert!((algebra::monodromy(&c, 0, b).unwrap() - 1.0).norm() < TOL);
        }
    }
    let u20 = catalog::category("u1_20").unwrap();
    let theta = |x: usize| cis(PI * (x * x) as f64 / 20.0);
    let oracle = theta(11) / (theta(1) * theta(10));
    assert!((oracle + 1.0).norm() < TOL);
    let got = algebra::monodromy(&u20, idx(&u20, "1"), idx(&u20, "10")).unwrap();
    assert!((got - oracle).norm() < TOL);
}

#[test]
fn muger_centers() {
    let sf = catalog::semion_fermion();
    assert_eq!(algebra::muger_center(&sf, TOL).unwrap(), vec![0, idx(&sf, "psi")]);
    assert_eq!(algebra::muger_center(&catalog::zested_b(), TOL).unwrap(), vec![0]);
    assert_eq!(algebra::muger_center(&catalog::trivial(), TOL).unwrap(), vec![0, 1]);
}

#[test]
fn super_modularity() {
    let t = algebra::check_super_modular(&catalog::trivial(), TOL).unwrap();
    assert!(t.report.passed());
    assert_eq!(t.s_tilde.rows(), 1);
    assert!((t.s_tilde[(0, 0)] - 1.0).norm() < TOL);

    let u = algebra::check_super_modular(&catalog::u1k(5), TOL).unwrap();
    assert!(u.report.passed());
    assert_eq!(u.s_tilde.rows(), 5);
    let m = &u.s_tilde;
    for i in 0..5 {
        for j in 0..5 {
            let dot: C64 = (0..5).map(|k| m[(i, k)] * m[(j, k)].conj()).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((dot - want).norm() < TOL);
        }
    }
    assert!(algebra::check_super_modular(&catalog::so33(), TOL).unwrap().report.passed());
}

#[test]
fn central_charges() {
    let cases = [("u1_20", Rational64::from_integer(1)), ("su2_6", Rational64::new(9, 4)), ("zested_b", Rational64::from_integer(0))];
    for (name, want) in cases {
        let c = catalog::category(name).unwrap();
        assert_eq!(algebra::central_charge(&c, TOL).unwrap(), want, "{name}");
    }
    assert!(algebra::central_charge(&catalog::so33(), TOL).is_err());
}

#[test]
fn naive_gauss_sum_vanishes_on_super_mtcs() {
    for name in catalog::CATEGORY_NAMES {
        let c = catalog::category(name).unwrap();
        if !is_super_modular(&c) {
            continue;
        }
        let inv = Invariants::compute(&c).unwrap();
        let sum: C64 = (0..c.rank()).map(|a| inv.theta[a] * inv.d[a] * inv.d[a]).sum();
        assert!(sum.norm() < TOL, "{name}");
    }
}

fn categories() -> impl Strategy<Value = Category> {
    (0..catalog::CATEGORY_NAMES.len()).prop_map(|i| catalog::category(catalog::CATEGORY_NAMES[i]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derived_invariants_are_consistent(c in categories()) {
        let inv = Invariants::compute(&c).unwrap();
        let n = c.rank();
        let d2: f64 = inv.d.iter().map(|d| d * d).sum();
        prop_assert!((inv.total_dim.powi(2) - d2).abs() < TOL);
        for a in 0..n {
            prop_assert!((inv.theta[a].norm() - 1.0).abs() < TOL);
            prop_assert!((inv.s[(0, a)] - inv.d[a] / inv.total_dim).norm() < TOL);
            for b in 0..n {
                prop_assert!((inv.s[(a, b)] - inv.s[(b, a)]).norm() < TOL);
                let fused: f64 = c.fusion_outcomes(a, b).iter().map(|&(x, m)| m as f64 * inv.d[x]).sum();
                prop_assert!((inv.d[a] * inv.d[b] - fused).abs() < TOL);
            }
        }
    }

    #[test]
    fn fermion_flips_twists(c in categories()) {
        prop_assume!(is_super_modular(&c));
        let inv = Invariants::compute(&c).unwrap();
        for a in 0..c.rank() {
            let ap = c.times_fermion(a).unwrap();
            prop_assert!((inv.theta[ap] + inv.theta[a]).norm() < TOL);
        }
    }
}
