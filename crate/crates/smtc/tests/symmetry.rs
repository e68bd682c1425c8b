use proptest::prelude::*;
use smtc::algebra::Invariants;
use smtc::axioms::{check_hexagon, check_pentagon};
use smtc::indicators::indicator_epin;
use smtc::symmetry::{
    self, apply_action_gauge, apply_vertex_gauge, check_eta_cocycle, check_fermion_class, check_u_eta,
    check_ufur, random_gauge, GaugeTransform, SymmetryError,
};
use smtc::{catalog, Category, C64};

const TOL: f64 = 1e-9;
const T: usize = 1;

fn idx(c: &Category, name: &str) -> usize {
    c.index_of(name).unwrap()
}

fn all_pass(c: &Category, act: &smtc::SymmetryAction) -> bool {
    symmetry::check_all(c, act, TOL).iter().all(|r| r.passed())
}

#[test]
fn anyon_permutations() {
    let (_, act) = catalog::u15_z4();
    assert_eq!(act.act(T, 1), 3);
    for a in 0..10 {
        assert_eq!(act.act(0, a), a);
        assert_eq!(act.act(T, a), (3 * a) % 10);
    }
    let (c, act) = catalog::semion_fermion_z2();
    assert_eq!(act.act(T, idx(&c, "s")), idx(&c, "st"));
}

#[test]
fn permutations_compose() {
    for (cn, an) in catalog::ACTION_NAMES {
        let (c, act) = catalog::action(cn, an).unwrap();
        let g = act.group();
        for x in 0..g.order() {
            for y in 0..g.order() {
                for a in 0..c.rank() {
                    assert_eq!(act.act(x, act.act(y, a)), act.act(g.mul(x, y), a), "{cn}:{an}");
                }
            }
            if let Some(psi) = c.fermion() {
                assert_eq!(act.act(x, psi), psi);
            }
        }
    }
}

#[test]
fn ufur_examples() {
    let (c, act) = catalog::so33_z2();
    assert!(check_ufur(&c, &act, TOL).passed());
    let (c, act) = catalog::u15_z4();
    assert!(check_ufur(&c, &act, TOL).passed());

    let (c, mut act) = catalog::semion_fermion_z2();
    let (s, p, st) = (idx(&c, "s"), idx(&c, "psi"), idx(&c, "st"));
    assert!((act.u(T, p, s, st) + 1.0).norm() < TOL);
    act.set_u(T, p, s, st, C64::new(1.0, 0.0));
    assert!(!check_ufur(&c, &act, TOL).passed());
}

#[test]
fn u_eta_examples() {
    for (cn, an) in [("u1_5", "z4t"), ("semion_fermion", "z4t"), ("so3_3", "z4t")] {
        let (c, act) = catalog::action(cn, an).unwrap();
        assert!(check_u_eta(&c, &act, TOL).passed(), "{cn}");
    }
    let (c, act) = catalog::trivial_z2tf();
    assert!((act.eta(1, T, T) + 1.0).norm() < TOL);
    assert!(check_u_eta(&c, &act, TOL).passed());

    let (c, mut act) = catalog::semion_fermion_z2();
    let s = idx(&c, "s");
    assert!((act.eta(s, T, T) - C64::new(0.0, -1.0)).norm() < TOL);
    act.set_eta(s, T, T, C64::new(1.0, 0.0));
    assert!(!check_u_eta(&c, &act, TOL).passed());
}

#[test]
fn eta_cocycle_examples() {
    let (c, act) = catalog::u15_z4();
    assert!(check_eta_cocycle(&c, &act, TOL).passed());
    let (c, act) = catalog::semion_fermion_z4();
    assert!(check_eta_cocycle(&c, &act, TOL).passed());
}

#[test]
fn fermion_class_examples() {
    let (c, act) = catalog::trivial_z2tf();
    let fc = check_fermion_class(&c, &act, TOL).unwrap();
    assert!(fc.eta_psi_nontrivial && fc.omega_nontrivial && fc.report.passed());

    let (c, act) = catalog::u15_z4();
    let fc = check_fermion_class(&c, &act, TOL).unwrap();
    assert!(!fc.eta_psi_nontrivial && !fc.omega_nontrivial && fc.report.passed());

    let (c, mut act) = catalog::trivial_z2tf();
    act.set_eta(1, T, 0, C64::new(-1.0, 0.0));
    let broken = check_fermion_class(&c, &act, TOL);
    assert!(matches!(broken, Err(SymmetryError::NotCocycle(..))), "{broken:?}");
}

#[test]
fn every_bundled_action_is_consistent() {
    for (cn, an) in catalog::ACTION_NAMES {
        let (c, act) = catalog::action(cn, an).unwrap();
        for r in symmetry::check_all(&c, &act, TOL) {
            assert!(r.passed(), "{cn}:{an}: {r}");
        }
    }
}

#[test]
fn identity_gauges_change_nothing() {
    let (c, act) = catalog::so33_z4();
    let id = GaugeTransform::identity(c.rank(), act.group().order());
    let (c2, act2) = apply_vertex_gauge(&c, &act, &id);
    assert!(c2.approx_eq(&c, 1e-14));
    let act3 = apply_action_gauge(&c2, &act2, &id);
    for g in 0..4 {
        for [a, b, x] in c.r_channels() {
            assert!((act3.u(g, a, b, x) - act.u(g, a, b, x)).norm() < 1e-14);
        }
        for h in 0..4 {
            for a in 0..c.rank() {
                assert!((act3.eta(a, g, h) - act.eta(a, g, h)).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn single_vertex_phase_transforms_f_by_the_formula() {
    let (c, act) = catalog::semion_fermion_z2();
    let s = idx(&c, "s");
    let mut gauge = GaugeTransform::identity(c.rank(), 2);
    gauge.set_vertex(s, s, 0, C64::new(-1.0, 0.0));
    let (c2, _) = apply_vertex_gauge(&c, &act, &gauge);
    let gam = |a: usize, b: usize, x: usize| if (a, b, x) == (s, s, 0) { -1.0 } else { 1.0 };
    let mut flipped = 0;
    for [a, b, cc, d, e, f] in c.f_channels() {
        let factor = gam(a, b, e) * gam(e, cc, d) / (gam(b, cc, f) * gam(a, f, d));
        let want = c.f(a, b, cc, d, e, f) * factor;
        assert!((c2.f(a, b, cc, d, e, f) - want).norm() < TOL);
        if factor < 0.0 {
            flipped += 1;
        }
    }
    assert!(flipped > 0);
    assert!((c2.f(s, s, s, s, 0, 0) - c.f(s, s, s, s, 0, 0)).norm() < TOL);
}

#[test]
fn fermion_action_phase_cancels_in_eta() {
    let (c, act) = catalog::trivial_z2tf();
    let mut gauge = GaugeTransform::identity(c.rank(), 2);
    gauge.set_action(1, T, C64::new(-1.0, 0.0));
    let act2 = apply_action_gauge(&c, &act, &gauge);
    assert!((act2.eta(1, T, T) - act.eta(1, T, T)).norm() < TOL);
}

#[test]
fn random_gauges_are_seeded() {
    let (c, act) = catalog::so33_z4();
    assert_eq!(random_gauge(&c, &act, 0), random_gauge(&c, &act, 0));
    assert_ne!(random_gauge(&c, &act, 0), random_gauge(&c, &act, 1));
    let g = random_gauge(&c, &act, 7);
    assert!(g.max_phase_defect() < TOL);
    let (c2, _) = apply_vertex_gauge(&c, &act, &g);
    assert!(!c2.approx_eq(&c, 1e-6));
}

#[test]
fn action_gauge_on_u1_5_keeps_epin() {
    let (c, act) = catalog::u15_z4();
    let before = indicator_epin(&c, &act, TOL).unwrap().value;
    for seed in 0..10 {
        let g = random_gauge(&c, &act, seed);
        let act2 = apply_action_gauge(&c, &act, &g);
        assert!(all_pass(&c, &act2));
        let after = indicator_epin(&c, &act2, TOL).unwrap().value;
        assert!((after - before).norm() < 1e-8);
    }
}

#[test]
fn antiunitary_elements_conjugate_twists() {
    for (cn, an) in catalog::ACTION_NAMES {
        let (c, act) = catalog::action(cn, an).unwrap();
        let inv = Invariants::compute(&c).unwrap();
        let g = act.group();
        for x in 0..g.order() {
            for a in 0..c.rank() {
                let ta = act.act(x, a);
                assert!((inv.d[ta] - inv.d[a]).abs() < TOL);
                let want = if g.antiunitary(x) { inv.theta[a].conj() } else { inv.theta[a] };
                assert!((inv.theta[ta] - want).norm() < TOL, "{cn}:{an}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn checks_survive_gauges(ai in 0..catalog::ACTION_NAMES.len(), seed in any::<u64>()) {
        let (cn, an) = catalog::ACTION_NAMES[ai];
        let (c, act) = catalog::action(cn, an).unwrap();
        let gauge = random_gauge(&c, &act, seed);
        let (c2, act2) = apply_vertex_gauge(&c, &act, &gauge);
        let act2 = apply_action_gauge(&c2, &act2, &gauge);
        prop_assert!(check_pentagon(&c2, TOL).passed());
        prop_assert!(check_hexagon(&c2, TOL).passed());
        for r in symmetry::check_all(&c2, &act2, TOL) {
            prop_assert!(r.passed(), "{}:{} seed {}: {}", cn, an, seed, r);
        }
    }
}
