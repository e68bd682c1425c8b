use num_rational::Rational64;
use proptest::prelude::*;
use smtc::algebra::Invariants;
use smtc::indicators::{
    self, anomaly_class, assemble_epin, class_a_theta, class_c_theta, gaplessness_check, hall_conductance,
    indicator_epin, indicator_epin_with_phase, indicator_pin_plus, partition_cp2, partition_s2s2, partition_s4,
    tenfold_report, Classification, HallClass, IndicatorError, IndicatorResult, Nu, TenfoldClass,
};
use smtc::symmetry::LieSector;
use smtc::{catalog, cis, Category, SymmetryAction, C64};
use std::f64::consts::PI;

const TOL: f64 = 1e-9;
const I: C64 = C64::new(0.0, 1.0);

fn q(v: &[(i64, i64)]) -> Vec<Rational64> {
    v.iter().map(|&(p, d)| Rational64::new(p, d)).collect()
}

/// S-matrix of an abelian theory from its fusion table and given twists.
fn abelian_s(c: &Category, theta: &[C64]) -> Vec<Vec<C64>> {
    let n = c.rank();
    let d_total = (n as f64).sqrt();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let abar = c.dual_of(a);
                    let x = c.fusion().product(abar, b).unwrap();
                    theta[x] / (theta[abar] * theta[b]) / d_total
                })
                .collect()
        })
        .collect()
}

fn s2s2_oracle(c: &Category, theta: &[C64], q: &[Rational64]) -> C64 {
    let n = c.rank();
    let s = abelian_s(c, theta);
    let phase = |a: usize| cis(4.0 * PI * (*q[a].numer() as f64) / (*q[a].denom() as f64));
    let mut sum = C64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            sum += s[a][b] * phase(a) * phase(b);
        }
    }
    sum / (2.0 * (n as f64).sqrt())
}

fn u1_charged(act: SymmetryAction) -> SymmetryAction {
    act.with_group_lie(LieSector::U1).with_charges(q(&[(0, 1), (1, 2)]))
}

fn sf_theta() -> Vec<C64> {
    vec![C64::new(1.0, 0.0), I, C64::new(-1.0, 0.0), -I]
}

#[test]
fn pin_plus_values() {
    for (name, nu) in [("semion_fermion", 2), ("so3_3", 3)] {
        let (c, act) = catalog::action(name, "z2t").unwrap();
        let r = indicator_pin_plus(&c, &act, TOL).unwrap();
        assert_eq!(r.classification, Classification::Z16PinPlus);
        assert_eq!(r.nu, Some(Nu::Class(nu)), "{name}");
        assert!((r.value - cis(2.0 * PI * nu as f64 / 16.0)).norm() < 1e-8);
        assert_eq!(r.shadows.len(), 2);
    }
    let (c, act) = catalog::trivial_z2tf();
    let r = indicator_pin_plus(&c, &act, TOL).unwrap();
    assert!((r.value - 1.0).norm() < 1e-8);
    assert_eq!(r.nu, Some(Nu::Class(0)));
}

#[test]
fn epin_values() {
    for (name, want, nu) in [("u1_5", C64::new(1.0, 0.0), 0), ("semion_fermion", C64::new(-1.0, 0.0), 2), ("so3_3", -I, 3)] {
        let (c, act) = catalog::action(name, "z4t").unwrap();
        let r = indicator_epin(&c, &act, TOL).unwrap();
        assert_eq!(r.classification, Classification::Z4Epin);
        assert!((r.value - want).norm() < 1e-8, "{name}: {}", r.value);
        assert_eq!(r.nu, Some(Nu::Class(nu)));
    }
}

#[test]
fn pin_plus_rejects_z4_actions() {
    let (c, act) = catalog::u15_z4();
    assert!(matches!(
        indicator_pin_plus(&c, &act, TOL),
        Err(indicators::IndicatorError::WrongSymmetry(_))
    ));
}

#[test]
fn epin_shadows_and_conjugation() {
    for name in ["u1_5", "semion_fermion", "so3_3"] {
        let (c, act) = catalog::action(name, "z4t").unwrap();
        let r = indicator_epin(&c, &act, TOL).unwrap();
        let z: [C64; 4] = r.shadows.clone().try_into().unwrap();
        assert_eq!(assemble_epin(&z, I), r.value);
        let by_hand = (z[0] - z[1] + I * z[2] + I * z[3]) * 0.5;
        assert!((by_hand - r.value).norm() < 1e-15);
        let alt = indicator_epin_with_phase(&c, &act, -I, TOL).unwrap();
        assert!((alt.value - r.value.conj()).norm() < 1e-8, "{name}");
    }
}

#[test]
fn epin_agrees_with_pin_plus_mod_4() {
    for name in ["semion_fermion", "so3_3"] {
        let (c2, a2) = catalog::action(name, "z2t").unwrap();
        let (c4, a4) = catalog::action(name, "z4t").unwrap();
        let Some(Nu::Class(p)) = indicator_pin_plus(&c2, &a2, TOL).unwrap().nu else { panic!() };
        let Some(Nu::Class(e)) = indicator_epin(&c4, &a4, TOL).unwrap().nu else { panic!() };
        assert_eq!(p % 4, e, "{name}");
    }
}

#[test]
fn cp2_examples() {
    let t = catalog::trivial();
    assert!((partition_cp2(&t, &q(&[(0, 1), (1, 2)])).unwrap() - 1.0).norm() < TOL);

    let sf = catalog::semion_fermion();
    let charges = q(&[(0, 1), (0, 1), (1, 2), (1, 2)]);
    let theta = sf_theta();
    let oracle: C64 = (0..4)
        .map(|a| theta[a] * cis(2.0 * PI * (*charges[a].numer() as f64) / (*charges[a].denom() as f64)))
        .sum::<C64>()
        / (2f64.sqrt() * 2.0);
    assert!((oracle - cis(PI / 4.0)).norm() < TOL);
    assert!((partition_cp2(&sf, &charges).unwrap() - oracle).norm() < TOL);
}

#[test]
fn so3_3_has_no_so3_charge_table() {
    assert!(indicators::charge_tables(&catalog::so33(), LieSector::SO3, 2).is_empty());
}

#[test]
fn s2s2_examples() {
    let t = catalog::trivial();
    assert!((partition_s2s2(&t, &q(&[(0, 1), (1, 2)])).unwrap() - 1.0).norm() < TOL);

    for name in catalog::CATEGORY_NAMES {
        let c = catalog::category(name).unwrap();
        let inv = Invariants::compute(&c).unwrap();
        let zeros = vec![Rational64::from_integer(0); c.rank()];
        let mut sum = C64::new(0.0, 0.0);
        for a in 0..c.rank() {
            for b in 0..c.rank() {
                sum += inv.s[(a, b)] * inv.d[a] * inv.d[b];
            }
        }
        let want = sum / (2.0 * inv.total_dim);
        assert!((indicators::partition_s2s2_with(&inv, &zeros) - want).norm() < TOL, "{name}");
    }

    let u = catalog::u1k(5);
    let theta: Vec<C64> = (0..10).map(|a| cis(PI * (a * a) as f64 / 5.0)).collect();
    let charges = catalog::u15_charges();
    let oracle = s2s2_oracle(&u, &theta, &charges);
    assert!((partition_s2s2(&u, &charges).unwrap() - oracle).norm() < TOL);
}

#[test]
fn s4_is_one() {
    for _ in 0..3 {
        assert_eq!(partition_s4(), C64::new(1.0, 0.0));
    }
}

#[test]
fn class_a_examples() {
    let t = catalog::trivial();
    let theta = class_a_theta(&t, &q(&[(0, 1), (1, 2)])).unwrap();
    assert!(theta.0.abs() < TOL && theta.1.abs() < TOL);
    let hall = hall_conductance(theta, HallClass::A).unwrap();
    assert_eq!((hall.kappa, hall.sigma_h, hall.modulus), (0.into(), 0.into(), 1));

    let sf = catalog::semion_fermion();
    let charges = q(&[(0, 1), (0, 1), (1, 2), (1, 2)]);
    let (t1, t2) = class_a_theta(&sf, &charges).unwrap();
    assert!((t2 - PI / 4.0).abs() < TOL);
    assert!((cis(t2) - partition_cp2(&sf, &charges).unwrap()).norm() < TOL);

    let s2s2 = s2s2_oracle(&sf, &sf_theta(), &charges);
    let t1_oracle = (s2s2 / cis(PI / 4.0).powu(8)).arg().rem_euclid(2.0 * PI);
    assert!((t1 - t1_oracle).abs() < TOL);
    let hall = hall_conductance((t1, t2), HallClass::A).unwrap();
    let sigma = ((8.0 * PI / 4.0 + t1_oracle) / (2.0 * PI)).rem_euclid(1.0);
    assert!((*hall.sigma_h.numer() as f64 / *hall.sigma_h.denom() as f64 - sigma).abs() < 1e-6);
}

#[test]
fn class_c_examples() {
    let t = catalog::trivial();
    let theta = class_c_theta(&t, &q(&[(0, 1), (1, 2)])).unwrap();
    assert!(theta.0.abs() < TOL && theta.1.abs() < TOL);

    let (c, act) = catalog::toric_code_fermion_ci();
    let charges = act.charges().unwrap();
    let (t1, t2) = class_c_theta(&c, charges).unwrap();
    let z = partition_cp2(&c, charges).unwrap();
    assert!((z.norm() - 1.0).abs() < 1e-9);
    assert!((cis(t2) - z).norm() < TOL);
    assert!((cis(t1) - cis(-4.0 * z.arg())).norm() < TOL);
}

#[test]
fn tenfold_examples() {
    let (c, act) = catalog::trivial_z2tf();
    let act = u1_charged(act);
    let aii = tenfold_report(&c, &act, TenfoldClass::AII, TOL).unwrap();
    let names: Vec<&str> = aii.iter().map(|r| r.manifold.as_str()).collect();
    assert_eq!(names, ["RP4", "CP2", "S2xS2"]);
    for r in &aii {
        assert!((r.value - 1.0).norm() < 1e-8 || (r.value + 1.0).norm() < 1e-8);
        assert_eq!(r.classification, Classification::Z2Cubed);
    }
    let aiii = tenfold_report(&c, &act, TenfoldClass::AIII, TOL).unwrap();
    assert_eq!(aiii[0].order, Some(8));

    let (c, act) = catalog::trivial_ci();
    let cii = tenfold_report(&c, &act, TenfoldClass::CII, TOL).unwrap();
    let s4 = cii.iter().find(|r| r.manifold == "S4").unwrap();
    assert_eq!(s4.value, C64::new(1.0, 0.0));
    assert!(gaplessness_check(&cii, TenfoldClass::CII, TOL).is_empty());

    for (c, act) in [catalog::trivial_ci(), catalog::toric_code_fermion_ci()] {
        let ci = tenfold_report(&c, &act, TenfoldClass::CI, TOL).unwrap();
        let i1 = ci[0].value;
        assert!((i1 - 1.0).norm() < 1e-8 || (i1 + 1.0).norm() < 1e-8, "{}", c.name());
        assert!(gaplessness_check(&ci, TenfoldClass::CI, TOL).is_empty());
    }
}

#[test]
fn tenfold_needs_matching_data() {
    let (c, act) = catalog::so33_z2();
    assert!(tenfold_report(&c, &act, TenfoldClass::CI, TOL).is_err());
    let (c, act) = catalog::trivial_ci();
    assert!(tenfold_report(&c, &act, TenfoldClass::AII, TOL).is_err());
}

#[test]
fn anomaly_class_examples() {
    assert_eq!(anomaly_class(C64::new(1.0, 0.0), 4).unwrap(), 0);
    assert_eq!(anomaly_class(-I, 4).unwrap(), 3);
    assert_eq!(anomaly_class(cis(2.0 * PI * 2.0 / 16.0), 16).unwrap(), 2);
    assert!(anomaly_class(cis(0.1), 4).is_err());
}

#[test]
fn gaplessness_flags() {
    let synthetic = |manifold: &str, value: C64| IndicatorResult {
        manifold: manifold.into(),
        value,
        classification: Classification::Z4xZ2,
        order: Some(4),
        nu: None,
        shadows: Vec::new(),
    };
    assert!(gaplessness_check(&[synthetic("RP4", C64::new(-1.0, 0.0))], TenfoldClass::CI, TOL).is_empty());
    assert_eq!(gaplessness_check(&[synthetic("RP4", I)], TenfoldClass::CI, TOL).len(), 1);
    assert!(gaplessness_check(&[synthetic("S4", C64::new(1.0, 0.0))], TenfoldClass::CII, TOL).is_empty());
    assert_eq!(gaplessness_check(&[synthetic("S4", C64::new(-1.0, 0.0))], TenfoldClass::CII, TOL).len(), 1);
}

fn super_mtcs() -> Vec<Category> {
    catalog::CATEGORY_NAMES
        .iter()
        .map(|n| catalog::category(n).unwrap())
        .filter(|c| c.fermion().is_some() && smtc::algebra::muger_center(c, TOL).unwrap().len() == 2)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_c_hall_conductance_is_even(ci in 0usize..64, ti in 0usize..1024) {
        let cats = super_mtcs();
        let c = &cats[ci % cats.len()];
        let tables = indicators::charge_tables(c, LieSector::SO3, 2);
        prop_assume!(!tables.is_empty());
        let q = &tables[ti % tables.len()];
        let hall = hall_conductance(class_c_theta(c, q).unwrap(), HallClass::C).unwrap();
        prop_assert_eq!(hall.modulus, 2);
        prop_assert!((hall.sigma_h / 2).is_integer());
    }

    #[test]
    fn charge_tables_are_additive(ci in 0usize..64, ti in 0usize..1024) {
        let cats = super_mtcs();
        let c = &cats[ci % cats.len()];
        let tables = indicators::charge_tables(c, LieSector::U1, 4);
        prop_assume!(!tables.is_empty());
        let q = &tables[ti % tables.len()];
        prop_assert_eq!(q[c.fermion().unwrap()], Rational64::new(1, 2));
        for a in 0..c.rank() {
            for b in 0..c.rank() {
                for (x, _) in c.fusion_outcomes(a, b) {
                    let diff = q[a] + q[b] - q[x];
                    prop_assert!(diff.is_integer());
                }
            }
        }
    }

    #[test]
    fn cp2_has_unit_modulus(ci in 0usize..64, ti in 0usize..1024) {
        let cats = super_mtcs();
        let c = &cats[ci % cats.len()];
        let tables = indicators::charge_tables(c, LieSector::U1, 4);
        prop_assume!(!tables.is_empty());
        let z = partition_cp2(c, &tables[ti % tables.len()]).unwrap();
        prop_assert!((z.norm() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn non_additive_charges_are_rejected() {
    let sf = catalog::semion_fermion();
    let bad = q(&[(0, 1), (1, 4), (1, 2), (3, 4)]);
    assert!(matches!(class_a_theta(&sf, &bad), Err(IndicatorError::InvalidCharges(_))));
    assert!(matches!(partition_cp2(&sf, &bad[..3]), Err(IndicatorError::InvalidCharges(_))));
    let t = catalog::trivial();
    assert!(matches!(class_c_theta(&t, &q(&[(0, 1), (0, 1)])), Err(IndicatorError::InvalidCharges(_))));
}
