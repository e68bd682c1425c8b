use num_rational::Rational64;
use proptest::prelude::*;
use smtc::abelian::bases_with_orders;
use smtc::algebra;
use smtc::extension::{
    cascade_layer1, cascade_layer3, embed_check, extension_candidates, zest, zest_orbit, zest_to_central_charge, zmod,
    Grading,
};
use smtc::indicators::{indicator_epin, Nu};
use smtc::{catalog, cis, Category};
use std::f64::consts::PI;

const TOL: f64 = 1e-9;

fn idx(c: &Category, name: &str) -> usize {
    c.index_of(name).unwrap()
}

fn fixture(name: &str) -> catalog::ExtensionFixture {
    catalog::extension_fixtures().into_iter().find(|f| f.name == name).unwrap()
}

fn abelian_modular(c: &Category) -> bool {
    c.fusion().is_group_like() && algebra::muger_center(c, TOL).unwrap() == [0]
}

#[test]
fn zested_fusion_on_u1_20() {
    let u20 = catalog::category("u1_20").unwrap();
    let orbit = zest_orbit(&u20, TOL).unwrap();
    assert!(!orbit.is_empty());
    for z in &orbit {
        let f = z.category.fusion();
        assert_eq!(f.product(idx(&u20, "1"), idx(&u20, "1")), Some(idx(&u20, "12")));
        assert_eq!(f.product(idx(&u20, "2"), idx(&u20, "4")), Some(idx(&u20, "6")));
    }
}

#[test]
fn zest_to_zero_central_charge_gives_z2_z10() {
    let u20 = catalog::category("u1_20").unwrap();
    let z = zest_to_central_charge(&u20, Rational64::from_integer(0), TOL).unwrap();
    assert_eq!(z.central_charge, Rational64::from_integer(0));
    assert!(!bases_with_orders(z.category.fusion(), &[2, 10]).is_empty());
    assert!(bases_with_orders(z.category.fusion(), &[20]).is_empty());
    assert!((z.b.norm() - 1.0).abs() < TOL);
}

#[test]
fn zesting_rejects_non_abelian_input() {
    assert!(zest(&catalog::su2_6(), cis(0.0), TOL).is_err());
}

#[test]
fn embeddings() {
    let u15 = catalog::u1k(5);
    let u20 = catalog::category("u1_20").unwrap();
    let into_20: Vec<usize> = (0..10).map(|a| (2 * a) % 20).collect();
    assert_eq!(into_20, catalog::u15_into_u120());
    assert!(embed_check(&u15, &u20, &into_20, TOL).passed());

    let b = catalog::zested_b();
    let into_b = catalog::u15_into_b();
    assert_eq!(into_b[1], idx(&b, "(1,1)"));
    assert!(embed_check(&u15, &b, &into_b, TOL).passed());

    let sf = catalog::semion_fermion();
    let ext = catalog::u1_2_u1_m4();
    let emb = catalog::semion_fermion_into_u1_2_u1_m4();
    for (from, to) in [("1", "(0,0)"), ("s", "(1,0)"), ("st", "(1,2)"), ("psi", "(0,2)")] {
        assert_eq!(emb[idx(&sf, from)], idx(&ext, to));
    }
    assert!(embed_check(&sf, &ext, &emb, TOL).passed());

    let mut wrong = into_20.clone();
    wrong.swap(1, 3);
    assert!(!embed_check(&u15, &u20, &wrong, TOL).passed());
}

#[test]
fn every_fixture_embeds() {
    for f in catalog::extension_fixtures() {
        let smtc = catalog::category(f.smtc).unwrap();
        let r = embed_check(&smtc, &f.ext, &f.embedding, TOL);
        assert!(r.passed(), "{}: {r}", f.name);
    }
}

#[test]
fn layer_one() {
    let v = cascade_layer1(&catalog::u1k(5), &extension_candidates(&fixture("u1_20").ext, TOL).unwrap()).unwrap();
    assert!(!v.obstructed);
    assert!(v.central_charges.contains(&Rational64::from_integer(0)));

    let v = cascade_layer1(&catalog::so33(), &extension_candidates(&fixture("su2_6").ext, TOL).unwrap()).unwrap();
    assert!(v.obstructed);
    for c in &v.central_charges {
        assert_eq!((*c * 4).to_integer() % 2, 1, "{c}");
        assert!((*c * 4).is_integer());
    }

    let v = cascade_layer1(&catalog::trivial(), &extension_candidates(&catalog::toric_code(), TOL).unwrap()).unwrap();
    assert!(!v.obstructed);
}

#[test]
fn layer_three() {
    let tol = TOL;
    let f = fixture("u1_2_u1_m4");
    let (sf, act) = catalog::semion_fermion_z4();
    let v = cascade_layer3(&sf, &act, &f.ext, f.action.as_ref().unwrap(), &f.embedding, tol).unwrap();
    assert!(v.obstructed);
    assert!(v.extended.is_none());

    let f = fixture("zested_b");
    let (u15, act) = catalog::u15_z4();
    let ext_act = f.action.as_ref().unwrap();
    for a in 0..f.ext.rank() {
        let label = f.ext.label(a).trim_matches(|ch| ch == '(' || ch == ')').to_string();
        let (x, y) = label.split_once(',').unwrap();
        let (x, y): (usize, usize) = (x.parse().unwrap(), y.parse().unwrap());
        let want = format!("({x},{})", (3 * y) % 10);
        assert_eq!(f.ext.label(ext_act.act(1, a)), want);
    }
    let v = cascade_layer3(&u15, &act, &f.ext, ext_act, &f.embedding, tol).unwrap();
    assert!(!v.obstructed);
    let extended = v.extended.unwrap();
    for a in 0..f.ext.rank() {
        for g in 0..4 {
            for h in 0..4 {
                assert!((extended.eta(a, g, h) - 1.0).norm() < 1e-8);
            }
        }
    }

    let f = fixture("toric_code");
    let (t, act) = catalog::trivial_z4t();
    let v = cascade_layer3(&t, &act, &f.ext, f.action.as_ref().unwrap(), &f.embedding, tol).unwrap();
    assert!(!v.obstructed);
}

#[test]
fn cascade_matches_indicators() {
    let cases = [("u1_5", "u1_20", "zested_b"), ("semion_fermion", "u1_2_u1_m4", "u1_2_u1_m4"), ("so3_3", "su2_6", "")];
    for (name, layer1_ext, layer3_ext) in cases {
        let (c, act) = catalog::action(name, "z4t").unwrap();
        let Some(Nu::Class(nu)) = indicator_epin(&c, &act, TOL).unwrap().nu else { panic!() };
        let l1 = cascade_layer1(&c, &extension_candidates(&fixture(layer1_ext).ext, TOL).unwrap()).unwrap();
        if l1.obstructed {
            assert_eq!(nu % 2, 1, "{name}");
            continue;
        }
        let f = fixture(layer3_ext);
        let l3 = cascade_layer3(&c, &act, &f.ext, f.action.as_ref().unwrap(), &f.embedding, TOL).unwrap();
        assert_eq!(nu, if l3.obstructed { 2 } else { 0 }, "{name}");
    }
}

fn extensions_with_fermion() -> Vec<Category> {
    catalog::extension_fixtures()
        .into_iter()
        .map(|f| f.ext)
        .filter(|c| c.fermion().is_some() && c.fusion().is_group_like())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grading_is_a_fusion_homomorphism(i in 0usize..16) {
        let exts = extensions_with_fermion();
        let c = &exts[i % exts.len()];
        let g = Grading::compute(c, TOL).unwrap();
        prop_assert!(g.is_homomorphism(c.fusion()));
        prop_assert!(!g.odd[0]);
    }

    #[test]
    fn zests_are_abelian_and_modular(i in 0usize..16, k in 0usize..16) {
        let exts = extensions_with_fermion();
        let c = &exts[i % exts.len()];
        if let Ok(z) = zest(c, cis(2.0 * PI * k as f64 / 16.0), TOL) {
            prop_assert!(abelian_modular(&z));
            let g = Grading::compute(&z, TOL).unwrap();
            prop_assert!(g.is_homomorphism(z.fusion()));
        }
    }

    #[test]
    fn zesting_twice_restores_fusion(i in 0usize..16, k in 0usize..16, l in 0usize..16) {
        let exts = extensions_with_fermion();
        let c = &exts[i % exts.len()];
        let once = zest(c, cis(2.0 * PI * k as f64 / 16.0), TOL);
        prop_assume!(once.is_ok());
        let twice = zest(&once.unwrap(), cis(2.0 * PI * l as f64 / 16.0), TOL);
        prop_assume!(twice.is_ok());
        let twice = twice.unwrap();
        prop_assert_eq!(twice.fusion(), c.fusion());
    }

    #[test]
    fn congruence_solver_recovers_planted_solutions(
        modulus in prop::sample::select(vec![2i64, 4, 8, 12, 240]),
        x in prop::collection::vec(0i64..1000, 5),
        coeffs in prop::collection::vec(prop::collection::vec((0usize..5, -6i64..7), 1..4), 1..8),
    ) {
        let planted: Vec<i64> = x.iter().map(|v| v.rem_euclid(modulus)).collect();
        let rhs: Vec<i64> = coeffs
            .iter()
            .map(|row| row.iter().map(|&(j, a)| a * planted[j]).sum::<i64>().rem_euclid(modulus))
            .collect();
        let sol = zmod::solve(5, &coeffs, &rhs, modulus);
        prop_assert!(sol.is_some());
        prop_assert!(zmod::satisfies(&coeffs, &rhs, &sol.unwrap(), modulus));
    }
}
