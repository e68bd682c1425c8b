//! Built-in categories, symmetry actions and modular extensions.

use crate::abelian::{from_quadratic_form, AbelianGroup};
use crate::category::{Category, FusionRules};
use crate::symmetry::{FermionicSymmetry, LieSector, SymmetryAction};
use crate::{cis, C64};
use num_rational::Rational64;
use std::f64::consts::PI;

const I: C64 = C64::new(0.0, 1.0);

/// Names accepted by [`category`].
pub const CATEGORY_NAMES: &[&str] = &[
    "trivial",
    "u1_5",
    "semion_fermion",
    "so3_3",
    "u1_20",
    "zested_b",
    "u1_2_u1_m4",
    "su2_6",
    "toric_code",
    "toric_code_fermion",
];

/// `(category, action)` names accepted by [`action`].
pub const ACTION_NAMES: &[(&str, &str)] = &[
    ("trivial", "z2tf"),
    ("trivial", "z4t"),
    ("trivial", "ci"),
    ("u1_5", "z4t"),
    ("semion_fermion", "z2t"),
    ("semion_fermion", "z4t"),
    ("so3_3", "z2t"),
    ("so3_3", "z4t"),
    ("zested_b", "z4t"),
    ("toric_code", "z4t"),
    ("toric_code_fermion", "ci"),
];

pub fn category(name: &str) -> Option<Category> {
    Some(match name {
        "trivial" => trivial(),
        "u1_5" => u1k(5),
        "semion_fermion" => semion_fermion(),
        "so3_3" => so33(),
        "u1_20" => u1_even(20, Some(10)),
        "zested_b" => zested_b(),
        "u1_2_u1_m4" => u1_2_u1_m4(),
        "su2_6" => su2_6(),
        "toric_code" => toric_code(),
        "toric_code_fermion" => toric_code_fermion(),
        _ => return None,
    })
}

pub fn action(cat: &str, act: &str) -> Option<(Category, SymmetryAction)> {
    Some(match (cat, act) {
        ("trivial", "z2tf") => trivial_z2tf(),
        ("trivial", "z4t") => trivial_z4t(),
        ("trivial", "ci") => trivial_ci(),
        ("u1_5", "z4t") => u15_z4(),
        ("semion_fermion", "z2t") => semion_fermion_z2(),
        ("semion_fermion", "z4t") => semion_fermion_z4(),
        ("so3_3", "z2t") => so33_z2(),
        ("so3_3", "z4t") => so33_z4(),
        ("zested_b", "z4t") => zested_b_z4(),
        ("toric_code", "z4t") => toric_code_z4(),
        ("toric_code_fermion", "ci") => toric_code_fermion_ci(),
        _ => return None,
    })
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// The map `ℤ/4 → ℤ/2` used to pull `ℤ/2^T` data back to `ℤ/4^T`.
pub const Z4_TO_Z2: [usize; 4] = [0, 1, 0, 1];

/// `{1, ψ}` with `R^{ψψ} = -1`.
pub fn trivial() -> Category {
    let g = AbelianGroup::new(vec![2]);
    from_quadratic_form("trivial", &g, Some(names(&["1", "psi"])), |x| cis(PI * x[0] as f64), Some(1))
}

/// `{1, ψ}` with `ℤ/2^T`, `T² = (-1)^F`: `η_ψ(T,T) = -1`.
pub fn trivial_z2tf() -> (Category, SymmetryAction) {
    let c = trivial();
    let mut act = SymmetryAction::new("z2tf", &c, FermionicSymmetry::z2t_f(), vec![vec![0, 1]; 2]);
    act.set_eta(1, 1, 1, C64::new(-1.0, 0.0));
    (c, act)
}

/// `{1, ψ}` with `ℤ/4^T` and all data trivial.
pub fn trivial_z4t() -> (Category, SymmetryAction) {
    let c = trivial();
    let act = SymmetryAction::new("z4t", &c, FermionicSymmetry::z4t(), vec![vec![0, 1]; 4]);
    (c, act)
}

/// `{1, ψ}` with class-CI data: `ℤ/2^T` part as in [`trivial_z2tf`] and
/// SO(3) charges `(0, 1/2)`.
pub fn trivial_ci() -> (Category, SymmetryAction) {
    let (c, act) = trivial_z2tf();
    let act = act
        .with_group_lie(LieSector::SO3)
        .with_charges(vec![Rational64::new(0, 1), Rational64::new(1, 2)]);
    let mut act = act;
    act.set_name("ci");
    (c, act)
}

/// `U(1)_k` for odd `k`: anyons `0..2k`, `F = 1`, `R^{ab} = e^{πiab/k}`, `ψ = k`.
pub fn u1k(k: usize) -> Category {
    assert!(k % 2 == 1 && k >= 3, "U(1)_k needs odd k ≥ 3");
    let g = AbelianGroup::new(vec![2 * k]);
    let kf = k as f64;
    from_quadratic_form(&format!("U(1)_{k}"), &g, None, |x| cis(PI * (x[0] * x[0]) as f64 / kf), Some(k))
}

/// `U(1)_k` for even `k`: anyons `0..k`, `θ_a = e^{πia²/k}`.
pub fn u1_even(k: usize, fermion: Option<usize>) -> Category {
    assert!(k % 2 == 0 && k >= 2);
    let g = AbelianGroup::new(vec![k]);
    let kf = k as f64;
    from_quadratic_form(&format!("U(1)_{k}"), &g, None, |x| cis(PI * (x[0] * x[0]) as f64 / kf), fermion)
}

/// `ℤ/4^T` action on `U(1)_k` (odd `k`) permuting anyons by `a ↦ m a mod 2k`
/// with trivial U- and η-symbols.
pub fn u1k_z4(k: usize, m: usize) -> (Category, SymmetryAction) {
    let c = u1k(k);
    let gen: Vec<usize> = (0..2 * k).map(|a| (m * a) % (2 * k)).collect();
    let rho = SymmetryAction::cyclic_rho(4, &gen);
    let act = SymmetryAction::new("z4t", &c, FermionicSymmetry::z4t(), rho);
    (c, act)
}

/// `U(1)_5` with `T: a ↦ 3a mod 10`.
pub fn u15_z4() -> (Category, SymmetryAction) {
    u1k_z4(5, 3)
}

/// U(1) charge table `q_a = (a mod 2)/2` on `U(1)_5`.
pub fn u15_charges() -> Vec<Rational64> {
    (0..10).map(|a| Rational64::new((a % 2) as i64, 2)).collect()
}

/// Semion-fermion theory, anyons ordered `(1, s, ψ, s̃)`.
pub fn semion_fermion() -> Category {
    let g = AbelianGroup::new(vec![2, 2]);
    let theta = [C64::new(1.0, 0.0), I, C64::new(-1.0, 0.0), -I];
    from_quadratic_form(
        "semion_fermion",
        &g,
        Some(names(&["1", "s", "psi", "st"])),
        |x| theta[x[0] + 2 * x[1]],
        Some(2),
    )
}

/// `ℤ/2^T` action on the semion-fermion theory exchanging `s` and `s̃`.
pub fn semion_fermion_z2() -> (Category, SymmetryAction) {
    let c = semion_fermion();
    let mut act = SymmetryAction::new("z2t", &c, FermionicSymmetry::z2t_f(), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
    let u = [[1.0, 1.0, 1.0, 1.0], [1.0, 1.0, 1.0, 1.0], [1.0, -1.0, 1.0, -1.0], [1.0, -1.0, 1.0, -1.0]];
    for a in 0..4 {
        for b in 0..4 {
            let x = c.fusion().product(a, b).unwrap();
            act.set_u(1, a, b, x, C64::new(u[a][b], 0.0));
        }
    }
    act.set_eta(2, 1, 1, C64::new(-1.0, 0.0));
    act.set_eta(1, 1, 1, -I);
    act.set_eta(3, 1, 1, I);
    (c, act)
}

/// Pullback of [`semion_fermion_z2`] to `ℤ/4^T`.
pub fn semion_fermion_z4() -> (Category, SymmetryAction) {
    let (c, a) = semion_fermion_z2();
    let mut act = a.pullback(FermionicSymmetry::z4t(), &Z4_TO_Z2);
    act.set_name("z4t");
    (c, act)
}

/// `⌊n⌋ = Σ_{m=1}^{n} q^{(n+1)/2 - m}` with `q = e^{2πi/(k+2)}`.
fn qint(n: i64, k: i64) -> f64 {
    let step = 2.0 * PI / (k + 2) as f64;
    (1..=n)
        .map(|m| cis(step * ((n + 1) as f64 / 2.0 - m as f64)))
        .sum::<C64>()
        .re
}

fn qfact(n: i64, k: i64) -> f64 {
    (1..=n).map(|m| qint(m, k)).product()
}

fn su2_admissible(a: i64, b: i64, c: i64, k: i64) -> bool {
    (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= a + b && a + b + c <= 2 * k
}

fn delta(a: i64, b: i64, c: i64, k: i64) -> f64 {
    (qfact((a + b - c) / 2, k) * qfact((a - b + c) / 2, k) * qfact((-a + b + c) / 2, k) / qfact((a + b + c + 2) / 2, k)).sqrt()
}

fn su2_f(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64, k: i64) -> f64 {
    let sign = if ((a + b + c + d) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let pre = sign
        * delta(a, b, e, k)
        * delta(c, d, e, k)
        * delta(b, c, f, k)
        * delta(a, d, f, k)
        * (qint(e + 1, k) * qint(f + 1, k)).sqrt();
    let lo = (a + b + e).max(c + d + e).max(b + c + f).max(a + d + f);
    let hi = (a + b + c + d).min(a + c + e + f).min(b + d + e + f);
    let mut sum = 0.0;
    for n in (lo..=hi).filter(|n| n % 2 == 0) {
        let s = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        sum += s * qfact((n + 2) / 2, k)
            / (qfact((a + b + c + d - n) / 2, k)
                * qfact((a + c + e + f - n) / 2, k)
                * qfact((b + d + e + f - n) / 2, k)
                * qfact((n - a - b - e) / 2, k)
                * qfact((n - c - d - e) / 2, k)
                * qfact((n - b - c - f) / 2, k)
                * qfact((n - a - d - f) / 2, k));
    }
    pre * sum
}

fn su2_r(a: i64, b: i64, c: i64, k: i64) -> C64 {
    let sign = if ((a + b - c) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let step = 2.0 * PI / (k + 2) as f64;
    cis(step * (c * (c + 2) - a * (a + 2) - b * (b + 2)) as f64 / 8.0) * sign
}

/// The level-6 SU(2) data restricted to the given twice-spin labels.
fn su2_6_on(name: &str, spins: &[i64], labels: Vec<String>, fermion: Option<usize>) -> Category {
    const K: i64 = 6;
    let n = spins.len();
    let mut rules = FusionRules::new(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if su2_admissible(spins[a], spins[b], spins[c], K) {
                    rules.set(a, b, c, 1);
                }
            }
        }
    }
    let mut cat = Category::new(name, labels, rules, fermion);
    cat.fill_f(|[a, b, c, d, e, f]| {
        let s = |x: usize| spins[x];
        C64::new(su2_f(s(a), s(b), s(c), s(d), s(e), s(f), K), 0.0)
    });
    cat.fill_r(|[a, b, c]| su2_r(spins[a], spins[b], spins[c], K));
    cat
}

/// `SU(2)_6`, anyons labelled by twice the spin, `0..=6`.
pub fn su2_6() -> Category {
    let spins: Vec<i64> = (0..=6).collect();
    su2_6_on("SU(2)_6", &spins, spins.iter().map(|s| s.to_string()).collect(), Some(6))
}

/// `SO(3)_3`, the integer-spin part of `SU(2)_6`, ordered `(1, s, ψ, s̃)`
/// with `s = 2`, `ψ = 6`, `s̃ = 4`.
pub fn so33() -> Category {
    su2_6_on("SO(3)_3", &[0, 2, 6, 4], names(&["1", "s", "psi", "st"]), Some(2))
}

/// `ℤ/2^T` action on `SO(3)_3` exchanging `s` and `s̃`.
pub fn so33_z2() -> (Category, SymmetryAction) {
    let c = so33();
    let mut act = SymmetryAction::new("z2t", &c, FermionicSymmetry::z2t_f(), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
    let (s, p, t) = (1, 2, 3);
    for (a, b, x) in [(s, t, p), (t, p, s), (p, s, t), (s, s, s), (t, t, t)] {
        act.set_u(1, a, b, x, I);
    }
    for (a, b, x) in [
        (s, p, t),
        (p, t, s),
        (t, s, p),
        (s, s, t),
        (s, t, s),
        (t, s, s),
        (t, t, s),
        (t, s, t),
        (s, t, t),
    ] {
        act.set_u(1, a, b, x, -I);
    }
    act.set_eta(p, 1, 1, C64::new(-1.0, 0.0));
    (c, act)
}

/// Pullback of [`so33_z2`] to `ℤ/4^T`.
pub fn so33_z4() -> (Category, SymmetryAction) {
    let (c, a) = so33_z2();
    let mut act = a.pullback(FermionicSymmetry::z4t(), &Z4_TO_Z2);
    act.set_name("z4t");
    (c, act)
}

/// The modular extension `B` of `U(1)_5` on `ℤ/2 × ℤ/10` with
/// `R^{(a_1,b_1),(a_2,b_2)} = exp(πi(a_1a_2 + a_1b_2 + b_1b_2/5))` and `F = 1`.
pub fn zested_b() -> Category {
    let g = AbelianGroup::new(vec![2, 10]);
    let rules = g.fusion();
    let labels = g.labels();
    let psi = g.index(&[1, 5]);
    let mut cat = Category::new("zested_b", labels, rules, Some(psi));
    cat.fill_f(|_| C64::new(1.0, 0.0));
    cat.fill_r(|[x, y, _]| {
        let (p, q) = (g.coords(x), g.coords(y));
        cis(PI * ((p[0] * q[0] + p[0] * q[1]) as f64 + (p[1] * q[1]) as f64 / 5.0))
    });
    cat
}

/// `U(1)_5 → B`, `a ↦ (a mod 2, a)`.
pub fn u15_into_b() -> Vec<usize> {
    let g = AbelianGroup::new(vec![2, 10]);
    (0..10).map(|a| g.index(&[a % 2, a])).collect()
}

/// `ℤ/4^T` on `B`: `(a, b) ↦ (a, 3b mod 10)` with `U = η = 1`.
pub fn zested_b_z4() -> (Category, SymmetryAction) {
    let c = zested_b();
    let g = AbelianGroup::new(vec![2, 10]);
    let gen: Vec<usize> = (0..20)
        .map(|x| {
            let p = g.coords(x);
            g.index(&[p[0], 3 * p[1]])
        })
        .collect();
    let act = SymmetryAction::new("z4t", &c, FermionicSymmetry::z4t(), SymmetryAction::cyclic_rho(4, &gen));
    (c, act)
}

/// `U(1)_5 → U(1)_20`, `a ↦ 2a`.
pub fn u15_into_u120() -> Vec<usize> {
    (0..10).map(|a| 2 * a).collect()
}

/// `U(1)_2 × U(1)_{-4}` with anyons `(a, b)`, `a ∈ ℤ/2`, `b ∈ ℤ/4`, and
/// `ψ = (0, 2)`.
pub fn u1_2_u1_m4() -> Category {
    let g = AbelianGroup::new(vec![2, 4]);
    let psi = g.index(&[0, 2]);
    from_quadratic_form(
        "u1_2_u1_m4",
        &g,
        None,
        |x| cis(PI * (x[0] * x[0]) as f64 / 2.0 - PI * (x[1] * x[1]) as f64 / 4.0),
        Some(psi),
    )
}

/// Semion-fermion `(1, s, ψ, s̃) ↦ ((0,0), (1,0), (0,2), (1,2))`.
pub fn semion_fermion_into_u1_2_u1_m4() -> Vec<usize> {
    let g = AbelianGroup::new(vec![2, 4]);
    vec![g.index(&[0, 0]), g.index(&[1, 0]), g.index(&[0, 2]), g.index(&[1, 2])]
}

/// The `ℤ/4^T` permutation `(a, b) ↦ (a + b mod 2, 2a + b mod 4)` on
/// `U(1)_2 × U(1)_{-4}`, with U-symbols solved from the UFUR equations.
///
/// No η-symbols on this extension satisfy both the U-η relation and the
/// cocycle condition, so the η-symbols are left at 1 and the action is only
/// meant as input to [`crate::extension::cascade_layer3`].
pub fn u1_2_u1_m4_z4() -> (Category, SymmetryAction) {
    let c = u1_2_u1_m4();
    let g = AbelianGroup::new(vec![2, 4]);
    let gen: Vec<usize> = (0..8)
        .map(|x| {
            let p = g.coords(x);
            g.index(&[p[0] + p[1], 2 * p[0] + p[1]])
        })
        .collect();
    let act = SymmetryAction::new("z4t", &c, FermionicSymmetry::z4t(), SymmetryAction::cyclic_rho(4, &gen));
    let act = crate::extension::solve_u_symbols(&c, &act, 1e-9).expect("U-symbols exist for this permutation");
    (c, act)
}

/// Toric code `{1, e, m, f}` with `ψ = f` declared as the zesting fermion.
pub fn toric_code() -> Category {
    let g = AbelianGroup::new(vec![2, 2]);
    from_quadratic_form(
        "toric_code",
        &g,
        Some(names(&["1", "e", "m", "f"])),
        |x| if x[0] == 1 && x[1] == 1 { C64::new(-1.0, 0.0) } else { C64::new(1.0, 0.0) },
        Some(3),
    )
}

/// `{1, ψ} → toric code`, `ψ ↦ f`.
pub fn trivial_into_toric_code() -> Vec<usize> {
    vec![0, 3]
}

/// `ℤ/4^T` on the toric code, acting trivially.
pub fn toric_code_z4() -> (Category, SymmetryAction) {
    let c = toric_code();
    let act = SymmetryAction::new("z4t", &c, FermionicSymmetry::z4t(), vec![(0..4).collect(); 4]);
    (c, act)
}

/// Toric code stacked with `{1, ψ}`, anyons `e^i m^j ψ^k` on `ℤ/2³`.
pub fn toric_code_fermion() -> Category {
    let g = AbelianGroup::new(vec![2, 2, 2]);
    let labels = (0..8)
        .map(|x| {
            let p = g.coords(x);
            let mut s = String::new();
            for (bit, name) in p.iter().zip(["e", "m", "psi"]) {
                if *bit == 1 {
                    s.push_str(name);
                }
            }
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        })
        .collect();
    from_quadratic_form(
        "toric_code_fermion",
        &g,
        Some(labels),
        |x| {
            let sign = (x[0] * x[1] + x[2]) % 2;
            C64::new(if sign == 1 { -1.0 } else { 1.0 }, 0.0)
        },
        Some(4),
    )
}

/// Class-CI data on [`toric_code_fermion`]: `T` fixes every anyon, `U = 1`,
/// `η_a(T,T)` is the character with `e, m, ψ ↦ -1`, and the SO(3) charges
/// are `q_e = q_m = 0`, `q_ψ = 1/2`.
pub fn toric_code_fermion_ci() -> (Category, SymmetryAction) {
    let c = toric_code_fermion();
    let g = AbelianGroup::new(vec![2, 2, 2]);
    let mut act = SymmetryAction::new("ci", &c, FermionicSymmetry::z2t_f().with_lie(LieSector::SO3), vec![(0..8).collect(); 2]);
    for x in 0..8 {
        let p = g.coords(x);
        let parity = (p[0] + p[1] + p[2]) % 2;
        act.set_eta(x, 1, 1, C64::new(if parity == 1 { -1.0 } else { 1.0 }, 0.0));
    }
    let q = (0..8).map(|x| Rational64::new(g.coords(x)[2] as i64, 2)).collect();
    act.set_charges(Some(q));
    (c, act)
}

/// A modular extension of a super-MTC together with the embedding and an
/// optional symmetry action on the extension.
#[derive(Debug, Clone)]
pub struct ExtensionFixture {
    pub name: &'static str,
    pub smtc: &'static str,
    pub ext: Category,
    pub embedding: Vec<usize>,
    pub action: Option<SymmetryAction>,
}

pub fn extension_fixtures() -> Vec<ExtensionFixture> {
    vec![
        ExtensionFixture {
            name: "u1_20",
            smtc: "u1_5",
            ext: u1_even(20, Some(10)),
            embedding: u15_into_u120(),
            action: None,
        },
        ExtensionFixture {
            name: "zested_b",
            smtc: "u1_5",
            ext: zested_b(),
            embedding: u15_into_b(),
            action: Some(zested_b_z4().1),
        },
        ExtensionFixture {
            name: "u1_2_u1_m4",
            smtc: "semion_fermion",
            ext: u1_2_u1_m4(),
            embedding: semion_fermion_into_u1_2_u1_m4(),
            action: Some(u1_2_u1_m4_z4().1),
        },
        ExtensionFixture {
            name: "su2_6",
            smtc: "so3_3",
            ext: su2_6(),
            embedding: vec![0, 2, 6, 4],
            action: None,
        },
        ExtensionFixture {
            name: "toric_code",
            smtc: "trivial",
            ext: toric_code(),
            embedding: trivial_into_toric_code(),
            action: Some(toric_code_z4().1),
        },
    ]
}
