//! Fermionic symmetry groups, their actions on a category, the consistency
//! equations for symmetry fractionalization data, and gauge transformations.
//!
//! Notation: `ᵍa = ρ_g(a)`, `ḡ = g⁻¹`, `K^{s}` is complex conjugation when
//! `s = 1`. The checked equations are
//!
//! ```text
//! U_g(ᵍa,ᵍb;ᵍe) U_g(ᵍe,ᵍc;ᵍd) F^{ᵍa ᵍb ᵍc}_{ᵍd;ᵍe,ᵍf} / (U_g(ᵍb,ᵍc;ᵍf) U_g(ᵍa,ᵍf;ᵍd)) = K^{s(g)}(F^{abc}_{d;e,f})
//! U_g(ᵍb,ᵍa;ᵍc) R^{ᵍa ᵍb}_{ᵍc} / U_g(ᵍa,ᵍb;ᵍc) = K^{s(g)}(R^{ab}_c)
//! η_a(g,h) η_b(g,h) / η_c(g,h) = U_g(a,b;c)⁻¹ K^{s(g)}(U_h(ḡa,ḡb;ḡc)⁻¹) U_{gh}(a,b;c)
//! η_a(g,h) η_a(gh,k) = η_a(g,hk) K^{s(g)}(η_{ḡa}(h,k))
//! ```

use crate::category::Category;
use crate::report::Report;
use crate::{conj_if, C64};
use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("η_ψ({0}, {1}) is not ±1")]
    NotSign(String, String),
    #[error("η_ψ is not a 2-cocycle at ({0}, {1}, {2})")]
    NotCocycle(String, String, String),
}

/// Continuous part of the symmetry group, represented only through charges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum LieSector {
    #[default]
    #[serde(rename = "none")]
    None,
    #[serde(rename = "U(1)")]
    U1,
    #[serde(rename = "SO(3)")]
    SO3,
}

/// A finite bosonic symmetry group `G_b` with antiunitarity homomorphism `s`
/// and a `ℤ/2`-valued 2-cocycle `ω`. The identity is element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermionicSymmetry {
    name: String,
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    s: Vec<u8>,
    omega: Vec<Vec<u8>>,
    lie: LieSector,
}

impl FermionicSymmetry {
    /// The cyclic group of order `k`. If `antiunitary` is set the generator
    /// reverses time and `k` must be even. A nontrivial `ω` is represented by
    /// the carry cocycle `ω(gⁱ, gʲ) = [i + j ≥ k]`.
    pub fn cyclic(k: usize, antiunitary: bool, omega_nontrivial: bool, lie: LieSector) -> Self {
        assert!(k >= 1);
        assert!(!antiunitary || k % 2 == 0, "antiunitary generator needs even order");
        let gen = if antiunitary { "T" } else { "g" };
        let elements = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => gen.to_string(),
                _ => format!("{gen}^{i}"),
            })
            .collect();
        let mul = (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
        let s = (0..k).map(|i| u8::from(antiunitary && i % 2 == 1)).collect();
        let omega = (0..k)
            .map(|i| (0..k).map(|j| u8::from(omega_nontrivial && i + j >= k)).collect())
            .collect();
        let name = match (k, antiunitary, omega_nontrivial) {
            (2, true, true) => "Z2T_f".to_string(),
            (4, true, false) => "Z4T".to_string(),
            _ => format!("Z{k}{}{}", if antiunitary { "T" } else { "" }, if omega_nontrivial { "_f" } else { "" }),
        };
        FermionicSymmetry {
            name,
            elements,
            mul,
            s,
            omega,
            lie,
        }
    }

    /// `ℤ/2^T` with `T² = (-1)^F`, the ℤ/4^{Tf} fermionic symmetry.
    pub fn z2t_f() -> Self {
        Self::cyclic(2, true, true, LieSector::None)
    }

    /// `ℤ/4^T` with `ω` trivial, the ℤ/4^T × ℤ/2^f fermionic symmetry.
    pub fn z4t() -> Self {
        Self::cyclic(4, true, false, LieSector::None)
    }

    pub fn from_table(
        name: impl Into<String>,
        elements: Vec<String>,
        mul: Vec<Vec<usize>>,
        s: Vec<u8>,
        omega: Vec<Vec<u8>>,
        lie: LieSector,
    ) -> Result<Self, SymmetryError> {
        let k = elements.len();
        fn square<T>(t: &[Vec<T>], k: usize) -> bool {
            t.len() == k && t.iter().all(|r| r.len() == k)
        }
        if k == 0 || !square(&mul, k) || !square(&omega, k) || s.len() != k {
            return Err(SymmetryError::Shape("group tables have inconsistent sizes".into()));
        }
        if mul.iter().flatten().any(|&x| x >= k) {
            return Err(SymmetryError::Shape("multiplication table entry out of range".into()));
        }
        let g = FermionicSymmetry {
            name: name.into(),
            elements,
            mul,
            s,
            omega,
            lie,
        };
        let report = g.validate();
        match report.violations.first() {
            Some(v) => Err(SymmetryError::Shape(v.message.clone())),
            None => Ok(g),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.mul[g][h] == 0).expect("group element has an inverse")
    }

    pub fn s(&self, g: usize) -> u8 {
        self.s[g]
    }

    pub fn antiunitary(&self, g: usize) -> bool {
        self.s[g] == 1
    }

    pub fn omega(&self, g: usize, h: usize) -> u8 {
        self.omega[g][h]
    }

    pub fn lie(&self) -> LieSector {
        self.lie
    }

    pub fn with_lie(mut self, lie: LieSector) -> Self {
        self.lie = lie;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Order of `g` in the group.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// A generator, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&g| self.element_order(g) == self.order())
    }

    /// Group axioms, `s` a homomorphism, `ω` a 2-cocycle.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("symmetry group");
        let k = self.order();
        for g in 0..k {
            if self.mul[0][g] != g || self.mul[g][0] != g {
                report.push(format!("element 0 is not the identity at {}", self.elements[g]), None);
            }
            if !(0..k).any(|h| self.mul[g][h] == 0) {
                report.push(format!("{} has no inverse", self.elements[g]), None);
            }
            if self.s[g] > 1 || self.omega[g].iter().any(|&w| w > 1) {
                report.push(format!("s or ω is not ℤ/2-valued at {}", self.elements[g]), None);
            }
        }
        for g in 0..k {
            for h in 0..k {
                if (self.s[g] + self.s[h]) % 2 != self.s[self.mul[g][h]] % 2 {
                    report.push(format!("s is not a homomorphism at ({}, {})", self.elements[g], self.elements[h]), None);
                }
                for l in 0..k {
                    if self.mul[self.mul[g][h]][l] != self.mul[g][self.mul[h][l]] {
                        report.push(format!("multiplication is not associative at ({g}, {h}, {l})"), None);
                    }
                    let lhs = self.omega[h][l] + self.omega[g][self.mul[h][l]];
                    let rhs = self.omega[self.mul[g][h]][l] + self.omega[g][h];
                    if (lhs + rhs) % 2 != 0 {
                        report.push(
                            format!(
                                "ω is not a cocycle at ({}, {}, {})",
                                self.elements[g], self.elements[h], self.elements[l]
                            ),
                            None,
                        );
                    }
                }
            }
        }
        report
    }
}

/// Symmetry fractionalization data of a fermionic symmetry on a category:
/// the permutation `ρ`, the U-symbols, the η-symbols and optional charges.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryAction {
    name: String,
    group: FermionicSymmetry,
    n: usize,
    rho: Vec<Vec<usize>>,
    u: Vec<C64>,
    eta: Vec<C64>,
    charges: Option<Vec<Rational64>>,
}

impl SymmetryAction {
    /// An action with the given permutations, `U = 1` on admissible channels
    /// and `η = 1`.
    pub fn new(name: impl Into<String>, c: &Category, group: FermionicSymmetry, rho: Vec<Vec<usize>>) -> Self {
        let n = c.rank();
        let k = group.order();
        assert_eq!(rho.len(), k, "one permutation per group element");
        let mut u = vec![C64::new(0.0, 0.0); k * n * n * n];
        for g in 0..k {
            for [a, b, x] in c.r_channels() {
                u[((g * n + a) * n + b) * n + x] = C64::new(1.0, 0.0);
            }
        }
        SymmetryAction {
            name: name.into(),
            group,
            n,
            rho,
            u,
            eta: vec![C64::new(1.0, 0.0); n * k * k],
            charges: None,
        }
    }

    /// Permutations generated by powers of a single permutation on a cyclic
    /// group.
    pub fn cyclic_rho(k: usize, generator: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![(0..generator.len()).collect::<Vec<_>>()];
        for i in 1..k {
            out.push(out[i - 1].iter().map(|&a| generator[a]).collect());
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn group(&self) -> &FermionicSymmetry {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `ᵍa`.
    pub fn act(&self, g: usize, a: usize) -> usize {
        self.rho[g][a]
    }

    /// `ᵍ^k a`.
    pub fn act_power(&self, g: usize, k: usize, a: usize) -> usize {
        (0..k).fold(a, |x, _| self.rho[g][x])
    }

    pub fn rho(&self) -> &[Vec<usize>] {
        &self.rho
    }

    fn ui(&self, g: usize, a: usize, b: usize, c: usize) -> usize {
        ((g * self.n + a) * self.n + b) * self.n + c
    }

    /// `U_g(a,b;c)`, zero when the channel is not admissible.
    pub fn u(&self, g: usize, a: usize, b: usize, c: usize) -> C64 {
        self.u[self.ui(g, a, b, c)]
    }

    pub fn set_u(&mut self, g: usize, a: usize, b: usize, c: usize, value: C64) {
        let i = self.ui(g, a, b, c);
        assert!(self.u[i] != C64::new(0.0, 0.0), "U channel ({a},{b};{c}) is not admissible");
        self.u[i] = value;
    }

    /// `η_a(g,h)`.
    pub fn eta(&self, a: usize, g: usize, h: usize) -> C64 {
        let k = self.group.order();
        self.eta[(a * k + g) * k + h]
    }

    pub fn set_eta(&mut self, a: usize, g: usize, h: usize, value: C64) {
        let k = self.group.order();
        self.eta[(a * k + g) * k + h] = value;
    }

    pub fn charges(&self) -> Option<&[Rational64]> {
        self.charges.as_deref()
    }

    pub fn set_charges(&mut self, q: Option<Vec<Rational64>>) {
        if let Some(q) = &q {
            assert_eq!(q.len(), self.n);
        }
        self.charges = q;
    }

    pub fn with_charges(mut self, q: Vec<Rational64>) -> Self {
        self.set_charges(Some(q));
        self
    }

    pub fn with_group_lie(mut self, lie: LieSector) -> Self {
        self.group = self.group.with_lie(lie);
        self
    }

    /// The pullback along a group homomorphism `map: new → old`.
    pub fn pullback(&self, group: FermionicSymmetry, map: &[usize]) -> Self {
        let k = group.order();
        let n = self.n;
        assert_eq!(map.len(), k);
        let mut out = SymmetryAction {
            name: self.name.clone(),
            group,
            n,
            rho: map.iter().map(|&g| self.rho[g].clone()).collect(),
            u: vec![C64::new(0.0, 0.0); k * n * n * n],
            eta: vec![C64::new(1.0, 0.0); n * k * k],
            charges: self.charges.clone(),
        };
        for g in 0..k {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let i = out.ui(g, a, b, c);
                        out.u[i] = self.u(map[g], a, b, c);
                    }
                }
            }
        }
        for a in 0..n {
            for g in 0..k {
                for h in 0..k {
                    out.set_eta(a, g, h, self.eta(a, map[g], map[h]));
                }
            }
        }
        out
    }
}

/// Structural invariants: composition of `ρ`, preservation of fusion and of
/// `ψ`, unit modulus, gauge fixing and charge rules.
pub fn check_action_structure(c: &Category, act: &SymmetryAction, tol: f64) -> Report {
    let mut report = Report::new("action structure");
    let g_ = act.group();
    let k = g_.order();
    let n = c.rank();
    let rules = c.fusion();
    if act.rank() != n {
        report.push("action and category have different ranks", None);
        return report;
    }
    for g in 0..k {
        let mut seen = vec![false; n];
        for a in 0..n {
            let x = act.act(g, a);
            if x >= n || seen[x] {
                report.push(format!("ρ_{} is not a permutation", g_.element(g)), None);
                return report;
            }
            seen[x] = true;
        }
    }
    for a in 0..n {
        if act.act(0, a) != a {
            report.push(format!("ρ_1 moves {}", c.label(a)), None);
        }
        for g in 0..k {
            for h in 0..k {
                if act.act(g, act.act(h, a)) != act.act(g_.mul(g, h), a) {
                    report.push(
                        format!("ρ does not compose at ({}, {}) on {}", g_.element(g), g_.element(h), c.label(a)),
                        None,
                    );
                }
            }
        }
    }
    for g in 0..k {
        if act.act(g, 0) != 0 {
            report.push(format!("ρ_{} moves the unit", g_.element(g)), None);
        }
        if let Some(p) = c.fermion() {
            if act.act(g, p) != p {
                report.push(format!("ρ_{} moves ψ", g_.element(g)), None);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    let (ga, gb, gx) = (act.act(g, a), act.act(g, b), act.act(g, x));
                    if rules.get(a, b, x) != rules.get(ga, gb, gx) {
                        report.push(
                            format!(
                                "ρ_{} does not preserve fusion at ({},{};{})",
                                g_.element(g),
                                c.label(a),
                                c.label(b),
                                c.label(x)
                            ),
                            None,
                        );
                    }
                }
            }
        }
        for [a, b, x] in c.r_channels() {
            let u = act.u(g, a, b, x);
            let dev = (u.norm() - 1.0).abs();
            if dev > tol {
                report.mismatch(format!("U_{}({},{};{}) is not a phase", g_.element(g), c.label(a), c.label(b), c.label(x)), dev);
            }
            if a == 0 || b == 0 {
                let dev = (u - 1.0).norm();
                if dev > tol {
                    report.mismatch(
                        format!("gauge fixing U_{}({},{};{}) = 1 fails", g_.element(g), c.label(a), c.label(b), c.label(x)),
                        dev,
                    );
                }
            }
        }
    }
    for a in 0..n {
        for g in 0..k {
            for h in 0..k {
                let e = act.eta(a, g, h);
                let dev = (e.norm() - 1.0).abs();
                if dev > tol {
                    report.mismatch(format!("η_{}({},{}) is not a phase", c.label(a), g_.element(g), g_.element(h)), dev);
                }
                if a == 0 || g == 0 || h == 0 {
                    let dev = (e - 1.0).norm();
                    if dev > tol {
                        report.mismatch(
                            format!("gauge fixing η_{}({},{}) = 1 fails", c.label(a), g_.element(g), g_.element(h)),
                            dev,
                        );
                    }
                }
            }
        }
    }
    check_charges(c, act, &mut report);
    report
}

fn frac(q: Rational64) -> Rational64 {
    q - q.floor()
}

fn check_charges(c: &Category, act: &SymmetryAction, report: &mut Report) {
    let lie = act.group().lie();
    let q = match (lie, act.charges()) {
        (LieSector::None, None) => return,
        (LieSector::None, Some(_)) => {
            report.push("charges given without a Lie sector", None);
            return;
        }
        (_, None) => {
            report.push("Lie sector declared without charges", None);
            return;
        }
        (_, Some(q)) => q,
    };
    let half = Rational64::new(1, 2);
    for (a, &qa) in q.iter().enumerate() {
        if qa < Rational64::zero() || qa >= Rational64::one() {
            report.push(format!("q_{} = {qa} is outside [0, 1)", c.label(a)), None);
        }
        if lie == LieSector::SO3 && qa != Rational64::zero() && qa != half {
            report.push(format!("q_{} = {qa} is not 0 or 1/2", c.label(a)), None);
        }
    }
    if let Some(p) = c.fermion() {
        if q[p] != half {
            report.push(format!("q_ψ = {} instead of 1/2", q[p]), None);
        }
    }
    for [a, b, x] in c.r_channels() {
        if frac(q[a] + q[b] - q[x]) != Rational64::zero() {
            report.push(
                format!("charges do not add on ({},{};{})", c.label(a), c.label(b), c.label(x)),
                None,
            );
        }
    }
}

pub fn check_ufur(c: &Category, act: &SymmetryAction, tol: f64) -> Report {
    let mut report = Report::new("UFUR");
    let grp = act.group();
    for g in 0..grp.order() {
        let s = grp.antiunitary(g);
        let m = |x: usize| act.act(g, x);
        for ([a, b, cc, d, e, f], v) in c.f_entries() {
            let (ga, gb, gc, gd, ge, gf) = (m(a), m(b), m(cc), m(d), m(e), m(f));
            let lhs = act.u(g, ga, gb, ge) * act.u(g, ge, gc, gd) * c.f(ga, gb, gc, gd, ge, gf)
                / (act.u(g, gb, gc, gf) * act.u(g, ga, gf, gd));
            let dev = (lhs - conj_if(v, s)).norm();
            if dev > tol {
                report.mismatch(
                    format!(
                        "F-line g={} ({},{},{};{};{},{})",
                        grp.element(g),
                        c.label(a),
                        c.label(b),
                        c.label(cc),
                        c.label(d),
                        c.label(e),
                        c.label(f)
                    ),
                    dev,
                );
            }
        }
        for ([a, b, x], v) in c.r_entries() {
            let (ga, gb, gx) = (m(a), m(b), m(x));
            let lhs = act.u(g, gb, ga, gx) * c.r(ga, gb, gx) / act.u(g, ga, gb, gx);
            let dev = (lhs - conj_if(v, s)).norm();
            if dev > tol {
                report.mismatch(
                    format!("R-line g={} ({},{};{})", grp.element(g), c.label(a), c.label(b), c.label(x)),
                    dev,
                );
            }
        }
    }
    report
}

pub fn check_u_eta(c: &Category, act: &SymmetryAction, tol: f64) -> Report {
    let mut report = Report::new("U-η");
    let grp = act.group();
    let k = grp.order();
    for g in 0..k {
        let gi = grp.inv(g);
        let s = grp.antiunitary(g);
        for h in 0..k {
            let gh = grp.mul(g, h);
            for [a, b, x] in c.r_channels() {
                let lhs = act.eta(a, g, h) * act.eta(b, g, h) / act.eta(x, g, h);
                let (ia, ib, ix) = (act.act(gi, a), act.act(gi, b), act.act(gi, x));
                let rhs = act.u(g, a, b, x).inv() * conj_if(act.u(h, ia, ib, ix).inv(), s) * act.u(gh, a, b, x);
                let dev = (lhs - rhs).norm();
                if dev > tol {
                    report.mismatch(
                        format!(
                            "g={} h={} ({},{};{})",
                            grp.element(g),
                            grp.element(h),
                            c.label(a),
                            c.label(b),
                            c.label(x)
                        ),
                        dev,
                    );
                }
            }
        }
    }
    report
}

pub fn check_eta_cocycle(c: &Category, act: &SymmetryAction, tol: f64) -> Report {
    let mut report = Report::new("η cocycle");
    let grp = act.group();
    let k = grp.order();
    for a in 0..c.rank() {
        for g in 0..k {
            let ga = act.act(grp.inv(g), a);
            let s = grp.antiunitary(g);
            for h in 0..k {
                for l in 0..k {
                    let lhs = act.eta(a, g, h) * act.eta(a, grp.mul(g, h), l);
                    let rhs = act.eta(a, g, grp.mul(h, l)) * conj_if(act.eta(ga, h, l), s);
                    let dev = (lhs - rhs).norm();
                    if dev > tol {
                        report.mismatch(
                            format!(
                                "a={} ({},{},{})",
                                c.label(a),
                                grp.element(g),
                                grp.element(h),
                                grp.element(l)
                            ),
                            dev,
                        );
                    }
                }
            }
        }
    }
    report
}

/// Whether a `ℤ/2`-valued 2-cocycle on `grp` is a coboundary, by search over
/// all normalized 1-cochains.
pub fn is_coboundary(grp: &FermionicSymmetry, x: &[Vec<u8>]) -> bool {
    let k = grp.order();
    (0u64..1 << (k - 1)).any(|bits| {
        let beta = |g: usize| if g == 0 { 0 } else { ((bits >> (g - 1)) & 1) as u8 };
        (0..k).all(|g| (0..k).all(|h| (beta(g) + beta(h) + beta(grp.mul(g, h)) + x[g][h]) % 2 == 0))
    })
}

/// For a cyclic group with generator `g` of order `k`, the class of a
/// `ℤ/2` 2-cocycle is nontrivial iff `k` is even and `Σ_j x(g, gʲ)` is odd.
pub fn cyclic_class(grp: &FermionicSymmetry, x: &[Vec<u8>]) -> Option<bool> {
    let g = grp.cyclic_generator()?;
    if grp.order() % 2 == 1 {
        return Some(false);
    }
    let mut power = 0;
    let mut total = 0u32;
    for _ in 0..grp.order() {
        total += u32::from(x[g][power]);
        power = grp.mul(g, power);
    }
    Some(total % 2 == 1)
}

/// Result of comparing `[η_ψ]` against `ω`.
#[derive(Debug, Clone)]
pub struct FermionClass {
    pub eta_psi_nontrivial: bool,
    pub omega_nontrivial: bool,
    pub report: Report,
}

/// Compares the cohomology class of the ±1-valued cocycle `η_ψ` with `ω`.
pub fn check_fermion_class(c: &Category, act: &SymmetryAction, tol: f64) -> Result<FermionClass, SymmetryError> {
    let grp = act.group();
    let k = grp.order();
    let Some(p) = c.fermion() else {
        return Err(SymmetryError::Shape("category has no fermion".into()));
    };
    let mut x = vec![vec![0u8; k]; k];
    for g in 0..k {
        for h in 0..k {
            let e = act.eta(p, g, h);
            x[g][h] = if (e - 1.0).norm() < tol {
                0
            } else if (e + 1.0).norm() < tol {
                1
            } else {
                return Err(SymmetryError::NotSign(grp.element(g).into(), grp.element(h).into()));
            };
        }
    }
    for g in 0..k {
        for h in 0..k {
            for l in 0..k {
                let lhs = x[h][l] + x[g][grp.mul(h, l)];
                let rhs = x[grp.mul(g, h)][l] + x[g][h];
                if (lhs + rhs) % 2 != 0 {
                    return Err(SymmetryError::NotCocycle(
                        grp.element(g).into(),
                        grp.element(h).into(),
                        grp.element(l).into(),
                    ));
                }
            }
        }
    }
    let omega: Vec<Vec<u8>> = (0..k).map(|g| (0..k).map(|h| grp.omega(g, h)).collect()).collect();
    let nontrivial = |y: &[Vec<u8>]| cyclic_class(grp, y).unwrap_or_else(|| !is_coboundary(grp, y));
    let eta_class = nontrivial(&x);
    let omega_class = nontrivial(&omega);
    let mut report = Report::new("fermion class");
    let diff: Vec<Vec<u8>> = (0..k).map(|g| (0..k).map(|h| (x[g][h] + omega[g][h]) % 2).collect()).collect();
    if !is_coboundary(grp, &diff) {
        report.push(
            format!(
                "[η_ψ] is {} but ω is {}",
                if eta_class { "nontrivial" } else { "trivial" },
                if omega_class { "nontrivial" } else { "trivial" }
            ),
            None,
        );
    }
    Ok(FermionClass {
        eta_psi_nontrivial: eta_class,
        omega_nontrivial: omega_class,
        report,
    })
}

/// All symmetry consistency checks combined.
pub fn check_all(c: &Category, act: &SymmetryAction, tol: f64) -> Vec<Report> {
    let mut out = vec![
        act.group().validate(),
        check_action_structure(c, act, tol),
        check_ufur(c, act, tol),
        check_u_eta(c, act, tol),
        check_eta_cocycle(c, act, tol),
    ];
    if c.fermion().is_some() {
        match check_fermion_class(c, act, tol) {
            Ok(fc) => out.push(fc.report),
            Err(e) => {
                let mut r = Report::new("fermion class");
                r.push(e.to_string(), None);
                out.push(r);
            }
        }
    }
    out
}

/// Vertex-basis phases `Γ^{ab}_c` and action phases `γ_a(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeTransform {
    n: usize,
    k: usize,
    vertex: Vec<C64>,
    action: Vec<C64>,
}

impl GaugeTransform {
    pub fn identity(n: usize, k: usize) -> Self {
        GaugeTransform {
            n,
            k,
            vertex: vec![C64::new(1.0, 0.0); n * n * n],
            action: vec![C64::new(1.0, 0.0); n * k],
        }
    }

    pub fn vertex(&self, a: usize, b: usize, c: usize) -> C64 {
        self.vertex[(a * self.n + b) * self.n + c]
    }

    pub fn set_vertex(&mut self, a: usize, b: usize, c: usize, v: C64) {
        self.vertex[(a * self.n + b) * self.n + c] = v;
    }

    pub fn action(&self, a: usize, g: usize) -> C64 {
        self.action[a * self.k + g]
    }

    pub fn set_action(&mut self, a: usize, g: usize, v: C64) {
        self.action[a * self.k + g] = v;
    }

    pub fn max_phase_defect(&self) -> f64 {
        self.vertex
            .iter()
            .chain(&self.action)
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `F' = Γ^{ab}_e Γ^{ec}_d F / (Γ^{bc}_f Γ^{af}_d)`, `R'^{ab}_c = Γ^{ba}_c R / Γ^{ab}_c`,
/// `U'_g(a,b;c) = K^{s(g)}(Γ^{ḡa ḡb}_{ḡc}) U / Γ^{ab}_c`; η is unchanged.
pub fn apply_vertex_gauge(c: &Category, act: &SymmetryAction, gauge: &GaugeTransform) -> (Category, SymmetryAction) {
    let mut c2 = c.clone();
    let v = |a, b, x| gauge.vertex(a, b, x);
    c2.fill_f(|[a, b, cc, d, e, f]| v(a, b, e) * v(e, cc, d) * c.f(a, b, cc, d, e, f) / (v(b, cc, f) * v(a, f, d)));
    c2.fill_r(|[a, b, x]| v(b, a, x) * c.r(a, b, x) / v(a, b, x));
    let mut act2 = act.clone();
    let grp = act.group();
    for g in 0..grp.order() {
        let gi = grp.inv(g);
        for [a, b, x] in c.r_channels() {
            let (ia, ib, ix) = (act.act(gi, a), act.act(gi, b), act.act(gi, x));
            let val = conj_if(v(ia, ib, ix), grp.antiunitary(g)) * act.u(g, a, b, x) / v(a, b, x);
            act2.set_u(g, a, b, x, val);
        }
    }
    (c2, act2)
}

/// `U → γ_a γ_b / γ_c · U` and `η_a(g,h) → γ_a(gh) / (γ_a(g) K^{s(g)}(γ_{ḡa}(h))) · η`.
pub fn apply_action_gauge(c: &Category, act: &SymmetryAction, gauge: &GaugeTransform) -> SymmetryAction {
    let mut out = act.clone();
    let grp = act.group();
    let k = grp.order();
    let gam = |a, g| gauge.action(a, g);
    for g in 0..k {
        for [a, b, x] in c.r_channels() {
            out.set_u(g, a, b, x, gam(a, g) * gam(b, g) / gam(x, g) * act.u(g, a, b, x));
        }
    }
    for a in 0..c.rank() {
        for g in 0..k {
            let ia = act.act(grp.inv(g), a);
            for h in 0..k {
                let factor = gam(a, grp.mul(g, h)) / (gam(a, g) * conj_if(gam(ia, h), grp.antiunitary(g)));
                out.set_eta(a, g, h, factor * act.eta(a, g, h));
            }
        }
    }
    out
}

/// A deterministic pseudo-random gauge transformation.
///
/// Phases involving the unit anyon, the identity element, the fermion's
/// action phase and the vertex `Γ^{ψψ}_1` are fixed to 1, which keeps the
/// gauge-fixing conditions and the normalization of the fermion line.
pub fn random_gauge(c: &Category, act: &SymmetryAction, seed: u64) -> GaugeTransform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = c.rank();
    let k = act.group().order();
    let psi = c.fermion();
    let mut gauge = GaugeTransform::identity(n, k);
    for [a, b, x] in c.r_channels() {
        let fixed = a == 0 || b == 0 || (Some(a) == psi && Some(b) == psi);
        let phase = rng.random::<f64>() * 2.0 * PI;
        if !fixed {
            gauge.set_vertex(a, b, x, crate::cis(phase));
        }
    }
    for a in 0..n {
        for g in 0..k {
            let phase = rng.random::<f64>() * 2.0 * PI;
            if a != 0 && g != 0 && Some(a) != psi {
                gauge.set_action(a, g, crate::cis(phase));
            }
        }
    }
    gauge
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum GroupSpec {
    Cyclic { order: usize },
    Table { elements: Vec<String>, mul: Vec<Vec<String>> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum OmegaSpec {
    Class(String),
    Table(Vec<Vec<u8>>),
}

#[derive(Debug, Serialize, Deserialize)]
struct UEntry {
    g: String,
    a: String,
    b: String,
    c: String,
    #[serde(default)]
    mu: u32,
    #[serde(default)]
    nu: u32,
    value: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
struct EtaEntry {
    a: String,
    g: String,
    h: String,
    value: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
struct ActionDefaults {
    #[serde(rename = "U")]
    u: [f64; 2],
    eta: [f64; 2],
}

impl Default for ActionDefaults {
    fn default() -> Self {
        ActionDefaults {
            u: [1.0, 0.0],
            eta: [1.0, 0.0],
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    name: String,
    group: GroupSpec,
    s: Vec<u8>,
    omega: OmegaSpec,
    #[serde(default)]
    lie_sector: LieSector,
    rho: BTreeMap<String, Vec<String>>,
    #[serde(rename = "U", default)]
    u: Vec<UEntry>,
    #[serde(default)]
    eta: Vec<EtaEntry>,
    #[serde(default)]
    charges: Option<BTreeMap<String, String>>,
    #[serde(default)]
    defaults: ActionDefaults,
}

impl SymmetryAction {
    pub fn from_json_str(text: &str, c: &Category) -> Result<Self, SymmetryError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| SymmetryError::Parse(e.to_string()))?;
        let file: ActionFile =
            serde_json::from_value(value).map_err(|e| SymmetryError::Schema(e.to_string()))?;
        file.build(c)
    }

    pub fn to_json(&self, c: &Category) -> serde_json::Value {
        serde_json::to_value(ActionFile::from_action(self, c)).expect("action serializes")
    }

    pub fn to_json_string(&self, c: &Category) -> String {
        serde_json::to_string_pretty(&self.to_json(c)).expect("action serializes")
    }
}

impl ActionFile {
    fn build(self, c: &Category) -> Result<SymmetryAction, SymmetryError> {
        let shape = SymmetryError::Shape;
        let anyon = |name: &str| c.index_of(name).ok_or_else(|| shape(format!("unknown anyon {name:?}")));
        let cyclic_order = match &self.group {
            GroupSpec::Cyclic { order } => Some(*order),
            GroupSpec::Table { .. } => None,
        };
        let omega_class = |cls: &str| match cls {
            "trivial" => Ok(false),
            "nontrivial" => Ok(true),
            other => Err(shape(format!("unknown ω class {other:?}"))),
        };
        let group = match (&self.group, &self.omega) {
            (GroupSpec::Cyclic { order }, OmegaSpec::Class(cls)) => {
                let k = *order;
                if self.s.len() != k || k == 0 {
                    return Err(shape("s must list one value per element".into()));
                }
                let anti = self.s[1 % k] == 1;
                let g = FermionicSymmetry::cyclic(k, anti, omega_class(cls)?, self.lie_sector);
                if (0..k).any(|i| g.s(i) != self.s[i]) {
                    return Err(shape("s is not a homomorphism on the cyclic group".into()));
                }
                g
            }
            (spec, omega) => {
                let (elements, mul) = match spec {
                    GroupSpec::Cyclic { order } => {
                        let g = FermionicSymmetry::cyclic(*order, false, false, self.lie_sector);
                        (g.elements.clone(), g.mul.clone())
                    }
                    GroupSpec::Table { elements, mul } => {
                        let idx = |e: &String| {
                            elements
                                .iter()
                                .position(|x| x == e)
                                .ok_or_else(|| shape(format!("unknown group element {e:?}")))
                        };
                        let mul = mul
                            .iter()
                            .map(|row| row.iter().map(idx).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<Vec<_>, _>>()?;
                        (elements.clone(), mul)
                    }
                };
                let omega = match omega {
                    OmegaSpec::Table(t) => t.clone(),
                    OmegaSpec::Class(cls) if !omega_class(cls)? => vec![vec![0; elements.len()]; elements.len()],
                    OmegaSpec::Class(_) => {
                        return Err(shape("a nontrivial ω class needs a cyclic group or an explicit table".into()))
                    }
                };
                FermionicSymmetry::from_table(self.name.clone(), elements, mul, self.s.clone(), omega, self.lie_sector)?
            }
        };
        let k = group.order();
        let n = c.rank();
        let mut given: HashMap<usize, Vec<usize>> = HashMap::new();
        for (el, images) in &self.rho {
            let g = group.index_of(el).ok_or_else(|| shape(format!("unknown group element {el:?}")))?;
            if images.len() != n {
                return Err(shape(format!("ρ_{el} must list {n} images")));
            }
            given.insert(g, images.iter().map(|x| anyon(x)).collect::<Result<_, _>>()?);
        }
        let rho = if given.len() == k || given.len() == k - 1 && !given.contains_key(&0) {
            (0..k).map(|g| given.get(&g).cloned().unwrap_or_else(|| (0..n).collect())).collect()
        } else if let (Some(_), Some(gen)) = (cyclic_order, given.get(&1)) {
            if given.len() != 1 {
                return Err(shape("ρ must be given for the generator only or for every element".into()));
            }
            SymmetryAction::cyclic_rho(k, gen)
        } else {
            return Err(shape("ρ must be given for the generator only or for every element".into()));
        };
        let mut act = SymmetryAction::new(self.name.clone(), c, group, rho);
        let element = |name: &str| {
            act.group()
                .index_of(name)
                .ok_or_else(|| shape(format!("unknown group element {name:?}")))
        };
        let ud = C64::new(self.defaults.u[0], self.defaults.u[1]);
        let mut u_given = HashMap::new();
        for e in &self.u {
            let key = (element(&e.g)?, anyon(&e.a)?, anyon(&e.b)?, anyon(&e.c)?);
            if !c.fusion().admissible(key.1, key.2, key.3) {
                return Err(shape(format!("U entry ({},{};{}) is not an admissible channel", e.a, e.b, e.c)));
            }
            if e.mu > 0 || e.nu > 0 {
                return Err(shape("U multiplicity index out of range".into()));
            }
            u_given.insert(key, C64::new(e.value[0], e.value[1]));
        }
        let ed = C64::new(self.defaults.eta[0], self.defaults.eta[1]);
        let mut eta_given = HashMap::new();
        for e in &self.eta {
            eta_given.insert((anyon(&e.a)?, element(&e.g)?, element(&e.h)?), C64::new(e.value[0], e.value[1]));
        }
        for g in 0..k {
            for [a, b, x] in c.r_channels() {
                act.set_u(g, a, b, x, u_given.get(&(g, a, b, x)).copied().unwrap_or(ud));
            }
        }
        for a in 0..n {
            for g in 0..k {
                for h in 0..k {
                    act.set_eta(a, g, h, eta_given.get(&(a, g, h)).copied().unwrap_or(ed));
                }
            }
        }
        if let Some(q) = self.charges {
            let mut table = vec![Rational64::zero(); n];
            let mut set = vec![false; n];
            for (name, text) in q {
                let a = anyon(&name)?;
                table[a] = text
                    .trim()
                    .parse::<Rational64>()
                    .map_err(|_| shape(format!("charge {text:?} is not a rational p/q")))?;
                set[a] = true;
            }
            if set.iter().any(|s| !s) {
                return Err(shape("charges must be given for every anyon".into()));
            }
            act.set_charges(Some(table));
        }
        Ok(act)
    }

    fn from_action(act: &SymmetryAction, c: &Category) -> Self {
        let grp = act.group();
        let k = grp.order();
        let n = c.rank();
        let one = C64::new(1.0, 0.0);
        let elements = grp.elements.clone();
        let group = GroupSpec::Table {
            elements: elements.clone(),
            mul: (0..k).map(|g| (0..k).map(|h| elements[grp.mul(g, h)].clone()).collect()).collect(),
        };
        let omega = OmegaSpec::Table(grp.omega.clone());
        let rho = (0..k)
            .map(|g| (elements[g].clone(), (0..n).map(|a| c.label(act.act(g, a)).to_string()).collect()))
            .collect();
        let mut u = Vec::new();
        for g in 0..k {
            for [a, b, x] in c.r_channels() {
                let v = act.u(g, a, b, x);
                if v != one {
                    u.push(UEntry {
                        g: elements[g].clone(),
                        a: c.label(a).into(),
                        b: c.label(b).into(),
                        c: c.label(x).into(),
                        mu: 0,
                        nu: 0,
                        value: [v.re, v.im],
                    });
                }
            }
        }
        let mut eta = Vec::new();
        for a in 0..n {
            for g in 0..k {
                for h in 0..k {
                    let v = act.eta(a, g, h);
                    if v != one {
                        eta.push(EtaEntry {
                            a: c.label(a).into(),
                            g: elements[g].clone(),
                            h: elements[h].clone(),
                            value: [v.re, v.im],
                        });
                    }
                }
            }
        }
        let charges = act.charges().map(|q| {
            q.iter()
                .enumerate()
                .map(|(a, v)| (c.label(a).to_string(), v.to_string()))
                .collect()
        });
        ActionFile {
            name: act.name().to_string(),
            group,
            s: grp.s.clone(),
            omega,
            lie_sector: grp.lie(),
            rho,
            u,
            eta,
            charges,
            defaults: ActionDefaults::default(),
        }
    }
}
