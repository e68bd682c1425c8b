//! Zesting of abelian modular extensions and anomaly-cascade diagnostics.
//!
//! An anyon of a modular extension is even or odd according to its
//! monodromy with `ψ`. Zesting with a phase `b` changes the fusion of two odd
//! anyons to `a₁ ⊗ a₂ ⊗ ψ` and their braiding to
//!
//! ```text
//! R_⊠^{a₁a₂} = b R^{a₁ψ} R^{a₁ψ, a₂} / F^{a₂ ψ a₁}
//! ```
//!
//! The phases in U-symbols, η-symbols and abelian F/R-symbols are roots of
//! unity, so the symmetry equations become linear congruences for their
//! logarithms, solved by [`zmod::solve`].

use crate::abelian::{canonical_category, find_basis};
use crate::algebra::{central_charge_of, AlgebraError, Invariants};
use crate::axioms::{check_hexagon, check_pentagon};
use crate::category::{Category, FusionRules};
use crate::report::Report;
use crate::symmetry::{self, apply_action_gauge, GaugeTransform, SymmetryAction};
use crate::{cis, C64};
use num_rational::Rational64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("category {0} is not abelian")]
    NonAbelian(String),
    #[error("category {0} has no declared fermion")]
    NoFermion(String),
    #[error("grading by ψ is not well defined: {0}")]
    Grading(String),
    #[error("zested theory is inconsistent: {0}")]
    Zest(String),
    #[error("phase {0} is not a root of unity of small order")]
    NotRootOfUnity(C64),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("embedding: {0}")]
    Embedding(String),
    #[error("extension data: {0}")]
    Data(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Linear congruences `A x ≡ r (mod m)`.
pub mod zmod {
    /// One equation as `(variable, coefficient)` pairs.
    pub type Row = Vec<(usize, i64)>;

    fn factor(mut m: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut q = 1;
                while m % p == 0 {
                    m /= p;
                    q *= p;
                }
                out.push((p, q));
            }
            p += 1;
        }
        if m > 1 {
            out.push((m, m));
        }
        out
    }

    fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = egcd(b, a % b);
            (g, y, x - (a / b) * y)
        }
    }

    fn inv_mod(a: i64, m: i64) -> i64 {
        let (g, x, _) = egcd(a as i128, m as i128);
        debug_assert_eq!(g, 1);
        (x.rem_euclid(m as i128)) as i64
    }

    fn valuation(mut x: i64, p: i64) -> u32 {
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    }

    fn solve_prime_power(vars: usize, rows: &[Row], rhs: &[i64], p: i64, q: i64) -> Option<Vec<i64>> {
        let m = rows.len();
        let md = |x: i64| x.rem_euclid(q);
        let mut a = vec![vec![0i64; vars]; m];
        for (i, row) in rows.iter().enumerate() {
            for &(j, c) in row {
                a[i][j] = md(a[i][j] + c);
            }
        }
        let mut r: Vec<i64> = rhs.iter().map(|&x| md(x)).collect();
        let mut qm: Vec<Vec<i64>> = (0..vars).map(|i| (0..vars).map(|j| i64::from(i == j)).collect()).collect();
        let mut pivots = Vec::new();
        let mut t = 0;
        while t < m.min(vars) {
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let v = valuation(x, p);
                        if best.is_none_or(|b| v < b.0) {
                            best = Some((v, i, j));
                        }
                    }
                }
                if best.is_some_and(|b| b.0 == 0) {
                    break;
                }
            }
            let Some((v, i, j)) = best else { break };
            a.swap(t, i);
            r.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            for row in qm.iter_mut() {
                row.swap(t, j);
            }
            let pv = p.pow(v);
            let uinv = inv_mod(a[t][t] / pv, q);
            let pivot_row = a[t].clone();
            for i in t + 1..m {
                if a[i][t] == 0 {
                    continue;
                }
                let f = md((a[i][t] / pv) as i128 as i64 * uinv % q);
                for j in t..vars {
                    if pivot_row[j] != 0 {
                        a[i][j] = md(a[i][j] - ((f as i128 * pivot_row[j] as i128) % q as i128) as i64);
                    }
                }
                r[i] = md(r[i] - ((f as i128 * r[t] as i128) % q as i128) as i64);
            }
            for j in t + 1..vars {
                if a[t][j] == 0 {
                    continue;
                }
                let f = md((a[t][j] / pv) * uinv % q);
                a[t][j] = 0;
                for row in qm.iter_mut() {
                    row[j] = md(row[j] - ((f as i128 * row[t] as i128) % q as i128) as i64);
                }
            }
            pivots.push((pv, uinv));
            t += 1;
        }
        if r.iter().skip(pivots.len()).any(|&x| x != 0) {
            return None;
        }
        let mut y = vec![0i64; vars];
        for (t, &(pv, uinv)) in pivots.iter().enumerate() {
            if r[t] % pv != 0 {
                return None;
            }
            y[t] = md(((r[t] / pv) as i128 * uinv as i128 % q as i128) as i64);
        }
        Some(
            (0..vars)
                .map(|i| {
                    let s: i128 = (0..vars).map(|j| qm[i][j] as i128 * y[j] as i128).sum();
                    s.rem_euclid(q as i128) as i64
                })
                .collect(),
        )
    }

    /// A solution of `Σ_j A_ij x_j ≡ r_i (mod modulus)`, found prime power by
    /// prime power and glued with the Chinese remainder theorem.
    pub fn solve(vars: usize, rows: &[Row], rhs: &[i64], modulus: i64) -> Option<Vec<i64>> {
        assert_eq!(rows.len(), rhs.len());
        let mut x = vec![0i64; vars];
        let mut m: i64 = 1;
        for (p, q) in factor(modulus) {
            let xq = solve_prime_power(vars, rows, rhs, p, q)?;
            let (_, inv_m, _) = egcd(m as i128, q as i128);
            for (xi, &yi) in x.iter_mut().zip(&xq) {
                let diff = (yi as i128 - *xi as i128).rem_euclid(q as i128);
                let k = (diff * inv_m).rem_euclid(q as i128);
                *xi = (*xi as i128 + m as i128 * k) as i64;
            }
            m *= q;
        }
        Some(x)
    }

    /// Whether `x` satisfies the system.
    pub fn satisfies(rows: &[Row], rhs: &[i64], x: &[i64], modulus: i64) -> bool {
        rows.iter().zip(rhs).all(|(row, &r)| {
            let s: i128 = row.iter().map(|&(j, c)| c as i128 * x[j] as i128).sum();
            (s - r as i128).rem_euclid(modulus as i128) == 0
        })
    }
}

const MAX_ROOT_ORDER: i64 = 720;
/// Extra factor on the modulus so that solutions needing finer roots of
/// unity than the input data are still found.
const MODULUS_HEADROOM: i64 = 240;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn root_order(z: C64) -> Option<i64> {
    if (z.norm() - 1.0).abs() > 1e-7 {
        return None;
    }
    let x = z.arg() / (2.0 * PI);
    (1..=MAX_ROOT_ORDER).find(|&n| {
        let y = x * n as f64;
        (y - y.round()).abs() < 1e-7
    })
}

/// Logarithms of roots of unity with a common denominator.
#[derive(Debug, Clone, Copy)]
struct PhaseLog {
    modulus: i64,
}

impl PhaseLog {
    fn covering(phases: impl IntoIterator<Item = C64>) -> Result<Self, ExtensionError> {
        let mut n = 1;
        for z in phases {
            let k = root_order(z).ok_or(ExtensionError::NotRootOfUnity(z))?;
            n = n / gcd(n, k) * k;
        }
        Ok(PhaseLog {
            modulus: n * MODULUS_HEADROOM,
        })
    }

    fn log(&self, z: C64) -> i64 {
        let x = z.arg() / (2.0 * PI) * self.modulus as f64;
        (x.round() as i64).rem_euclid(self.modulus)
    }

    fn exp(&self, k: i64) -> C64 {
        cis(2.0 * PI * k as f64 / self.modulus as f64)
    }
}

fn require_abelian(c: &Category) -> Result<(), ExtensionError> {
    if c.fusion().is_group_like() {
        Ok(())
    } else {
        Err(ExtensionError::NonAbelian(c.name().into()))
    }
}

fn product(c: &Category, a: usize, b: usize) -> usize {
    c.fusion().product(a, b).expect("group-like fusion")
}

/// Even/odd grading of anyons by their monodromy with `ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub odd: Vec<bool>,
}

impl Grading {
    pub fn compute(c: &Category, tol: f64) -> Result<Self, ExtensionError> {
        let psi = c.fermion().ok_or_else(|| ExtensionError::NoFermion(c.name().into()))?;
        let inv = Invariants::compute(c)?;
        let odd = (0..c.rank())
            .map(|a| {
                let m = inv.monodromy(a, psi);
                if (m - 1.0).norm() < tol {
                    Ok(false)
                } else if (m + 1.0).norm() < tol {
                    Ok(true)
                } else {
                    Err(ExtensionError::Grading(format!("monodromy of {} with ψ is {m}", c.label(a))))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Grading { odd })
    }

    /// Whether parities add under fusion.
    pub fn is_homomorphism(&self, rules: &FusionRules) -> bool {
        let n = rules.rank();
        (0..n).all(|a| {
            (0..n).all(|b| {
                rules
                    .channels(a, b)
                    .iter()
                    .all(|&x| self.odd[x] == (self.odd[a] != self.odd[b]))
            })
        })
    }
}

/// Zests an abelian modular category with declared `ψ` by the phase `b`.
///
/// The result is rebuilt in the canonical abelian gauge (trivial F-symbols
/// whenever the twist allows it) and checked against the pentagon and
/// hexagon equations.
pub fn zest(ext: &Category, b: C64, tol: f64) -> Result<Category, ExtensionError> {
    require_abelian(ext)?;
    let psi = ext.fermion().ok_or_else(|| ExtensionError::NoFermion(ext.name().into()))?;
    if product(ext, psi, psi) != 0 {
        return Err(ExtensionError::Grading("ψ does not have order 2".into()));
    }
    let inv = Invariants::compute(ext)?;
    if inv.muger_center(tol).len() != 1 {
        return Err(ExtensionError::Zest(format!("{} is not modular", ext.name())));
    }
    let grading = Grading::compute(ext, tol)?;
    let n = ext.rank();
    let odd = &grading.odd;
    let rules = FusionRules::from_group(n, |x, y| {
        let xy = product(ext, x, y);
        if odd[x] && odd[y] {
            product(ext, xy, psi)
        } else {
            xy
        }
    });
    let theta: Vec<C64> = (0..n)
        .map(|a| {
            if odd[a] {
                let ap = product(ext, a, psi);
                let d = product(ext, ap, a);
                b * ext.r(a, psi, ap) * ext.r(ap, a, d) / ext.f(a, psi, a, d, ap, ap)
            } else {
                inv.theta[a]
            }
        })
        .collect();
    let prod = |x: usize, y: usize| rules.product(x, y).expect("group-like fusion");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let m = |p: usize, q: usize| theta[prod(p, q)] / (theta[p] * theta[q]);
                if (m(x, prod(y, z)) - m(x, y) * m(x, z)).norm() > tol {
                    return Err(ExtensionError::Zest(format!("b = {b} does not give a quadratic form")));
                }
            }
        }
    }
    let basis = find_basis(&rules).ok_or_else(|| ExtensionError::Zest("zested fusion is not a group".into()))?;
    let name = format!("{}_zested", ext.name());
    let cat = canonical_category(&name, ext.labels().to_vec(), rules, &basis, &theta, Some(psi));
    for report in [check_pentagon(&cat, tol), check_hexagon(&cat, tol)] {
        if !report.passed() {
            return Err(ExtensionError::Zest(format!("{} fails for b = {b}", report.check)));
        }
    }
    let zinv = Invariants::compute(&cat)?;
    if zinv.muger_center(tol).len() != 1 {
        return Err(ExtensionError::Zest(format!("zested theory is not modular for b = {b}")));
    }
    Ok(cat)
}

/// A consistent zest with its parameter and central charge.
#[derive(Debug, Clone)]
pub struct ZestCandidate {
    pub b: C64,
    pub category: Category,
    pub central_charge: Rational64,
}

/// Zests by every 16th root of unity and keeps the consistent results.
pub fn zest_orbit(ext: &Category, tol: f64) -> Result<Vec<ZestCandidate>, ExtensionError> {
    require_abelian(ext)?;
    let mut out = Vec::new();
    for k in 0..16 {
        let b = cis(2.0 * PI * k as f64 / 16.0);
        if let Ok(category) = zest(ext, b, tol) {
            let central_charge = central_charge_of(&Invariants::compute(&category)?)?;
            out.push(ZestCandidate {
                b,
                category,
                central_charge,
            });
        }
    }
    Ok(out)
}

/// The first zest (in order of `arg b`) with the requested central charge.
pub fn zest_to_central_charge(ext: &Category, target: Rational64, tol: f64) -> Result<ZestCandidate, ExtensionError> {
    zest_orbit(ext, tol)?
        .into_iter()
        .find(|z| z.central_charge == target)
        .ok_or_else(|| ExtensionError::NoSolution(format!("no zest of {} has c = {target}", ext.name())))
}

/// Checks that `embedding` identifies `smtc` with a full sub-category of
/// `ext`: fusion, ψ, twists, R-symbols and F-symbols must agree.
pub fn embed_check(smtc: &Category, ext: &Category, embedding: &[usize], tol: f64) -> Report {
    let mut report = Report::new("embedding");
    let n = smtc.rank();
    if embedding.len() != n || embedding.iter().any(|&x| x >= ext.rank()) {
        report.push("embedding has the wrong size or points outside the extension", None);
        return report;
    }
    let mut seen = vec![false; ext.rank()];
    for &x in embedding {
        if seen[x] {
            report.push(format!("{} is hit twice", ext.label(x)), None);
            return report;
        }
        seen[x] = true;
    }
    let e = |a: usize| embedding[a];
    if e(0) != 0 {
        report.push("unit is not sent to the unit", None);
    }
    if let (Some(p), Some(q)) = (smtc.fermion(), ext.fermion()) {
        if e(p) != q {
            report.push("ψ is not sent to ψ", None);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                if smtc.fusion().get(a, b, x) != ext.fusion().get(e(a), e(b), e(x)) {
                    report.push(
                        format!("fusion ({},{};{}) differs", smtc.label(a), smtc.label(b), smtc.label(x)),
                        None,
                    );
                }
            }
            let image_closed = ext.fusion().channels(e(a), e(b)).iter().all(|&y| seen[y]);
            if !image_closed {
                report.push(format!("image is not closed under {}×{}", smtc.label(a), smtc.label(b)), None);
            }
        }
    }
    match (Invariants::compute(smtc), Invariants::compute(ext)) {
        (Ok(si), Ok(ei)) => {
            for a in 0..n {
                let dev = (si.theta[a] - ei.theta[e(a)]).norm();
                if dev > tol {
                    report.mismatch(format!("twist of {}", smtc.label(a)), dev);
                }
            }
        }
        _ => report.push("quantum dimensions did not converge", None),
    }
    for ([a, b, x], v) in smtc.r_entries() {
        let dev = (v - ext.r(e(a), e(b), e(x))).norm();
        if dev > tol {
            report.mismatch(format!("R^{{{},{}}}_{}", smtc.label(a), smtc.label(b), smtc.label(x)), dev);
        }
    }
    for ([a, b, cc, d, x, y], v) in smtc.f_entries() {
        let dev = (v - ext.f(e(a), e(b), e(cc), e(d), e(x), e(y))).norm();
        if dev > tol {
            report.mismatch(
                format!(
                    "F^{{{},{},{}}}_{{{};{},{}}}",
                    smtc.label(a),
                    smtc.label(b),
                    smtc.label(cc),
                    smtc.label(d),
                    smtc.label(x),
                    smtc.label(y)
                ),
                dev,
            );
        }
    }
    report
}

/// First cascade layer: can some minimal modular extension carry
/// time reversal, i.e. have `c ≡ 0 (mod 8)`?
#[derive(Debug, Clone)]
pub struct Layer1Verdict {
    pub central_charges: Vec<Rational64>,
    /// Minimal extensions realize `c₀ + k/2` for every `k`, so `c ≡ 0` is
    /// reachable from a candidate exactly when `2c₀` is an integer.
    pub obstructed: bool,
}

pub fn cascade_layer1(smtc: &Category, candidates: &[Category]) -> Result<Layer1Verdict, ExtensionError> {
    if candidates.is_empty() {
        return Err(ExtensionError::Data("no extension candidates".into()));
    }
    let base = Invariants::compute(smtc)?;
    let mut central_charges = Vec::new();
    for cand in candidates {
        let inv = Invariants::compute(cand)?;
        let ratio = inv.total_dim.powi(2) / base.total_dim.powi(2);
        if (ratio - 2.0).abs() > 1e-6 {
            return Err(ExtensionError::Data(format!(
                "{} is not a minimal extension of {}: D² ratio {ratio}",
                cand.name(),
                smtc.name()
            )));
        }
        central_charges.push(central_charge_of(&inv)?);
    }
    let obstructed = central_charges.iter().all(|c| !(c * 2).is_integer());
    Ok(Layer1Verdict {
        central_charges,
        obstructed,
    })
}

/// The extension together with its zest orbit, when it is abelian.
pub fn extension_candidates(ext: &Category, tol: f64) -> Result<Vec<Category>, ExtensionError> {
    let mut out = vec![ext.clone()];
    if ext.fusion().is_group_like() {
        out.extend(zest_orbit(ext, tol)?.into_iter().map(|z| z.category));
    }
    Ok(out)
}

/// Third cascade layer: whether the η-symbols of the super-MTC extend to
/// the modular extension.
#[derive(Debug, Clone)]
pub struct Layer3Verdict {
    pub obstructed: bool,
    /// The extension action with solved η-symbols, when unobstructed.
    pub extended: Option<SymmetryAction>,
}

fn same_group(a: &SymmetryAction, b: &SymmetryAction) -> bool {
    let (g, h) = (a.group(), b.group());
    g.order() == h.order()
        && (0..g.order()).all(|x| {
            g.antiunitary(x) == h.antiunitary(x) && (0..g.order()).all(|y| g.mul(x, y) == h.mul(x, y))
        })
}

/// Index of `η_a(g,h)` among the unknowns; `None` for the normalized ones.
fn eta_var(a: usize, g: usize, h: usize, k: usize) -> Option<usize> {
    if a == 0 || g == 0 || h == 0 {
        None
    } else {
        Some(((a - 1) * (k - 1) + (g - 1)) * (k - 1) + (h - 1))
    }
}

fn push_term(row: &mut zmod::Row, var: Option<usize>, coeff: i64) {
    if let Some(v) = var {
        row.push((v, coeff));
    }
}

/// Equations for `η` on an abelian category given ρ and U: the U-η relation
/// and the η cocycle condition, plus any pinned values.
fn eta_system(
    c: &Category,
    act: &SymmetryAction,
    logs: &PhaseLog,
    pinned: &[(usize, usize, usize, i64)],
) -> (usize, Vec<zmod::Row>, Vec<i64>) {
    let grp = act.group();
    let k = grp.order();
    let n = c.rank();
    let vars = (n - 1) * (k - 1) * (k - 1);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in 0..k {
        let gi = grp.inv(g);
        let s = grp.antiunitary(g);
        for h in 0..k {
            let gh = grp.mul(g, h);
            for [a, b, x] in c.r_channels() {
                let (ia, ib, ix) = (act.act(gi, a), act.act(gi, b), act.act(gi, x));
                let target = act.u(g, a, b, x).inv()
                    * crate::conj_if(act.u(h, ia, ib, ix).inv(), s)
                    * act.u(gh, a, b, x);
                let mut row = Vec::new();
                push_term(&mut row, eta_var(a, g, h, k), 1);
                push_term(&mut row, eta_var(b, g, h, k), 1);
                push_term(&mut row, eta_var(x, g, h, k), -1);
                rows.push(row);
                rhs.push(logs.log(target));
            }
        }
    }
    for a in 0..n {
        for g in 0..k {
            let ga = act.act(grp.inv(g), a);
            let sign = if grp.antiunitary(g) { -1 } else { 1 };
            for h in 0..k {
                for l in 0..k {
                    let mut row = Vec::new();
                    push_term(&mut row, eta_var(a, g, h, k), 1);
                    push_term(&mut row, eta_var(a, grp.mul(g, h), l, k), 1);
                    push_term(&mut row, eta_var(a, g, grp.mul(h, l), k), -1);
                    push_term(&mut row, eta_var(ga, h, l, k), -sign);
                    rows.push(row);
                    rhs.push(0);
                }
            }
        }
    }
    for &(a, g, h, value) in pinned {
        let mut row = Vec::new();
        push_term(&mut row, eta_var(a, g, h, k), 1);
        rows.push(row);
        rhs.push(value);
    }
    (vars, rows, rhs)
}

fn with_eta(act: &SymmetryAction, logs: &PhaseLog, x: &[i64]) -> SymmetryAction {
    let mut out = act.clone();
    let k = act.group().order();
    for a in 0..act.rank() {
        for g in 0..k {
            for h in 0..k {
                let v = eta_var(a, g, h, k).map_or(C64::new(1.0, 0.0), |i| logs.exp(x[i]));
                out.set_eta(a, g, h, v);
            }
        }
    }
    out
}

fn action_phases(c: &Category, act: &SymmetryAction) -> Vec<C64> {
    let mut out: Vec<C64> = c.f_entries().map(|(_, v)| v).chain(c.r_entries().map(|(_, v)| v)).collect();
    let k = act.group().order();
    for g in 0..k {
        for [a, b, x] in c.r_channels() {
            out.push(act.u(g, a, b, x));
        }
    }
    for a in 0..c.rank() {
        for g in 0..k {
            for h in 0..k {
                out.push(act.eta(a, g, h));
            }
        }
    }
    out
}

pub fn cascade_layer3(
    smtc: &Category,
    act: &SymmetryAction,
    ext: &Category,
    ext_act: &SymmetryAction,
    embedding: &[usize],
    tol: f64,
) -> Result<Layer3Verdict, ExtensionError> {
    require_abelian(ext)?;
    if !same_group(act, ext_act) {
        return Err(ExtensionError::Data("actions use different symmetry groups".into()));
    }
    let embed = embed_check(smtc, ext, embedding, tol);
    if !embed.passed() {
        return Err(ExtensionError::Embedding(embed.to_string()));
    }
    let grp = act.group();
    let k = grp.order();
    let n = smtc.rank();
    for g in 0..k {
        for a in 0..n {
            if embedding[act.act(g, a)] != ext_act.act(g, embedding[a]) {
                return Err(ExtensionError::Data(format!(
                    "ρ_{} on the extension does not restrict to ρ on {}",
                    grp.element(g),
                    smtc.label(a)
                )));
            }
        }
    }
    for r in symmetry::check_all(smtc, act, tol) {
        if !r.passed() {
            return Err(ExtensionError::Data(format!("super-MTC action fails {}", r.check)));
        }
    }
    let logs = PhaseLog::covering(action_phases(smtc, act).into_iter().chain(action_phases(ext, ext_act)))?;

    // Match the extension's U-symbols to the super-MTC's on the image by an
    // action gauge transformation γ supported on the image.
    let slot = |a: usize| a - 1;
    let vars = (n - 1) * k;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in 0..k {
        for [a, b, x] in smtc.r_channels() {
            let mut row = Vec::new();
            for (y, coeff) in [(a, 1), (b, 1), (x, -1)] {
                if y != 0 {
                    row.push((slot(y) * k + g, coeff));
                }
            }
            let (ea, eb, ex) = (embedding[a], embedding[b], embedding[x]);
            rows.push(row);
            rhs.push(logs.log(act.u(g, a, b, x) / ext_act.u(g, ea, eb, ex)));
        }
    }
    let gamma = zmod::solve(vars, &rows, &rhs, logs.modulus)
        .ok_or_else(|| ExtensionError::NoSolution("U-symbols do not agree up to gauge on the image".into()))?;
    let mut gauge = GaugeTransform::identity(ext.rank(), k);
    for a in 1..n {
        for g in 0..k {
            gauge.set_action(embedding[a], g, logs.exp(gamma[slot(a) * k + g]));
        }
    }
    let aligned = apply_action_gauge(ext, ext_act, &gauge);

    let mut pinned = Vec::new();
    for a in 0..n {
        for g in 0..k {
            for h in 0..k {
                if a != 0 && g != 0 && h != 0 {
                    pinned.push((embedding[a], g, h, logs.log(act.eta(a, g, h))));
                }
            }
        }
    }
    let (vars, rows, rhs) = eta_system(ext, &aligned, &logs, &pinned);
    match zmod::solve(vars, &rows, &rhs, logs.modulus) {
        Some(x) => {
            let extended = with_eta(&aligned, &logs, &x);
            Ok(Layer3Verdict {
                obstructed: false,
                extended: Some(extended),
            })
        }
        None => Ok(Layer3Verdict {
            obstructed: true,
            extended: None,
        }),
    }
}

/// Solves the UFUR equations for the U-symbols of an abelian category with
/// a given permutation action, keeping `U_g(1,b) = U_g(a,1) = 1`.
pub fn solve_u_symbols(c: &Category, act: &SymmetryAction, tol: f64) -> Result<SymmetryAction, ExtensionError> {
    require_abelian(c)?;
    let grp = act.group();
    let n = c.rank();
    let logs = PhaseLog::covering(c.f_entries().map(|(_, v)| v).chain(c.r_entries().map(|(_, v)| v)))?;
    let var = |a: usize, b: usize| if a == 0 || b == 0 { None } else { Some((a - 1) * (n - 1) + (b - 1)) };
    let vars = (n - 1) * (n - 1);
    let mut out = act.clone();
    for g in 0..grp.order() {
        let s = grp.antiunitary(g);
        let m = |x: usize| act.act(g, x);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let e = product(c, a, b);
                for cc in 0..n {
                    let f = product(c, b, cc);
                    let d = product(c, e, cc);
                    let mut row = Vec::new();
                    push_term(&mut row, var(a, b), 1);
                    push_term(&mut row, var(e, cc), 1);
                    push_term(&mut row, var(b, cc), -1);
                    push_term(&mut row, var(a, f), -1);
                    rows.push(row);
                    let target = crate::conj_if(c.f(a, b, cc, d, e, f), s) / c.f(m(a), m(b), m(cc), m(d), m(e), m(f));
                    rhs.push(logs.log(target));
                }
                let mut row = Vec::new();
                push_term(&mut row, var(b, a), 1);
                push_term(&mut row, var(a, b), -1);
                rows.push(row);
                rhs.push(logs.log(crate::conj_if(c.r(a, b, e), s) / c.r(m(a), m(b), m(e))));
            }
        }
        let x = zmod::solve(vars, &rows, &rhs, logs.modulus)
            .ok_or_else(|| ExtensionError::NoSolution(format!("no U-symbols for {}", grp.element(g))))?;
        for a in 0..n {
            for b in 0..n {
                let v = var(a, b).map_or(C64::new(1.0, 0.0), |i| logs.exp(x[i]));
                out.set_u(g, m(a), m(b), m(product(c, a, b)), v);
            }
        }
    }
    let report = symmetry::check_ufur(c, &out, tol);
    if !report.passed() {
        return Err(ExtensionError::NoSolution(format!("solved U-symbols fail UFUR: {report}")));
    }
    Ok(out)
}

/// Solves for η-symbols compatible with the U-symbols of an abelian action.
/// When the category has a fermion and `ω` is trivial, `η_ψ = 1` is tried
/// first.
pub fn solve_eta_symbols(c: &Category, act: &SymmetryAction, tol: f64) -> Result<SymmetryAction, ExtensionError> {
    require_abelian(c)?;
    let grp = act.group();
    let k = grp.order();
    let logs = PhaseLog::covering(action_phases(c, act))?;
    let omega_trivial = (0..k).all(|g| (0..k).all(|h| grp.omega(g, h) == 0));
    let mut attempts = Vec::new();
    if let (Some(p), true) = (c.fermion(), omega_trivial) {
        let pins: Vec<_> = (1..k).flat_map(|g| (1..k).map(move |h| (p, g, h, 0))).collect();
        attempts.push(pins);
    }
    attempts.push(Vec::new());
    for pinned in attempts {
        let (vars, rows, rhs) = eta_system(c, act, &logs, &pinned);
        if let Some(x) = zmod::solve(vars, &rows, &rhs, logs.modulus) {
            let out = with_eta(act, &logs, &x);
            let ok = symmetry::check_all(c, &out, tol).iter().all(|r| r.passed());
            if ok {
                return Ok(out);
            }
        }
    }
    Err(ExtensionError::NoSolution("no consistent η-symbols".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_solves_small_systems() {
        let rows = vec![vec![(0, 2), (1, 1)], vec![(0, 1), (1, 3)]];
        let rhs = vec![3, 4];
        let x = zmod::solve(2, &rows, &rhs, 12).unwrap();
        assert!(zmod::satisfies(&rows, &rhs, &x, 12));
        assert!(zmod::solve(1, &[vec![(0, 2)]], &[1], 4).is_none());
        let x = zmod::solve(1, &[vec![(0, 2)]], &[2], 4).unwrap();
        assert_eq!(x[0] * 2 % 4, 2);
    }

    #[test]
    fn root_orders() {
        assert_eq!(root_order(C64::new(1.0, 0.0)), Some(1));
        assert_eq!(root_order(cis(PI / 20.0)), Some(40));
        assert_eq!(root_order(cis(1.0)), None);
    }
}
