//! Closed-form anomaly indicators and partition functions.
//!
//! * pin⁺ (`ℤ/2^T`, `T² = (-1)^F`): `ℐ = (Z₁ + iZ₂)/√2` with
//!   `Z₁ = D⁻¹ Σ_{ᵀa=a} d_a θ_a η_a(T,T)` and
//!   `Z₂ = D⁻¹ Σ_{ᵀa=a×ψ} d_a θ_a η_a(T,T) U_T(a,ψ;a×ψ) F^{aψψ}_{a;a×ψ,1}`.
//! * epin (`ℤ/4^T × ℤ/2^f`): `ℐ = (Z₁ - Z₂ + iZ₃ + iZ₄)/2`, each `Z_i` a sum
//!   over `(a, b, u, y, z)` split by how `T` acts on `b` and `z`.
//! * `Z(ℂP²) = (√2 D)⁻¹ Σ_a d_a² θ_a e^{2πi q_a}` and
//!   `Z(S²×S²) = (2D)⁻¹ Σ_{a,b} d_a d_b S_ab e^{4πi q_a} e^{4πi q_b}`.

use crate::algebra::{AlgebraError, Invariants};
use crate::category::Category;
use crate::symmetry::{self, LieSector, SymmetryAction};
use crate::{cis, C64};
use num_rational::Rational64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Error)]
pub enum IndicatorError {
    #[error("wrong symmetry type: {0}")]
    WrongSymmetry(String),
    #[error("inconsistent action: {0}")]
    Inconsistent(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("invalid charge table: {0}")]
    InvalidCharges(String),
    #[error("phase {value} is not on the grid of order {order}")]
    OffGrid { value: C64, order: u32 },
    #[error("value {0} does not have unit modulus")]
    NotUnit(C64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "Z16_pinplus")]
    Z16PinPlus,
    #[serde(rename = "Z4_epin")]
    Z4Epin,
    #[serde(rename = "Z2")]
    Z2,
    #[serde(rename = "U1")]
    U1,
    #[serde(rename = "Z8xZ2_pinc")]
    Z8xZ2Pinc,
    #[serde(rename = "Z2cubed")]
    Z2Cubed,
    #[serde(rename = "Z4xZ2")]
    Z4xZ2,
    #[serde(rename = "composite")]
    Composite,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Z16PinPlus => "Z16_pinplus",
            Classification::Z4Epin => "Z4_epin",
            Classification::Z2 => "Z2",
            Classification::U1 => "U1",
            Classification::Z8xZ2Pinc => "Z8xZ2_pinc",
            Classification::Z2Cubed => "Z2cubed",
            Classification::Z4xZ2 => "Z4xZ2",
            Classification::Composite => "composite",
        };
        f.write_str(s)
    }
}

/// An extracted anomaly class: an integer modulo the generator order, or an
/// angle for U(1)-valued quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Nu {
    Class(u32),
    Angle(f64),
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nu::Class(k) => write!(f, "{k}"),
            Nu::Angle(a) => write!(f, "{a:.10}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorResult {
    pub manifold: String,
    #[serde(serialize_with = "ser_c64")]
    pub value: C64,
    pub classification: Classification,
    /// Order of the cyclic factor `nu` lives in.
    pub order: Option<u32>,
    pub nu: Option<Nu>,
    #[serde(serialize_with = "ser_c64s")]
    pub shadows: Vec<C64>,
}

fn ser_c64<S: serde::Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_c64s<S: serde::Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

/// `ν = round(order · arg(value) / 2π) mod order`, rejecting values off the
/// grid of `order`-th roots of unity.
pub fn anomaly_class(value: C64, order: u32) -> Result<u32, IndicatorError> {
    if (value.norm() - 1.0).abs() > 1e-6 {
        return Err(IndicatorError::NotUnit(value));
    }
    let raw = value.arg() * f64::from(order) / (2.0 * PI);
    let k = raw.round();
    if (raw - k).abs() > 1e-6 * f64::from(order) {
        return Err(IndicatorError::OffGrid { value, order });
    }
    Ok((k as i64).rem_euclid(i64::from(order)) as u32)
}

fn require_consistent(c: &Category, act: &SymmetryAction, tol: f64) -> Result<(), IndicatorError> {
    for r in symmetry::check_all(c, act, tol) {
        if !r.passed() {
            let first = r.violations.first().map(|v| v.message.clone()).unwrap_or_default();
            return Err(IndicatorError::Inconsistent(format!("{} check failed: {first}", r.check)));
        }
    }
    Ok(())
}

fn fermion(c: &Category) -> Result<usize, IndicatorError> {
    c.fermion().ok_or_else(|| IndicatorError::MissingData("category has no fermion".into()))
}

fn inv_or_zero(z: C64) -> C64 {
    if z == C64::new(0.0, 0.0) {
        z
    } else {
        z.inv()
    }
}

/// The antiunitary generator `T` of a `ℤ/2` (with `ω` nontrivial) group.
fn pin_plus_generator(act: &SymmetryAction) -> Result<usize, IndicatorError> {
    let g = act.group();
    if g.order() != 2 || !g.antiunitary(1) || g.omega(1, 1) != 1 {
        return Err(IndicatorError::WrongSymmetry(format!(
            "pin+ needs Z2 with antiunitary T and T² = (-1)^F, got {}",
            g.name()
        )));
    }
    Ok(1)
}

/// Pin⁺ indicator on data already known to be consistent.
fn pin_plus_value(c: &Category, act: &SymmetryAction, inv: &Invariants) -> Result<(C64, C64, C64), IndicatorError> {
    let t = pin_plus_generator(act)?;
    let psi = fermion(c)?;
    let mut z1 = C64::new(0.0, 0.0);
    let mut z2 = C64::new(0.0, 0.0);
    for a in 0..c.rank() {
        let ta = act.act(t, a);
        let ap = c.times_fermion(a).expect("ψ is a simple current");
        let w = inv.theta[a] * inv.d[a] * act.eta(a, t, t);
        if ta == a {
            z1 += w;
        } else if ta == ap {
            z2 += w * act.u(t, a, psi, ap) * c.f(a, psi, psi, a, ap, 0);
        }
    }
    z1 /= inv.total_dim;
    z2 /= inv.total_dim;
    Ok(((z1 + I * z2) / 2f64.sqrt(), z1, z2))
}

pub fn indicator_pin_plus(c: &Category, act: &SymmetryAction, tol: f64) -> Result<IndicatorResult, IndicatorError> {
    pin_plus_generator(act)?;
    require_consistent(c, act, tol)?;
    let inv = Invariants::compute(c)?;
    let (value, z1, z2) = pin_plus_value(c, act, &inv)?;
    Ok(IndicatorResult {
        manifold: "RP4".into(),
        value,
        classification: Classification::Z16PinPlus,
        order: Some(16),
        nu: Some(Nu::Class(anomaly_class(value, 16)?)),
        shadows: vec![z1, z2],
    })
}

/// The antiunitary order-4 generator of a `ℤ/4^T` group with trivial `ω`.
fn epin_generator(act: &SymmetryAction) -> Result<usize, IndicatorError> {
    let g = act.group();
    let t = (0..g.order()).find(|&x| g.antiunitary(x) && g.element_order(x) == 4 && g.order() == 4);
    let omega_trivial = (0..g.order()).all(|x| (0..g.order()).all(|y| g.omega(x, y) == 0));
    match t {
        Some(t) if omega_trivial => Ok(t),
        _ => Err(IndicatorError::WrongSymmetry(format!(
            "epin needs Z4 with antiunitary generator and trivial ω, got {}",
            g.name()
        ))),
    }
}

/// The four bosonic shadows `Z₁..Z₄` of the epin indicator.
pub fn epin_shadows(c: &Category, act: &SymmetryAction, inv: &Invariants) -> Result<[C64; 4], IndicatorError> {
    let t = epin_generator(act)?;
    let psi = fermion(c)?;
    let grp = act.group();
    let t2 = grp.mul(t, t);
    let rules = c.fusion();
    let n = c.rank();
    let tp = |k: usize, x: usize| act.act_power(t, k, x);
    let xp = |x: usize| c.times_fermion(x).expect("ψ is a simple current");
    let ui = |a: usize, b: usize, x: usize| inv_or_zero(act.u(t, a, b, x));
    let mut z = [C64::new(0.0, 0.0); 4];
    for a in 0..n {
        let (ta, t2a, t3a) = (tp(1, a), tp(2, a), tp(3, a));
        let eta_part = (act.eta(a, t, t) * act.eta(t2a, t, t) * act.eta(t2a, t2, t2)).conj();
        for &y in rules.channels(a, t2a) {
            let (ty, t2y) = (tp(1, y), tp(2, y));
            let y_part = (c.r(ta, t3a, ty) * ui(ta, t3a, ty)).conj() * ui(a, t2a, t2y) * eta_part * inv.d[a];
            if y_part == C64::new(0.0, 0.0) {
                continue;
            }
            for b in 0..n {
                let tb = tp(1, b);
                let bp = xp(b);
                for &u in rules.channels(b, a) {
                    for &tz in rules.channels(b, y) {
                        if !rules.admissible(u, t2a, tz) {
                            continue;
                        }
                        let zz = tp(3, tz);
                        let base = y_part * inv.theta[u] / inv.theta[b]
                            * c.f(b, a, t2a, tz, u, y).conj()
                            * c.f(b, a, t2a, tz, u, t2y)
                            * ui(b, t2y, tz);
                        if base == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let zp = xp(zz);
                        if tb == b && tz == zz {
                            z[0] += base * ui(b, ty, tz).conj();
                        } else if tb == bp && tz == zp {
                            z[1] += base
                                * c.f(psi, tb, y, zp, b, zz).conj()
                                * c.f(psi, tb, ty, zp, b, zz)
                                * ui(b, ty, tz).conj();
                        } else if tb == b && tz == zp {
                            z[2] += base
                                * c.f(psi, b, y, zz, bp, zp)
                                * c.f(psi, b, ty, zp, bp, zz)
                                * c.f(psi, psi, zz, zz, 0, zp).conj()
                                * ui(psi, b, bp).conj()
                                * ui(bp, ty, tz).conj();
                        } else if tb == bp && tz == zz {
                            z[3] += base
                                * c.f(psi, psi, b, b, 0, bp).conj()
                                * ui(psi, b, bp).conj()
                                * ui(bp, ty, tz).conj();
                        }
                    }
                }
            }
        }
    }
    let d2 = inv.total_dim * inv.total_dim;
    Ok(z.map(|x| x / d2))
}

/// `(Z₁ - Z₂ + φZ₃ + φZ₄)/2` where `φ` is the spin-structure phase.
pub fn assemble_epin(z: &[C64; 4], spin_phase: C64) -> C64 {
    (z[0] - z[1] + spin_phase * z[2] + spin_phase * z[3]) / 2.0
}

/// Epin indicator with the default spin-structure phase `+i`.
pub fn indicator_epin(c: &Category, act: &SymmetryAction, tol: f64) -> Result<IndicatorResult, IndicatorError> {
    indicator_epin_with_phase(c, act, I, tol)
}

pub fn indicator_epin_with_phase(
    c: &Category,
    act: &SymmetryAction,
    spin_phase: C64,
    tol: f64,
) -> Result<IndicatorResult, IndicatorError> {
    epin_generator(act)?;
    require_consistent(c, act, tol)?;
    let inv = Invariants::compute(c)?;
    let z = epin_shadows(c, act, &inv)?;
    let value = assemble_epin(&z, spin_phase);
    Ok(IndicatorResult {
        manifold: "RP4_epin".into(),
        value,
        classification: Classification::Z4Epin,
        order: Some(4),
        nu: Some(Nu::Class(anomaly_class(value, 4)?)),
        shadows: z.to_vec(),
    })
}

fn charge_phase(q: Rational64, times: i64) -> C64 {
    cis(2.0 * PI * (*q.numer() as f64) * times as f64 / (*q.denom() as f64))
}

pub fn partition_cp2_with(inv: &Invariants, q: &[Rational64]) -> C64 {
    let sum: C64 = (0..inv.d.len())
        .map(|a| inv.theta[a] * charge_phase(q[a], 1) * (inv.d[a] * inv.d[a]))
        .sum();
    sum / (2f64.sqrt() * inv.total_dim)
}

pub fn partition_s2s2_with(inv: &Invariants, q: &[Rational64]) -> C64 {
    let n = inv.d.len();
    let mut sum = C64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            sum += inv.s[(a, b)] * charge_phase(q[a], 2) * charge_phase(q[b], 2) * (inv.d[a] * inv.d[b]);
        }
    }
    sum / (2.0 * inv.total_dim)
}

/// Checks that `q` has one entry per anyon, is additive mod 1 under fusion
/// and gives the fermion charge 1/2.
pub fn validate_charges(c: &Category, q: &[Rational64]) -> Result<(), IndicatorError> {
    if q.len() != c.rank() {
        return Err(IndicatorError::InvalidCharges(format!("{} charges for {} anyons", q.len(), c.rank())));
    }
    if let Some(psi) = c.fermion() {
        if !(q[psi] - Rational64::new(1, 2)).is_integer() {
            return Err(IndicatorError::InvalidCharges(format!("q_{} = {} is not 1/2", c.label(psi), q[psi])));
        }
    }
    for [a, b, x] in c.r_channels() {
        if !(q[a] + q[b] - q[x]).is_integer() {
            return Err(IndicatorError::InvalidCharges(format!(
                "q_{} + q_{} != q_{} mod 1",
                c.label(a),
                c.label(b),
                c.label(x)
            )));
        }
    }
    Ok(())
}

pub fn partition_cp2(c: &Category, q: &[Rational64]) -> Result<C64, IndicatorError> {
    validate_charges(c, q)?;
    Ok(partition_cp2_with(&Invariants::compute(c)?, q))
}

pub fn partition_s2s2(c: &Category, q: &[Rational64]) -> Result<C64, IndicatorError> {
    validate_charges(c, q)?;
    Ok(partition_s2s2_with(&Invariants::compute(c)?, q))
}

pub fn partition_s4() -> C64 {
    C64::new(1.0, 0.0)
}

fn unit_angle(z: C64) -> Result<f64, IndicatorError> {
    if (z.norm() - 1.0).abs() > 1e-6 {
        return Err(IndicatorError::NotUnit(z));
    }
    Ok(wrap_angle(z.arg()))
}

/// Reduces an angle to `[0, 2π)`, sending values within `1e-12` of `2π` to 0.
fn wrap_angle(x: f64) -> f64 {
    let a = x.rem_euclid(2.0 * PI);
    if 2.0 * PI - a < 1e-12 {
        0.0
    } else {
        a
    }
}

/// `(Θ₁, Θ₂)` with `e^{iΘ₁} = Z(S²×S²)/Z(ℂP²)⁸`, `e^{iΘ₂} = Z(ℂP²)`.
pub fn class_a_theta(c: &Category, q: &[Rational64]) -> Result<(f64, f64), IndicatorError> {
    validate_charges(c, q)?;
    let inv = Invariants::compute(c)?;
    let cp2 = partition_cp2_with(&inv, q);
    let s2s2 = partition_s2s2_with(&inv, q);
    let t2 = unit_angle(cp2)?;
    let t1 = unit_angle(s2s2 / cp2.powu(8))?;
    Ok((t1, t2))
}

/// `(Θ₁, Θ₂)` with `e^{iΘ₂} = Z(ℂP²)` and `Θ₁ = -4Θ₂`.
pub fn class_c_theta(c: &Category, q: &[Rational64]) -> Result<(f64, f64), IndicatorError> {
    validate_charges(c, q)?;
    let inv = Invariants::compute(c)?;
    let t2 = unit_angle(partition_cp2_with(&inv, q))?;
    Ok((wrap_angle(-4.0 * t2), t2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HallClass {
    A,
    C,
}

/// Thermal and electric Hall conductances on the `1/16` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HallConductance {
    #[serde(serialize_with = "ser_rational")]
    pub kappa: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub sigma_h: Rational64,
    /// Both quantities are defined modulo this integer.
    pub modulus: i64,
}

fn ser_rational<S: serde::Serializer>(q: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn snap16(x: f64, modulus: i64) -> Result<Rational64, IndicatorError> {
    let k = (x * 16.0).round();
    if (x * 16.0 - k).abs() > 16e-6 {
        return Err(IndicatorError::OffGrid {
            value: cis(2.0 * PI * x),
            order: 16,
        });
    }
    Ok(Rational64::new((k as i64).rem_euclid(16 * modulus), 16))
}

pub fn hall_conductance(theta: (f64, f64), class: HallClass) -> Result<HallConductance, IndicatorError> {
    let (t1, t2) = theta;
    match class {
        HallClass::A => Ok(HallConductance {
            kappa: snap16(t1 / (2.0 * PI), 1)?,
            sigma_h: snap16((8.0 * t2 + t1) / (2.0 * PI), 1)?,
            modulus: 1,
        }),
        HallClass::C => Ok(HallConductance {
            kappa: snap16(t1 / PI, 2)?,
            sigma_h: snap16((4.0 * t2 + t1) / PI, 2)?,
            modulus: 2,
        }),
    }
}

/// Every charge table `q: anyons → [0, 1)` compatible with fusion and with
/// `q_ψ = 1/2`. SO(3) charges take values in `{0, 1/2}`; U(1) charges take
/// values `k/denominator`.
pub fn charge_tables(c: &Category, lie: LieSector, denominator: i64) -> Vec<Vec<Rational64>> {
    let values: Vec<Rational64> = match lie {
        LieSector::None => return Vec::new(),
        LieSector::SO3 => vec![Rational64::from_integer(0), Rational64::new(1, 2)],
        LieSector::U1 => (0..denominator).map(|k| Rational64::new(k, denominator)).collect(),
    };
    let n = c.rank();
    let channels = c.r_channels();
    let mut out = Vec::new();
    let mut q: Vec<Option<Rational64>> = vec![None; n];
    fn dfs(
        i: usize,
        c: &Category,
        values: &[Rational64],
        channels: &[[usize; 3]],
        q: &mut Vec<Option<Rational64>>,
        out: &mut Vec<Vec<Rational64>>,
    ) {
        let consistent = channels.iter().all(|&[a, b, x]| match (q[a], q[b], q[x]) {
            (Some(p), Some(r), Some(s)) => (p + r - s).is_integer(),
            _ => true,
        });
        if !consistent {
            return;
        }
        if i == q.len() {
            out.push(q.iter().map(|v| v.expect("assigned")).collect());
            return;
        }
        let forced = if i == 0 {
            Some(Rational64::from_integer(0))
        } else if Some(i) == c.fermion() {
            Some(Rational64::new(1, 2))
        } else {
            None
        };
        for &v in values {
            if forced.is_some_and(|f| f != v) {
                continue;
            }
            q[i] = Some(v);
            dfs(i + 1, c, values, channels, q, out);
            q[i] = None;
        }
    }
    dfs(0, c, &values, &channels, &mut q, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TenfoldClass {
    AI,
    AII,
    AIII,
    CI,
    CII,
}

impl TenfoldClass {
    pub fn classification(self) -> Classification {
        match self {
            TenfoldClass::AI => Classification::Z2,
            TenfoldClass::AII | TenfoldClass::CII => Classification::Z2Cubed,
            TenfoldClass::AIII => Classification::Z8xZ2Pinc,
            TenfoldClass::CI => Classification::Z4xZ2,
        }
    }

    fn lie(self) -> LieSector {
        match self {
            TenfoldClass::AI | TenfoldClass::AII | TenfoldClass::AIII => LieSector::U1,
            TenfoldClass::CI | TenfoldClass::CII => LieSector::SO3,
        }
    }
}

impl std::str::FromStr for TenfoldClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "AI" => Ok(TenfoldClass::AI),
            "AII" => Ok(TenfoldClass::AII),
            "AIII" => Ok(TenfoldClass::AIII),
            "CI" => Ok(TenfoldClass::CI),
            "CII" => Ok(TenfoldClass::CII),
            other => Err(format!("unknown symmetry class {other:?}")),
        }
    }
}

fn generator(manifold: &str, value: C64, class: Classification, order: u32) -> Result<IndicatorResult, IndicatorError> {
    Ok(IndicatorResult {
        manifold: manifold.into(),
        value,
        classification: class,
        order: Some(order),
        nu: Some(Nu::Class(anomaly_class(value, order)?)),
        shadows: Vec::new(),
    })
}

/// Per-generator indicator values for a ten-fold-way class.
///
/// Charges must be compatible with time reversal: `q_{ᵀa} = -q_a` for
/// class AIII and `q_{ᵀa} = q_a` otherwise.
pub fn tenfold_report(
    c: &Category,
    act: &SymmetryAction,
    class: TenfoldClass,
    tol: f64,
) -> Result<Vec<IndicatorResult>, IndicatorError> {
    let q = act
        .charges()
        .ok_or_else(|| IndicatorError::MissingData("charge table".into()))?;
    validate_charges(c, q)?;
    if act.group().lie() != class.lie() {
        return Err(IndicatorError::WrongSymmetry(format!(
            "class {class:?} needs Lie sector {:?}, action has {:?}",
            class.lie(),
            act.group().lie()
        )));
    }
    let needs_t = class != TenfoldClass::AI;
    if needs_t {
        pin_plus_generator(act)?;
    }
    require_consistent(c, act, tol)?;
    let grp = act.group();
    for g in 0..grp.order() {
        for a in 0..c.rank() {
            let qa = q[a];
            let qt = q[act.act(g, a)];
            let want = if class == TenfoldClass::AIII && grp.antiunitary(g) {
                -qa
            } else {
                qa
            };
            let diff = qt - want;
            if diff != diff.floor() {
                return Err(IndicatorError::Inconsistent(format!(
                    "charge of {} is not compatible with {}",
                    c.label(a),
                    grp.element(g)
                )));
            }
        }
    }
    let inv = Invariants::compute(c)?;
    let cls = class.classification();
    let cp2 = partition_cp2_with(&inv, q);
    let mut out = Vec::new();
    let rp4 = || -> Result<C64, IndicatorError> { Ok(pin_plus_value(c, act, &inv)?.0) };
    match class {
        TenfoldClass::AI => out.push(generator("CP2", cp2, cls, 2)?),
        TenfoldClass::AII => {
            out.push(generator("RP4", rp4()?, cls, 2)?);
            out.push(generator("CP2", cp2, cls, 2)?);
            out.push(generator("S2xS2", partition_s2s2_with(&inv, q), cls, 2)?);
        }
        TenfoldClass::AIII => {
            out.push(generator("RP4", rp4()?, cls, 8)?);
            out.push(generator("CP2", cp2, cls, 2)?);
        }
        TenfoldClass::CI => {
            out.push(generator("RP4", rp4()?, cls, 4)?);
            out.push(generator("CP2", cp2, cls, 2)?);
        }
        TenfoldClass::CII => {
            out.push(generator("RP4", rp4()?, cls, 2)?);
            out.push(generator("CP2", cp2, cls, 2)?);
            out.push(generator("S4", partition_s4(), cls, 2)?);
        }
    }
    Ok(out)
}

/// Values in a ten-fold report that no gapped fermionic topological order
/// can realize: `ℐ₁ = ±i` in class CI and `Z(S⁴) = -1` in class CII.
pub fn gaplessness_check(report: &[IndicatorResult], class: TenfoldClass, tol: f64) -> Vec<String> {
    let mut flags = Vec::new();
    for r in report {
        match (class, r.manifold.as_str()) {
            (TenfoldClass::CI, "RP4") if (r.value - I).norm() < tol || (r.value + I).norm() < tol => {
                flags.push(format!("class CI: RP4 indicator {} is symmetry-enforced gapless", r.value));
            }
            (TenfoldClass::CII, "S4") if (r.value + 1.0).norm() < tol => {
                flags.push("class CII: S4 indicator -1 is symmetry-enforced gapless".into());
            }
            _ => {}
        }
    }
    flags
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anomaly_class_grid() {
        assert_eq!(anomaly_class(C64::new(1.0, 0.0), 4).unwrap(), 0);
        assert_eq!(anomaly_class(-I, 4).unwrap(), 3);
        assert_eq!(anomaly_class(cis(2.0 * PI * 2.0 / 16.0), 16).unwrap(), 2);
        assert!(matches!(anomaly_class(cis(0.3), 4), Err(IndicatorError::OffGrid { .. })));
        assert!(matches!(anomaly_class(C64::new(0.5, 0.0), 4), Err(IndicatorError::NotUnit(_))));
    }

    #[test]
    fn hall_grid() {
        let h = hall_conductance((0.0, 0.0), HallClass::A).unwrap();
        assert_eq!(h.kappa, Rational64::from_integer(0));
        assert_eq!(h.sigma_h, Rational64::from_integer(0));
        let h = hall_conductance((3.0 * PI / 2.0, PI / 8.0), HallClass::C).unwrap();
        assert_eq!(h.kappa, Rational64::new(3, 2));
        assert_eq!(h.sigma_h, Rational64::from_integer(0));
    }

    #[test]
    fn gapless_flags() {
        let fake = |m: &str, v: C64| IndicatorResult {
            manifold: m.into(),
            value: v,
            classification: Classification::Z4xZ2,
            order: Some(4),
            nu: None,
            shadows: vec![],
        };
        assert_eq!(gaplessness_check(&[fake("RP4", I)], TenfoldClass::CI, 1e-9).len(), 1);
        assert!(gaplessness_check(&[fake("RP4", C64::new(-1.0, 0.0))], TenfoldClass::CI, 1e-9).is_empty());
        assert!(gaplessness_check(&[fake("S4", C64::new(1.0, 0.0))], TenfoldClass::CII, 1e-9).is_empty());
    }
}
