//! Quantum dimensions, twists, the S-matrix, Müger center, super-modularity
//! and the chiral central charge.

use crate::category::Category;
use crate::linalg::Matrix;
use crate::report::Report;
use crate::C64;
use num_rational::Rational64;
use std::f64::consts::PI;
use thiserror::Error;

const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("eigenvalue iteration for anyon {0} did not converge")]
    NoConvergence(usize),
    #[error("category is not modular: Müger center has {0} elements")]
    NotModular(usize),
    #[error("Gauss sum has modulus {0}, expected 1")]
    GaussModulus(f64),
    #[error("central charge {0} is not a multiple of 1/4")]
    OffGrid(f64),
    #[error("no fermion declared")]
    NoFermion,
}

/// Frobenius-Perron dimension of each anyon, found by power iteration on
/// `N_a + I` started from the all-ones vector.
pub fn quantum_dimensions(c: &Category) -> Result<Vec<f64>, AlgebraError> {
    let n = c.rank();
    let rules = c.fusion();
    (0..n)
        .map(|a| {
            let mut v = vec![1.0 / (n as f64).sqrt(); n];
            let mut lambda = 0.0;
            for _ in 0..MAX_ITERATIONS {
                let mut w = v.clone();
                for (b, wb) in w.iter_mut().enumerate() {
                    for &x in rules.channels(a, b) {
                        *wb += f64::from(rules.get(a, b, x)) * v[x];
                    }
                }
                let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                w.iter_mut().for_each(|x| *x /= norm);
                let delta = w.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                let converged = (norm - lambda).abs() < 1e-14 * norm && delta < 1e-13;
                lambda = norm;
                v = w;
                if converged {
                    return Ok(lambda - 1.0);
                }
            }
            Err(AlgebraError::NoConvergence(a))
        })
        .collect()
}

/// `θ_a = Σ_c (d_c / d_a) R^{aa}_c`.
pub fn twist_with(c: &Category, d: &[f64], a: usize) -> C64 {
    c.fusion()
        .channels(a, a)
        .iter()
        .map(|&x| c.r(a, a, x) * (d[x] / d[a]))
        .sum()
}

/// `S_ab = D⁻¹ Σ_c N^c_{āb} θ_c / (θ_a θ_b) d_c`.
fn s_matrix_with(c: &Category, d: &[f64], theta: &[C64], total: f64) -> Matrix {
    let n = c.rank();
    let rules = c.fusion();
    Matrix::from_fn(n, n, |a, b| {
        let abar = c.dual_of(a);
        let sum: C64 = rules
            .channels(abar, b)
            .iter()
            .map(|&x| theta[x] / (theta[a] * theta[b]) * (f64::from(rules.get(abar, b, x)) * d[x]))
            .sum();
        sum / total
    })
}

/// All derived invariants of a category, computed once.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub d: Vec<f64>,
    pub total_dim: f64,
    pub theta: Vec<C64>,
    pub s: Matrix,
}

impl Invariants {
    pub fn compute(c: &Category) -> Result<Self, AlgebraError> {
        let d = quantum_dimensions(c)?;
        let total_dim = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        let theta: Vec<C64> = (0..c.rank()).map(|a| twist_with(c, &d, a)).collect();
        let s = s_matrix_with(c, &d, &theta, total_dim);
        Ok(Invariants {
            d,
            total_dim,
            theta,
            s,
        })
    }

    /// `M_ab = S_ab D / (d_a d_b)`.
    pub fn monodromy(&self, a: usize, b: usize) -> C64 {
        self.s[(a, b)] * self.total_dim / (self.d[a] * self.d[b])
    }

    /// Anyons braiding trivially with every anyon.
    pub fn muger_center(&self, tol: f64) -> Vec<usize> {
        let n = self.d.len();
        (0..n)
            .filter(|&a| (0..n).all(|b| (self.monodromy(a, b) - 1.0).norm() < tol))
            .collect()
    }

    /// `(1/D) Σ_a d_a² θ_a`.
    pub fn gauss_sum(&self) -> C64 {
        self.d
            .iter()
            .zip(&self.theta)
            .map(|(d, t)| t * (d * d))
            .sum::<C64>()
            / self.total_dim
    }
}

pub fn quantum_dimension(c: &Category) -> Result<Vec<f64>, AlgebraError> {
    quantum_dimensions(c)
}

pub fn total_dimension(c: &Category) -> Result<f64, AlgebraError> {
    Ok(Invariants::compute(c)?.total_dim)
}

pub fn topological_twist(c: &Category, a: usize) -> Result<C64, AlgebraError> {
    Ok(twist_with(c, &quantum_dimensions(c)?, a))
}

pub fn s_matrix(c: &Category) -> Result<Matrix, AlgebraError> {
    Ok(Invariants::compute(c)?.s)
}

pub fn monodromy(c: &Category, a: usize, b: usize) -> Result<C64, AlgebraError> {
    Ok(Invariants::compute(c)?.monodromy(a, b))
}

pub fn muger_center(c: &Category, tol: f64) -> Result<Vec<usize>, AlgebraError> {
    Ok(Invariants::compute(c)?.muger_center(tol))
}

/// The S-matrix of the quotient by `{1, ψ}`, extracted from a super-MTC.
#[derive(Debug, Clone)]
pub struct SuperModularity {
    /// One representative of each pair `{a, a×ψ}`, in order of first appearance.
    pub representatives: Vec<usize>,
    pub s_tilde: Matrix,
    pub report: Report,
}

/// Checks that the Müger center is `{1, ψ}`, that `θ_ψ = -1`, and that
/// `S = S̃ ⊗ (1/√2)[[1,1],[1,1]]` with `S̃` unitary.
pub fn check_super_modular(c: &Category, tol: f64) -> Result<SuperModularity, AlgebraError> {
    let psi = c.fermion().ok_or(AlgebraError::NoFermion)?;
    let inv = Invariants::compute(c)?;
    let mut report = Report::new("super-modularity");
    let center = inv.muger_center(tol);
    if center != [0, psi] {
        report.push(
            format!(
                "Müger center is {:?}, expected {{1, {}}}",
                center.iter().map(|&a| c.label(a)).collect::<Vec<_>>(),
                c.label(psi)
            ),
            None,
        );
    }
    let dev = (inv.theta[psi] + 1.0).norm();
    if dev > tol {
        report.mismatch("θ_ψ ≠ -1", dev);
    }
    let n = c.rank();
    let mut partner = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        match c.times_fermion(a) {
            Some(ap) if ap != a => {
                if partner[a] == usize::MAX {
                    partner[a] = ap;
                    partner[ap] = a;
                    reps.push(a);
                }
            }
            _ => {
                report.push(format!("{} is fixed by fusion with ψ", c.label(a)), None);
                return Ok(SuperModularity {
                    representatives: reps,
                    s_tilde: Matrix::zeros(0, 0),
                    report,
                });
            }
        }
    }
    let s = &inv.s;
    for &a in &reps {
        for &b in &reps {
            let x = s[(a, b)];
            for (i, j) in [(partner[a], b), (a, partner[b]), (partner[a], partner[b])] {
                let dev = (s[(i, j)] - x).norm();
                if dev > tol {
                    report.mismatch(
                        format!("S block ({}, {}) does not factor", c.label(a), c.label(b)),
                        dev,
                    );
                }
            }
        }
    }
    let m = reps.len();
    let s_tilde = Matrix::from_fn(m, m, |i, j| s[(reps[i], reps[j])] * 2f64.sqrt());
    let dev = s_tilde.unitarity_defect();
    if dev > tol {
        report.mismatch("S̃ is not unitary", dev);
    }
    Ok(SuperModularity {
        representatives: reps,
        s_tilde,
        report,
    })
}

/// Chiral central charge mod 8 from the Gauss sum, snapped to quarters.
pub fn central_charge(c: &Category, tol: f64) -> Result<Rational64, AlgebraError> {
    let inv = Invariants::compute(c)?;
    let center = inv.muger_center(tol);
    if center.len() != 1 {
        return Err(AlgebraError::NotModular(center.len()));
    }
    central_charge_of(&inv)
}

pub(crate) fn central_charge_of(inv: &Invariants) -> Result<Rational64, AlgebraError> {
    let g = inv.gauss_sum();
    if (g.norm() - 1.0).abs() > 1e-6 {
        return Err(AlgebraError::GaussModulus(g.norm()));
    }
    let raw = (g.arg() * 8.0 / (2.0 * PI)).rem_euclid(8.0);
    let quarters = (raw * 4.0).round();
    if (raw * 4.0 - quarters).abs() > 4e-6 {
        return Err(AlgebraError::OffGrid(raw));
    }
    Ok(Rational64::new((quarters as i64).rem_euclid(32), 4))
}
