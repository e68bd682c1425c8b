//! Pentagon, hexagon and unitarity checks.
//!
//! With `F^{abc}_{d;e,f}` mapping the basis `((ab)_e c)_d` to `(a (bc)_f)_d`,
//! the pentagon reads
//!
//! ```text
//! F^{fcd}_{e;g,l} F^{abl}_{e;f,k} = Σ_h F^{abc}_{g;f,h} F^{ahd}_{e;g,k} F^{bcd}_{k;h,l}
//! ```
//!
//! and the two hexagons read
//!
//! ```text
//! R^{ac}_e F^{acb}_{d;e,g} R^{bc}_g = Σ_f F^{cab}_{d;e,f} R^{fc}_d F^{abc}_{d;f,g}
//! ```
//!
//! with every `R^{yx}` replaced by `(R^{xy})⁻¹` in the second one. This is
//! the orientation that is covariant under `R^{ab}_c → Γ^{ba}_c R^{ab}_c / Γ^{ab}_c`.

use crate::category::Category;
use crate::report::Report;
use crate::C64;

pub fn check_pentagon(c: &Category, tol: f64) -> Report {
    let mut report = Report::new("pentagon");
    let n = c.rank();
    let rules = c.fusion();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    for &f in rules.channels(a, b) {
                        for &g in rules.channels(f, cc) {
                            for &e in rules.channels(g, d) {
                                for &l in rules.channels(cc, d) {
                                    for &k in rules.channels(b, l) {
                                        if !rules.admissible(a, k, e) {
                                            continue;
                                        }
                                        let lhs = c.f(f, cc, d, e, g, l) * c.f(a, b, l, e, f, k);
                                        let rhs: C64 = rules
                                            .channels(b, cc)
                                            .iter()
                                            .map(|&h| {
                                                c.f(a, b, cc, g, f, h)
                                                    * c.f(a, h, d, e, g, k)
                                                    * c.f(b, cc, d, k, h, l)
                                            })
                                            .sum();
                                        let dev = (lhs - rhs).norm();
                                        if dev > tol {
                                            report.mismatch(
                                                format!(
                                                    "pentagon ({},{},{},{};{}) f={} g={} k={} l={}",
                                                    c.label(a),
                                                    c.label(b),
                                                    c.label(cc),
                                                    c.label(d),
                                                    c.label(e),
                                                    c.label(f),
                                                    c.label(g),
                                                    c.label(k),
                                                    c.label(l)
                                                ),
                                                dev,
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

pub fn check_hexagon(c: &Category, tol: f64) -> Report {
    let mut report = Report::new("hexagon");
    hexagon_pass(c, tol, false, &mut report);
    hexagon_pass(c, tol, true, &mut report);
    report
}

fn hexagon_pass(c: &Category, tol: f64, inverse: bool, report: &mut Report) {
    let n = c.rank();
    let rules = c.fusion();
    let braid = |x: usize, y: usize, z: usize| {
        if inverse {
            c.r(x, y, z).inv()
        } else {
            c.r(y, x, z)
        }
    };
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for &e in rules.channels(cc, a) {
                    for &g in rules.channels(cc, b) {
                        for d in 0..n {
                            if !rules.admissible(e, b, d) || !rules.admissible(a, g, d) {
                                continue;
                            }
                            let lhs = braid(cc, a, e) * c.f(a, cc, b, d, e, g) * braid(cc, b, g);
                            let rhs: C64 = rules
                                .channels(a, b)
                                .iter()
                                .map(|&f| c.f(cc, a, b, d, e, f) * braid(cc, f, d) * c.f(a, b, cc, d, f, g))
                                .sum();
                            let dev = (lhs - rhs).norm();
                            if dev > tol {
                                report.mismatch(
                                    format!(
                                        "hexagon{} ({},{},{};{}) e={} g={}",
                                        if inverse { " (inverse)" } else { "" },
                                        c.label(a),
                                        c.label(b),
                                        c.label(cc),
                                        c.label(d),
                                        c.label(e),
                                        c.label(g)
                                    ),
                                    dev,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Every F-matrix and every R-symbol must be unitary.
pub fn check_unitarity(c: &Category, tol: f64) -> Report {
    let mut report = Report::new("unitarity");
    let n = c.rank();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    let (rows, cols, m) = c.f_matrix(a, b, cc, d);
                    if rows.is_empty() && cols.is_empty() {
                        continue;
                    }
                    if rows.len() != cols.len() {
                        report.push(
                            format!(
                                "F^{{{},{},{}}}_{} is {}×{}",
                                c.label(a),
                                c.label(b),
                                c.label(cc),
                                c.label(d),
                                rows.len(),
                                cols.len()
                            ),
                            None,
                        );
                        continue;
                    }
                    let dev = m.unitarity_defect();
                    if dev > tol {
                        report.mismatch(
                            format!(
                                "F^{{{},{},{}}}_{} is not unitary",
                                c.label(a),
                                c.label(b),
                                c.label(cc),
                                c.label(d)
                            ),
                            dev,
                        );
                    }
                }
            }
        }
    }
    for ([a, b, x], v) in c.r_entries() {
        let dev = (v.norm() - 1.0).abs();
        if dev > tol {
            report.mismatch(
                format!("R^{{{},{}}}_{} is not unitary", c.label(a), c.label(b), c.label(x)),
                dev,
            );
        }
    }
    report
}
