//! Skeletal category data: fusion rules, F-symbols and R-symbols.
//!
//! Only multiplicity-free categories are represented, so every F-symbol is a
//! scalar `F^{abc}_{d;e,f}` with `e ∈ a×b`, `f ∈ b×c`, `d ∈ e×c` and
//! `d ∈ a×f`, and every R-symbol is a scalar `R^{ab}_c`. The F-matrix for
//! fixed `(a,b,c,d)` has rows indexed by `e` and columns by `f`.

use crate::linalg::Matrix;
use crate::report::Report;
use crate::C64;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::io::Read;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Fusion multiplicities `N[a][b][c]` with the unit at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRules {
    n: usize,
    table: Vec<u32>,
    channels: Vec<Vec<usize>>,
}

impl FusionRules {
    pub fn new(n: usize) -> Self {
        FusionRules {
            n,
            table: vec![0; n * n * n],
            channels: vec![Vec::new(); n * n],
        }
    }

    /// Fusion rules of a finite abelian group given by its addition table.
    pub fn from_group(n: usize, add: impl Fn(usize, usize) -> usize) -> Self {
        let mut rules = Self::new(n);
        for a in 0..n {
            for b in 0..n {
                rules.set(a, b, add(a, b), 1);
            }
        }
        rules
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        self.table[(a * self.n + b) * self.n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, m: u32) {
        self.table[(a * self.n + b) * self.n + c] = m;
        let list = &mut self.channels[a * self.n + b];
        list.retain(|&x| x != c);
        if m > 0 {
            list.push(c);
            list.sort_unstable();
        }
    }

    pub fn admissible(&self, a: usize, b: usize, c: usize) -> bool {
        self.get(a, b, c) > 0
    }

    /// Outcomes `c` with `N[a][b][c] > 0`, in increasing order.
    pub fn channels(&self, a: usize, b: usize) -> &[usize] {
        &self.channels[a * self.n + b]
    }

    pub fn outcomes(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        self.channels(a, b)
            .iter()
            .map(|&c| (c, self.get(a, b, c)))
            .collect()
    }

    /// The unique outcome of `a × b`, if there is exactly one.
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        match self.channels(a, b) {
            [c] if self.get(a, b, *c) == 1 => Some(*c),
            _ => None,
        }
    }

    /// The unique `b` with `N[a][b][0] > 0`, if exactly one exists.
    pub fn dual(&self, a: usize) -> Option<usize> {
        let mut found = None;
        for b in 0..self.n {
            if self.get(a, b, 0) > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(b);
            }
        }
        found
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.table.iter().copied().max().unwrap_or(0)
    }

    /// Whether every anyon is a simple current (all fusion products unique).
    pub fn is_group_like(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.product(a, b).is_some()))
    }

    fn check_unit(&self, report: &mut Report) {
        for a in 0..self.n {
            for b in 0..self.n {
                let want = u32::from(a == b);
                if self.get(0, a, b) != want || self.get(a, 0, b) != want {
                    report.push(format!("unit law fails at ({a}, {b})"), None);
                }
            }
        }
    }

    fn check_duals(&self, report: &mut Report) {
        for a in 0..self.n {
            let partners: Vec<usize> = (0..self.n).filter(|&b| self.get(a, b, 0) > 0).collect();
            let ok = partners.len() == 1 && self.get(a, partners[0], 0) == 1;
            if !ok {
                report.push(format!("dual uniqueness fails for anyon {a}"), None);
            }
        }
    }

    fn check_associativity(&self, report: &mut Report) {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: u32 = (0..n).map(|e| self.get(a, b, e) * self.get(e, c, d)).sum();
                        let rhs: u32 = (0..n).map(|f| self.get(a, f, d) * self.get(b, c, f)).sum();
                        if lhs != rhs {
                            report.push(
                                format!("associativity fails at ({a}, {b}, {c}; {d}): {lhs} vs {rhs}"),
                                None,
                            );
                        }
                    }
                }
            }
        }
    }
}

type FKey = [u16; 6];
type RKey = [u16; 3];

fn key6(k: [usize; 6]) -> FKey {
    k.map(|x| x as u16)
}

/// A braided fusion category in skeletal, multiplicity-free form, optionally
/// with a distinguished fermion `ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Category {
    name: String,
    labels: Vec<String>,
    fusion: FusionRules,
    f: BTreeMap<FKey, C64>,
    r: BTreeMap<RKey, C64>,
    fermion: Option<usize>,
}

impl Category {
    /// A category with the given fusion rules and no F/R data yet.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        fusion: FusionRules,
        fermion: Option<usize>,
    ) -> Self {
        assert_eq!(labels.len(), fusion.rank(), "label count must match fusion rank");
        Category {
            name: name.into(),
            labels,
            fusion,
            f: BTreeMap::new(),
            r: BTreeMap::new(),
            fermion,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn rank(&self) -> usize {
        self.fusion.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn fusion(&self) -> &FusionRules {
        &self.fusion
    }

    pub fn fermion(&self) -> Option<usize> {
        self.fermion
    }

    pub fn set_fermion(&mut self, fermion: Option<usize>) {
        self.fermion = fermion;
    }

    /// `a × ψ` for the distinguished fermion.
    pub fn times_fermion(&self, a: usize) -> Option<usize> {
        self.fermion.and_then(|p| self.fusion.product(a, p))
    }

    pub fn dual_of(&self, a: usize) -> usize {
        self.fusion
            .dual(a)
            .unwrap_or_else(|| panic!("anyon {} has no unique dual", self.labels[a]))
    }

    pub fn fusion_outcomes(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        self.fusion.outcomes(a, b)
    }

    pub fn f_admissible(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> bool {
        let n = &self.fusion;
        n.admissible(a, b, e) && n.admissible(e, c, d) && n.admissible(b, c, f) && n.admissible(a, f, d)
    }

    /// `F^{abc}_{d;e,f}`, zero when the channel is not admissible.
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> C64 {
        self.f
            .get(&key6([a, b, c, d, e, f]))
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// `R^{ab}_c`, zero when the channel is not admissible.
    pub fn r(&self, a: usize, b: usize, c: usize) -> C64 {
        self.r
            .get(&[a as u16, b as u16, c as u16])
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn set_f(&mut self, k: [usize; 6], value: C64) {
        let [a, b, c, d, e, f] = k;
        assert!(self.f_admissible(a, b, c, d, e, f), "F channel {k:?} is not admissible");
        self.f.insert(key6(k), value);
    }

    pub fn set_r(&mut self, a: usize, b: usize, c: usize, value: C64) {
        assert!(self.fusion.admissible(a, b, c), "R channel ({a},{b},{c}) is not admissible");
        self.r.insert([a as u16, b as u16, c as u16], value);
    }

    /// All admissible F index tuples, in lexicographic order.
    pub fn f_channels(&self) -> Vec<[usize; 6]> {
        let n = &self.fusion;
        let mut out = Vec::new();
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                for c in 0..self.rank() {
                    for &e in n.channels(a, b) {
                        for &d in n.channels(e, c) {
                            for &f in n.channels(b, c) {
                                if n.admissible(a, f, d) {
                                    out.push([a, b, c, d, e, f]);
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All admissible R index triples, in lexicographic order.
    pub fn r_channels(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                for &c in self.fusion.channels(a, b) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    /// Sets every admissible F-symbol from `value`.
    pub fn fill_f(&mut self, mut value: impl FnMut([usize; 6]) -> C64) {
        for k in self.f_channels() {
            self.f.insert(key6(k), value(k));
        }
    }

    /// Sets every admissible R-symbol from `value`.
    pub fn fill_r(&mut self, mut value: impl FnMut([usize; 3]) -> C64) {
        for k in self.r_channels() {
            self.r.insert(k.map(|x| x as u16), value(k));
        }
    }

    pub fn f_entries(&self) -> impl Iterator<Item = ([usize; 6], C64)> + '_ {
        self.f.iter().map(|(k, v)| (k.map(usize::from), *v))
    }

    pub fn r_entries(&self) -> impl Iterator<Item = ([usize; 3], C64)> + '_ {
        self.r.iter().map(|(k, v)| (k.map(usize::from), *v))
    }

    /// The F-matrix `[F^{abc}_d]_{e,f}` with its row and column labels.
    pub fn f_matrix(&self, a: usize, b: usize, c: usize, d: usize) -> (Vec<usize>, Vec<usize>, Matrix) {
        let n = &self.fusion;
        let rows: Vec<usize> = n
            .channels(a, b)
            .iter()
            .copied()
            .filter(|&e| n.admissible(e, c, d))
            .collect();
        let cols: Vec<usize> = n
            .channels(b, c)
            .iter()
            .copied()
            .filter(|&f| n.admissible(a, f, d))
            .collect();
        let m = Matrix::from_fn(rows.len(), cols.len(), |i, j| self.f(a, b, c, d, rows[i], cols[j]));
        (rows, cols, m)
    }

    /// Entrywise comparison of labels, fusion, F and R within `tol`.
    pub fn approx_eq(&self, other: &Category, tol: f64) -> bool {
        self.labels == other.labels
            && self.fusion == other.fusion
            && self.fermion == other.fermion
            && self.f.len() == other.f.len()
            && self.r.len() == other.r.len()
            && self
                .f
                .iter()
                .all(|(k, v)| other.f.get(k).is_some_and(|w| (v - w).norm() <= tol))
            && self
                .r
                .iter()
                .all(|(k, v)| other.r.get(k).is_some_and(|w| (v - w).norm() <= tol))
    }

    pub fn from_json_str(text: &str) -> Result<Self, LoadError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
        let file: CategoryFile =
            serde_json::from_value(value).map_err(|e| LoadError::Schema(e.to_string()))?;
        file.build()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CategoryFile::from_category(self)).expect("category serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("category serializes")
    }
}

/// Reads a category from a JSON byte stream.
pub fn load_category(mut source: impl Read) -> Result<Category, LoadError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Category::from_json_str(&text)
}

/// Checks the fusion, F and R invariants of a loaded category.
pub fn validate_structure(c: &Category, tol: f64) -> Report {
    let mut report = validate_shape(c);
    report.merge(crate::axioms::check_unitarity(c, tol));
    report
}

/// Fusion rules, data completeness and the fermion, without unitarity.
pub fn validate_shape(c: &Category) -> Report {
    let mut report = Report::new("structure");
    let rules = c.fusion();
    rules.check_unit(&mut report);
    rules.check_duals(&mut report);
    rules.check_associativity(&mut report);
    if rules.max_multiplicity() > 1 {
        report.push("fusion multiplicities above 1 are not supported", None);
    }
    for k in c.f_channels() {
        if !c.f.contains_key(&key6(k)) {
            report.push(format!("F{k:?} missing"), None);
        }
    }
    for k in c.r_channels() {
        if !c.r.contains_key(&k.map(|x| x as u16)) {
            report.push(format!("R{k:?} missing"), None);
        }
    }
    if let Some(p) = c.fermion() {
        if rules.channels(p, p) != [0] || rules.get(p, p, 0) != 1 {
            report.push("fermion does not satisfy ψ × ψ = 1", None);
        }
    }
    report
}

type Pair = [f64; 2];

fn to_c(p: Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn from_c(z: C64) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Serialize, Deserialize)]
struct FusionEntry {
    a: String,
    b: String,
    c: String,
    #[serde(rename = "N")]
    n: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct FEntry {
    a: String,
    b: String,
    c: String,
    d: String,
    e: String,
    #[serde(default)]
    alpha: u32,
    #[serde(default)]
    beta: u32,
    f: String,
    #[serde(default)]
    mu: u32,
    #[serde(default)]
    nu: u32,
    value: Pair,
}

#[derive(Debug, Serialize, Deserialize)]
struct REntry {
    a: String,
    b: String,
    c: String,
    #[serde(default)]
    mu: u32,
    #[serde(default)]
    nu: u32,
    value: Pair,
}

#[derive(Debug, Serialize, Deserialize)]
struct Defaults {
    #[serde(rename = "F")]
    f: Pair,
    #[serde(rename = "R")]
    r: Pair,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults {
            f: [1.0, 0.0],
            r: [1.0, 0.0],
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryFile {
    name: String,
    anyons: Vec<String>,
    #[serde(default)]
    fermion: Option<String>,
    fusion: Vec<FusionEntry>,
    #[serde(rename = "F", default)]
    f: Vec<FEntry>,
    #[serde(rename = "R", default)]
    r: Vec<REntry>,
    #[serde(default)]
    defaults: Defaults,
}

impl CategoryFile {
    fn build(self) -> Result<Category, LoadError> {
        let shape = |m: String| LoadError::Shape(m);
        if self.anyons.is_empty() {
            return Err(shape("anyon list is empty".into()));
        }
        let mut index = HashMap::new();
        for (i, name) in self.anyons.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(shape(format!("duplicate anyon name {name:?}")));
            }
        }
        let look = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| LoadError::Shape(format!("unknown anyon {name:?}")))
        };
        let n = self.anyons.len();
        let mut rules = FusionRules::new(n);
        for e in &self.fusion {
            let (a, b, c) = (look(&e.a)?, look(&e.b)?, look(&e.c)?);
            if rules.get(a, b, c) != 0 {
                return Err(shape(format!("fusion entry ({}, {}, {}) repeated", e.a, e.b, e.c)));
            }
            rules.set(a, b, c, e.n);
        }
        let mut unit = Report::new("unit");
        rules.check_unit(&mut unit);
        if !unit.passed() {
            return Err(shape(format!("first anyon {:?} is not a unit", self.anyons[0])));
        }
        let mut duals = Report::new("duals");
        rules.check_duals(&mut duals);
        if let Some(v) = duals.violations.first() {
            return Err(shape(v.message.clone()));
        }
        if rules.max_multiplicity() > 1 {
            return Err(shape("fusion multiplicities above 1 are not supported".into()));
        }
        let fermion = self.fermion.as_deref().map(look).transpose()?;
        let mut cat = Category::new(self.name, self.anyons.clone(), rules, fermion);
        let mut f_set = BTreeMap::new();
        for e in &self.f {
            let k = [look(&e.a)?, look(&e.b)?, look(&e.c)?, look(&e.d)?, look(&e.e)?, look(&e.f)?];
            let [a, b, c, d, ee, f] = k;
            if !cat.f_admissible(a, b, c, d, ee, f) {
                return Err(shape(format!(
                    "F entry ({},{},{};{};{},{}) is not an admissible channel",
                    e.a, e.b, e.c, e.d, e.e, e.f
                )));
            }
            if e.alpha > 0 || e.beta > 0 || e.mu > 0 || e.nu > 0 {
                return Err(shape(format!(
                    "F entry ({},{},{};{};{},{}) has a multiplicity index out of range",
                    e.a, e.b, e.c, e.d, e.e, e.f
                )));
            }
            f_set.insert(key6(k), to_c(e.value));
        }
        let mut r_set = BTreeMap::new();
        for e in &self.r {
            let (a, b, c) = (look(&e.a)?, look(&e.b)?, look(&e.c)?);
            if !cat.fusion.admissible(a, b, c) {
                return Err(shape(format!(
                    "R entry ({},{};{}) is not an admissible channel",
                    e.a, e.b, e.c
                )));
            }
            if e.mu > 0 || e.nu > 0 {
                return Err(shape(format!(
                    "R entry ({},{};{}) has a multiplicity index out of range",
                    e.a, e.b, e.c
                )));
            }
            r_set.insert([a as u16, b as u16, c as u16], to_c(e.value));
        }
        let (fd, rd) = (to_c(self.defaults.f), to_c(self.defaults.r));
        cat.fill_f(|k| f_set.get(&key6(k)).copied().unwrap_or(fd));
        cat.fill_r(|k| r_set.get(&k.map(|x| x as u16)).copied().unwrap_or(rd));
        Ok(cat)
    }

    fn from_category(c: &Category) -> Self {
        let name = |a: usize| c.labels[a].clone();
        let one = C64::new(1.0, 0.0);
        let mut fusion = Vec::new();
        for a in 0..c.rank() {
            for b in 0..c.rank() {
                for (x, m) in c.fusion_outcomes(a, b) {
                    fusion.push(FusionEntry {
                        a: name(a),
                        b: name(b),
                        c: name(x),
                        n: m,
                    });
                }
            }
        }
        let f = c
            .f_entries()
            .filter(|(_, v)| *v != one)
            .map(|([a, b, cc, d, e, f], v)| FEntry {
                a: name(a),
                b: name(b),
                c: name(cc),
                d: name(d),
                e: name(e),
                alpha: 0,
                beta: 0,
                f: name(f),
                mu: 0,
                nu: 0,
                value: from_c(v),
            })
            .collect();
        let r = c
            .r_entries()
            .filter(|(_, v)| *v != one)
            .map(|([a, b, x], v)| REntry {
                a: name(a),
                b: name(b),
                c: name(x),
                mu: 0,
                nu: 0,
                value: from_c(v),
            })
            .collect();
        CategoryFile {
            name: c.name.clone(),
            anyons: c.labels.clone(),
            fermion: c.fermion.map(name),
            fusion,
            f,
            r,
            defaults: Defaults::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_json() -> &'static str {
        r#"{
            "name": "trivial",
            "anyons": ["1", "psi"],
            "fermion": "psi",
            "fusion": [
                {"a": "1", "b": "1", "c": "1", "N": 1},
                {"a": "1", "b": "psi", "c": "psi", "N": 1},
                {"a": "psi", "b": "1", "c": "psi", "N": 1},
                {"a": "psi", "b": "psi", "c": "1", "N": 1}
            ],
            "R": [{"a": "psi", "b": "psi", "c": "1", "value": [-1, 0]}],
            "defaults": {"F": [1, 0], "R": [1, 0]}
        }"#
    }

    #[test]
    fn trivial_loads() {
        let c = Category::from_json_str(trivial_json()).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.fermion(), Some(1));
        assert_eq!(c.r(1, 1, 0), C64::new(-1.0, 0.0));
        assert_eq!(c.f(1, 1, 1, 1, 0, 0), C64::new(1.0, 0.0));
        assert!(validate_structure(&c, 1e-9).passed());
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            Category::from_json_str("{\"name\": "),
            Err(LoadError::Parse(_))
        ));
    }

    #[test]
    fn missing_field_is_a_schema_error() {
        let text = r#"{"name": "x", "fusion": []}"#;
        assert!(matches!(Category::from_json_str(text), Err(LoadError::Schema(_))));
    }

    #[test]
    fn unknown_anyon_is_a_shape_error() {
        let text = trivial_json().replace(r#""c": "1", "value""#, r#""c": "q", "value""#);
        assert!(matches!(Category::from_json_str(&text), Err(LoadError::Shape(_))));
    }

    #[test]
    fn inadmissible_r_entry_is_a_shape_error() {
        let text = trivial_json().replace(r#""c": "1", "value""#, r#""c": "psi", "value""#);
        let err = Category::from_json_str(&text).unwrap_err();
        assert!(err.to_string().contains("admissible"), "{err}");
    }

    #[test]
    fn double_vacuum_channel_breaks_dual_uniqueness() {
        let text = trivial_json().replace(
            r#"{"a": "psi", "b": "psi", "c": "1", "N": 1}"#,
            r#"{"a": "psi", "b": "psi", "c": "1", "N": 2}"#,
        );
        let err = Category::from_json_str(&text).unwrap_err();
        assert!(matches!(err, LoadError::Shape(_)));
        assert!(err.to_string().contains("dual uniqueness"), "{err}");
    }
}
