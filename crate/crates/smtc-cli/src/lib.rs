//! Command-line front end for `smtc`.
//!
//! Categories are named either by a file path or by a `catalog:` URI such as
//! `catalog:so3_3` or `catalog:so3_3:z4t`; the second form also selects a
//! bundled symmetry action.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use num_rational::Rational64;
use serde_json::{json, Value};
use smtc::algebra::{self, Invariants};
use smtc::axioms::{check_hexagon, check_pentagon, check_unitarity};
use smtc::category::{validate_shape, validate_structure};
use smtc::extension::{self, ExtensionError};
use smtc::indicators::{self, HallClass, IndicatorError, IndicatorResult, TenfoldClass};
use smtc::symmetry::{self, apply_action_gauge, apply_vertex_gauge, random_gauge};
use smtc::{catalog, Category, Report, SymmetryAction};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Parsed command line.
#[derive(Parser, Debug)]
#[command(name = "smtc", version, about = "Super modular tensor categories, symmetry actions and anomaly indicators")]
pub struct RunConfig {
    /// Absolute tolerance for comparing complex symbols.
    #[arg(long, global = true, default_value_t = smtc::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the structural, coherence and symmetry consistency checks.
    Verify {
        category: String,
        #[arg(long)]
        action: Option<String>,
    },
    /// Quantum dimensions, twists, S-matrix and central charge.
    Invariants { category: String },
    /// Evaluate an anomaly indicator.
    Indicators {
        category: String,
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        symmetry: Symmetry,
        /// Comma-separated charges in anyon order, e.g. `0,1/2`.
        #[arg(long)]
        charges: Option<String>,
    },
    /// Check that checks and indicators are unchanged under random gauges.
    GaugeOrbit {
        category: String,
        #[arg(long)]
        action: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Zest an abelian modular extension.
    Zest {
        category: String,
        #[arg(long)]
        target_c: Option<Rational64>,
        /// Write the zested category here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Layer-1 and layer-3 anomaly cascade diagnostics.
    Cascade {
        category: String,
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        extension: String,
        #[arg(long)]
        ext_action: Option<String>,
        /// Images of the anyons of the super-MTC in the extension.
        #[arg(long, value_delimiter = ',')]
        embedding: Option<Vec<usize>>,
    },
    /// Built-in categories and actions.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    /// Write `<category>` or `<category>:<action>` as JSON.
    Export { name: String, path: PathBuf },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    #[value(name = "pin+")]
    PinPlus,
    #[value(name = "epin")]
    Epin,
    #[value(name = "classA")]
    ClassA,
    #[value(name = "classC")]
    ClassC,
    #[value(name = "AI")]
    AI,
    #[value(name = "AII")]
    AII,
    #[value(name = "AIII")]
    AIII,
    #[value(name = "CI")]
    CI,
    #[value(name = "CII")]
    CII,
}

impl Symmetry {
    fn tenfold(self) -> Option<TenfoldClass> {
        match self {
            Symmetry::AI => Some(TenfoldClass::AI),
            Symmetry::AII => Some(TenfoldClass::AII),
            Symmetry::AIII => Some(TenfoldClass::AIII),
            Symmetry::CI => Some(TenfoldClass::CI),
            Symmetry::CII => Some(TenfoldClass::CII),
            _ => None,
        }
    }

    fn default_actions(self) -> &'static [&'static str] {
        match self {
            Symmetry::PinPlus => &["z2t", "z2tf"],
            Symmetry::Epin => &["z4t"],
            Symmetry::ClassA | Symmetry::ClassC => &[],
            Symmetry::AI => &["ai"],
            Symmetry::AII => &["aii"],
            Symmetry::AIII => &["aiii"],
            Symmetry::CI => &["ci"],
            Symmetry::CII => &["cii"],
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Symmetry::PinPlus => "pin+",
            Symmetry::Epin => "epin",
            Symmetry::ClassA => "classA",
            Symmetry::ClassC => "classC",
            Symmetry::AI => "AI",
            Symmetry::AII => "AII",
            Symmetry::AIII => "AIII",
            Symmetry::CI => "CI",
            Symmetry::CII => "CII",
        }
    }
}

#[derive(Debug)]
enum Failure {
    /// Bad arguments or unreadable input (exit 2).
    Input(String),
    /// A computation that could not be completed on valid input (exit 1).
    Check(String),
}

impl From<IndicatorError> for Failure {
    fn from(e: IndicatorError) -> Self {
        match e {
            IndicatorError::WrongSymmetry(_) | IndicatorError::MissingData(_) | IndicatorError::InvalidCharges(_) => Failure::Input(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<ExtensionError> for Failure {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::NonAbelian(_)
            | ExtensionError::NoFermion(_)
            | ExtensionError::Data(_)
            | ExtensionError::Embedding(_) => Failure::Input(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

/// Parses `argv` (including the program name), runs one command and returns
/// the process exit code: 0 on success, 1 when a check fails, 2 on bad input.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match run(&config) {
        Ok(output) => {
            let printed = if config.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&output.json).expect("json output"))
            } else {
                write!(out, "{}", output.text)
            };
            if printed.is_err() {
                return 2;
            }
            if output.ok {
                0
            } else {
                let _ = writeln!(err, "smtc: checks failed");
                1
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "smtc: error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "smtc: failed: {msg}");
            1
        }
    }
}

fn run(config: &RunConfig) -> Result<Output, Failure> {
    let tol = config.tolerance;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Input(format!("tolerance must be positive, got {tol}")));
    }
    match &config.command {
        Command::Verify { category, action } => verify(category, action.as_deref(), tol),
        Command::Invariants { category } => invariants(category, tol),
        Command::Indicators {
            category,
            action,
            symmetry,
            charges,
        } => indicator(category, action.as_deref(), *symmetry, charges.as_deref(), tol),
        Command::GaugeOrbit {
            category,
            action,
            samples,
            seed,
        } => gauge_orbit(category, action.as_deref(), *samples, *seed, tol),
        Command::Zest {
            category,
            target_c,
            output,
        } => zest(category, *target_c, output.as_deref(), tol),
        Command::Cascade {
            category,
            action,
            extension,
            ext_action,
            embedding,
        } => cascade(category, action.as_deref(), extension, ext_action.as_deref(), embedding.clone(), tol),
        Command::Catalog(CatalogCommand::List) => Ok(catalog_list()),
        Command::Catalog(CatalogCommand::Export { name, path }) => catalog_export(name, path),
    }
}

struct Input {
    category: Category,
    action: Option<SymmetryAction>,
    catalog_name: Option<String>,
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load_input(spec: &str) -> Result<Input, Failure> {
    if let Some(rest) = spec.strip_prefix("catalog:") {
        return match rest.split_once(':') {
            None => {
                let category = catalog::category(rest)
                    .ok_or_else(|| Failure::Input(format!("unknown catalog category {rest:?}")))?;
                Ok(Input {
                    category,
                    action: None,
                    catalog_name: Some(rest.to_string()),
                })
            }
            Some((name, act)) => {
                let (category, action) = catalog::action(name, act)
                    .ok_or_else(|| Failure::Input(format!("unknown catalog action {name}:{act}")))?;
                Ok(Input {
                    category,
                    action: Some(action),
                    catalog_name: Some(name.to_string()),
                })
            }
        };
    }
    let text = read_file(spec)?;
    let category = Category::from_json_str(&text).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
    Ok(Input {
        category,
        action: None,
        catalog_name: None,
    })
}

/// The action named on the command line, else the one in the category URI,
/// else the first bundled action among `defaults`.
fn resolve_action(input: &Input, arg: Option<&str>, defaults: &[&str]) -> Result<Option<SymmetryAction>, Failure> {
    if let Some(arg) = arg {
        if let Some(rest) = arg.strip_prefix("catalog:") {
            let (cn, an) = rest
                .split_once(':')
                .ok_or_else(|| Failure::Input("action URIs have the form catalog:<category>:<action>".into()))?;
            let (c, act) =
                catalog::action(cn, an).ok_or_else(|| Failure::Input(format!("unknown catalog action {cn}:{an}")))?;
            if c.labels() != input.category.labels() {
                return Err(Failure::Input(format!("action {cn}:{an} belongs to a different category")));
            }
            return Ok(Some(act));
        }
        if !Path::new(arg).exists() {
            if let Some((_, act)) = input.catalog_name.as_deref().and_then(|name| catalog::action(name, arg)) {
                return Ok(Some(act));
            }
        }
        let text = read_file(arg)?;
        return SymmetryAction::from_json_str(&text, &input.category)
            .map(Some)
            .map_err(|e| Failure::Input(format!("{arg}: {e}")));
    }
    if input.action.is_some() {
        return Ok(input.action.clone());
    }
    let name = match &input.catalog_name {
        Some(name) => name,
        None => return Ok(None),
    };
    Ok(defaults.iter().find_map(|d| catalog::action(name, d)).map(|(_, act)| act))
}

fn parse_charges(text: &str, rank: usize) -> Result<Vec<Rational64>, Failure> {
    let q = text
        .split(',')
        .map(|s| s.trim().parse::<Rational64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(format!("bad charge list {text:?}: {e}")))?;
    if q.len() != rank {
        return Err(Failure::Input(format!("{} charges given for {rank} anyons", q.len())));
    }
    Ok(q)
}

/// Rounds to 10 significant digits and prints values below `tol` as 0.
fn real(x: f64, tol: f64) -> String {
    if x.abs() < tol {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("float round trip");
    format!("{rounded}")
}

fn complex(z: C64, tol: f64) -> String {
    format!("({}, {})", real(z.re, tol), real(z.im, tol))
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

fn report_json(r: &Report) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    v["passed"] = json!(r.passed());
    v
}

fn report_text(r: &Report) -> String {
    r.to_string().lines().map(|line| format!("  {line}\n")).collect()
}

fn modularity_report(c: &Category, tol: f64) -> Report {
    let center = match algebra::muger_center(c, tol) {
        Ok(center) => center,
        Err(e) => {
            let mut r = Report::new("modularity");
            r.push(e.to_string(), None);
            return r;
        }
    };
    if center.len() == 1 {
        return Report::new("modularity");
    }
    match c.fermion() {
        Some(_) => match algebra::check_super_modular(c, tol) {
            Ok(sm) => sm.report,
            Err(e) => {
                let mut r = Report::new("super-modularity");
                r.push(e.to_string(), None);
                r
            }
        },
        None => {
            let mut r = Report::new("modularity");
            r.push(format!("Müger center has {} anyons", center.len()), None);
            r
        }
    }
}

fn verify(spec: &str, action: Option<&str>, tol: f64) -> Result<Output, Failure> {
    let input = load_input(spec)?;
    let act = resolve_action(&input, action, &[])?;
    let c = &input.category;
    let mut reports = vec![validate_shape(c)];
    if reports[0].passed() {
        reports.push(check_pentagon(c, tol));
        reports.push(check_hexagon(c, tol));
        reports.push(check_unitarity(c, tol));
        if reports.iter().all(Report::passed) {
            reports.push(modularity_report(c, tol));
        }
    }
    let category_checks = reports.len();
    if let Some(act) = &act {
        if reports.iter().all(Report::passed) {
            reports.extend(symmetry::check_all(c, act, tol));
        } else {
            let mut r = Report::new("symmetry action");
            r.push("skipped because the category failed its checks", None);
            reports.push(r);
        }
    }
    let ok = reports.iter().all(Report::passed);
    let mut text = format!("category: {}\n", c.name());
    for (i, r) in reports.iter().enumerate() {
        if i == category_checks {
            text.push_str(&format!("action: {}\n", act.as_ref().map_or("", |a| a.name())));
        }
        text.push_str(&report_text(r));
    }
    text.push_str(if ok { "all checks passed\n" } else { "consistency checks failed\n" });
    let json = json!({
        "category": c.name(),
        "action": act.as_ref().map(|a| a.name()),
        "checks": reports.iter().map(report_json).collect::<Vec<_>>(),
        "passed": ok,
    });
    Ok(Output { text, json, ok })
}

fn invariants(spec: &str, tol: f64) -> Result<Output, Failure> {
    let input = load_input(spec)?;
    let c = &input.category;
    let structure = validate_structure(c, tol);
    if !structure.passed() {
        return Err(Failure::Check(structure.to_string()));
    }
    let inv = Invariants::compute(c).map_err(|e| Failure::Check(e.to_string()))?;
    let center = inv.muger_center(tol);
    let central_charge = if center.len() == 1 {
        Some(algebra::central_charge(c, tol).map_err(|e| Failure::Check(e.to_string()))?)
    } else {
        None
    };
    let n = c.rank();
    let mut text = format!("category: {}\n", c.name());
    text.push_str(&format!("D^2 = {}\n", real(inv.total_dim.powi(2), tol)));
    for a in 0..n {
        text.push_str(&format!(
            "  {:<8} d = {:<14} theta = {}\n",
            c.label(a),
            real(inv.d[a], tol),
            complex(inv.theta[a], tol)
        ));
    }
    text.push_str("S:\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| complex(inv.s[(a, b)], tol)).collect();
        text.push_str(&format!("  {}\n", row.join(" ")));
    }
    let center_labels: Vec<&str> = center.iter().map(|&a| c.label(a)).collect();
    text.push_str(&format!("Müger center: {{{}}}\n", center_labels.join(", ")));
    if let Some(cc) = central_charge {
        text.push_str(&format!("central charge: {cc} mod 8\n"));
    }
    let json = json!({
        "category": c.name(),
        "anyons": c.labels(),
        "fermion": c.fermion().map(|f| c.label(f)),
        "d": inv.d,
        "total_dimension_squared": inv.total_dim.powi(2),
        "theta": inv.theta.iter().map(|&z| cjson(z)).collect::<Vec<_>>(),
        "S": (0..n).map(|a| (0..n).map(|b| cjson(inv.s[(a, b)])).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "muger_center": center_labels,
        "central_charge": central_charge.map(|q| q.to_string()),
    });
    Ok(Output { text, json, ok: true })
}

fn result_line(r: &IndicatorResult, tol: f64) -> String {
    let nu = match (&r.nu, r.order) {
        (Some(nu), Some(order)) => format!(", nu = {nu} mod {order}"),
        (Some(nu), None) => format!(", nu = {nu}"),
        _ => String::new(),
    };
    format!("{}: value = {}{nu} [{}]\n", r.manifold, complex(r.value, tol), r.classification)
}

fn indicator(
    spec: &str,
    action: Option<&str>,
    sym: Symmetry,
    charges: Option<&str>,
    tol: f64,
) -> Result<Output, Failure> {
    let input = load_input(spec)?;
    let c = &input.category;
    let act = resolve_action(&input, action, sym.default_actions())?;
    let q = charges.map(|s| parse_charges(s, c.rank())).transpose()?;
    let mut text = format!("category: {}\n", c.name());
    let mut json = json!({
        "category": c.name(),
        "action": act.as_ref().map(|a| a.name()),
        "symmetry": sym.tag(),
    });
    if let Some(a) = &act {
        text.push_str(&format!("action: {}\n", a.name()));
    }
    let need_action = || act.clone().ok_or_else(|| Failure::Input(format!("{} needs a symmetry action", sym.tag())));
    let mut ok = true;
    match sym {
        Symmetry::PinPlus | Symmetry::Epin => {
            let act = need_action()?;
            let r = if sym == Symmetry::PinPlus {
                indicators::indicator_pin_plus(c, &act, tol)?
            } else {
                indicators::indicator_epin(c, &act, tol)?
            };
            text.push_str(&result_line(&r, tol));
            json["results"] = json!([r]);
        }
        Symmetry::ClassA | Symmetry::ClassC => {
            let q = q
                .or_else(|| act.as_ref().and_then(|a| a.charges().map(<[_]>::to_vec)))
                .ok_or_else(|| Failure::Input("class A and C need a charge table (--charges)".into()))?;
            let (theta, class) = if sym == Symmetry::ClassA {
                (indicators::class_a_theta(c, &q)?, HallClass::A)
            } else {
                (indicators::class_c_theta(c, &q)?, HallClass::C)
            };
            let hall = indicators::hall_conductance(theta, class)?;
            text.push_str(&format!("Theta1 = {}, Theta2 = {}\n", real(theta.0, tol), real(theta.1, tol)));
            text.push_str(&format!(
                "kappa = {} mod {m}, sigma_H = {} mod {m}\n",
                hall.kappa,
                hall.sigma_h,
                m = hall.modulus
            ));
            json["theta"] = json!([theta.0, theta.1]);
            json["hall"] = serde_json::to_value(hall).expect("hall serializes");
        }
        _ => {
            let class = sym.tenfold().expect("ten-fold class");
            let mut act = need_action()?;
            if let Some(q) = q {
                act.set_charges(Some(q));
            }
            let report = indicators::tenfold_report(c, &act, class, tol)?;
            let flags = indicators::gaplessness_check(&report, class, tol);
            for r in &report {
                text.push_str(&result_line(r, tol));
            }
            for f in &flags {
                text.push_str(&format!("gapless: {f}\n"));
            }
            ok = flags.is_empty();
            json["results"] = json!(report);
            json["gapless_flags"] = json!(flags);
        }
    }
    Ok(Output { text, json, ok })
}

fn indicator_values(c: &Category, act: &SymmetryAction, tol: f64) -> Vec<(String, C64)> {
    let mut out = Vec::new();
    if let Ok(r) = indicators::indicator_pin_plus(c, act, tol) {
        out.push(("pin+".to_string(), r.value));
    }
    if let Ok(r) = indicators::indicator_epin(c, act, tol) {
        out.push(("epin".to_string(), r.value));
    }
    for class in [
        TenfoldClass::AI,
        TenfoldClass::AII,
        TenfoldClass::AIII,
        TenfoldClass::CI,
        TenfoldClass::CII,
    ] {
        if let Ok(report) = indicators::tenfold_report(c, act, class, tol) {
            for r in report {
                out.push((format!("{class:?}/{}", r.manifold), r.value));
            }
        }
    }
    out
}

fn gauge_orbit(spec: &str, action: Option<&str>, samples: u64, seed: u64, tol: f64) -> Result<Output, Failure> {
    let input = load_input(spec)?;
    let c = &input.category;
    let act = resolve_action(&input, action, &["z4t", "z2t", "z2tf", "ci"])?
        .ok_or_else(|| Failure::Input("gauge-orbit needs a symmetry action".into()))?;
    let base = indicator_values(c, &act, tol);
    let mut worst: f64 = 0.0;
    let mut failed = Vec::new();
    for i in 0..samples {
        let s = seed.wrapping_add(i);
        let gauge = random_gauge(c, &act, s);
        let (c2, act2) = apply_vertex_gauge(c, &act, &gauge);
        let act2 = apply_action_gauge(&c2, &act2, &gauge);
        let checks = [check_pentagon(&c2, tol), check_hexagon(&c2, tol)]
            .into_iter()
            .chain(symmetry::check_all(&c2, &act2, tol))
            .all(|r| r.passed());
        let values = indicator_values(&c2, &act2, tol);
        let same_keys = values.len() == base.len() && values.iter().zip(&base).all(|(x, y)| x.0 == y.0);
        if !checks || !same_keys {
            failed.push(s);
            continue;
        }
        for ((_, x), (_, y)) in base.iter().zip(&values) {
            worst = worst.max((x - y).norm());
        }
    }
    let ok = failed.is_empty() && worst < tol;
    let mut text = format!("category: {}\naction: {}\n", c.name(), act.name());
    text.push_str(&format!("indicators tracked: {}\n", base.len()));
    for (name, z) in &base {
        text.push_str(&format!("  {name}: {}\n", complex(*z, tol)));
    }
    text.push_str(&format!(
        "samples: {samples} (seeds {seed}..), failed: {}, max indicator change: {:.3e}\n",
        failed.len(),
        worst
    ));
    text.push_str(if ok { "gauge invariant\n" } else { "gauge invariance violated\n" });
    let json = json!({
        "category": c.name(),
        "action": act.name(),
        "samples": samples,
        "seed": seed,
        "indicators": base.iter().map(|(k, z)| json!({"name": k, "value": cjson(*z)})).collect::<Vec<_>>(),
        "failed_seeds": failed,
        "max_change": worst,
        "passed": ok,
    });
    Ok(Output { text, json, ok })
}

fn zest(spec: &str, target: Option<Rational64>, output: Option<&Path>, tol: f64) -> Result<Output, Failure> {
    let input = load_input(spec)?;
    let ext = &input.category;
    let candidates = match target {
        Some(t) => vec![extension::zest_to_central_charge(ext, t, tol)?],
        None => extension::zest_orbit(ext, tol)?,
    };
    let mut text = format!("category: {}\n", ext.name());
    for z in &candidates {
        text.push_str(&format!("b = {}: central charge {} mod 8\n", complex(z.b, tol), z.central_charge));
    }
    if let Some(path) = output {
        let chosen = &candidates[0].category;
        std::fs::write(path, chosen.to_json_string() + "\n")
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        text.push_str(&format!("wrote {}\n", path.display()));
    }
    let json = json!({
        "category": ext.name(),
        "target_central_charge": target.map(|t| t.to_string()),
        "candidates": candidates
            .iter()
            .map(|z| json!({"b": cjson(z.b), "central_charge": z.central_charge.to_string(), "name": z.category.name()}))
            .collect::<Vec<_>>(),
    });
    Ok(Output { text, json, ok: true })
}

fn cascade(
    spec: &str,
    action: Option<&str>,
    ext_spec: &str,
    ext_action: Option<&str>,
    embedding: Option<Vec<usize>>,
    tol: f64,
) -> Result<Output, Failure> {
    let input = load_input(spec)?;
    let smtc = &input.category;
    let act = resolve_action(&input, action, &["z4t", "z2t"])?
        .ok_or_else(|| Failure::Input("cascade needs a symmetry action".into()))?;
    let (ext, fixture_embedding, fixture_action) = match ext_spec.strip_prefix("catalog:") {
        Some(name) => {
            let fixture = catalog::extension_fixtures()
                .into_iter()
                .find(|f| f.name == name)
                .ok_or_else(|| Failure::Input(format!("unknown catalog extension {name:?}")))?;
            (fixture.ext, Some(fixture.embedding), fixture.action)
        }
        None => {
            let text = read_file(ext_spec)?;
            let ext = Category::from_json_str(&text).map_err(|e| Failure::Input(format!("{ext_spec}: {e}")))?;
            (ext, None, None)
        }
    };
    let embedding = embedding
        .or(fixture_embedding)
        .ok_or_else(|| Failure::Input("an extension file needs --embedding".into()))?;
    let ext_act = match ext_action {
        Some(path) => {
            let text = read_file(path)?;
            Some(SymmetryAction::from_json_str(&text, &ext).map_err(|e| Failure::Input(format!("{path}: {e}")))?)
        }
        None => fixture_action,
    };
    let candidates = extension::extension_candidates(&ext, tol)?;
    let layer1 = extension::cascade_layer1(smtc, &candidates)?;
    let layer3 = match &ext_act {
        Some(ea) => Some(extension::cascade_layer3(smtc, &act, &ext, ea, &embedding, tol)?),
        None => None,
    };
    let verdict = |b: bool| if b { "obstructed" } else { "unobstructed" };
    let charges: Vec<String> = layer1.central_charges.iter().map(|q| q.to_string()).collect();
    let mut text = format!("super-MTC: {}\naction: {}\nextension: {}\n", smtc.name(), act.name(), ext.name());
    text.push_str(&format!(
        "layer 1: {} (candidate central charges: {})\n",
        verdict(layer1.obstructed),
        charges.join(", ")
    ));
    match &layer3 {
        Some(v) => text.push_str(&format!("layer 3: {}\n", verdict(v.obstructed))),
        None => text.push_str("layer 3: skipped (no action on the extension)\n"),
    }
    let json = json!({
        "category": smtc.name(),
        "action": act.name(),
        "extension": ext.name(),
        "embedding": embedding,
        "layer1": {"obstructed": layer1.obstructed, "central_charges": charges},
        "layer3": layer3.as_ref().map(|v| json!({"obstructed": v.obstructed, "extended": v.extended.is_some()})),
    });
    Ok(Output { text, json, ok: true })
}

fn catalog_list() -> Output {
    let mut text = String::from("categories:\n");
    let mut cats = Vec::new();
    for name in catalog::CATEGORY_NAMES {
        let c = catalog::category(name).expect("registered category");
        let fermion = c.fermion().map(|f| c.label(f).to_string());
        text.push_str(&format!(
            "  {:<20} {:<24} rank {:<3} fermion {}\n",
            name,
            c.name(),
            c.rank(),
            fermion.as_deref().unwrap_or("-")
        ));
        cats.push(json!({"name": name, "title": c.name(), "rank": c.rank(), "fermion": fermion}));
    }
    text.push_str("actions:\n");
    let acts: Vec<String> = catalog::ACTION_NAMES.iter().map(|(c, a)| format!("{c}:{a}")).collect();
    for a in &acts {
        text.push_str(&format!("  {a}\n"));
    }
    text.push_str("extensions:\n");
    let mut exts = Vec::new();
    for f in catalog::extension_fixtures() {
        let line = format!("  {:<20} extends {:<16} {}", f.name, f.smtc, if f.action.is_some() { "(with action)" } else { "" });
        text.push_str(line.trim_end());
        text.push('\n');
        exts.push(json!({"name": f.name, "smtc": f.smtc, "has_action": f.action.is_some()}));
    }
    let json = json!({"categories": cats, "actions": acts, "extensions": exts});
    Output { text, json, ok: true }
}

fn catalog_export(name: &str, path: &Path) -> Result<Output, Failure> {
    let body = match name.split_once(':') {
        None => catalog::category(name)
            .ok_or_else(|| Failure::Input(format!("unknown catalog category {name:?}")))?
            .to_json_string(),
        Some((cn, an)) => {
            let (c, act) =
                catalog::action(cn, an).ok_or_else(|| Failure::Input(format!("unknown catalog action {name:?}")))?;
            act.to_json_string(&c)
        }
    };
    std::fs::write(path, body + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(Output {
        text: format!("wrote {}\n", path.display()),
        json: json!({"name": name, "path": path.display().to_string()}),
        ok: true,
    })
}
