//! Input documents, report rendering and command implementations for the
//! `toric-dmod` binary.
//!
//! Fan and module documents are small TOML files. Reports are printed either
//! as `key: value` lines or, in machine format, as `key<TAB>value` lines.
//! Module documents are always emitted as TOML so they can be fed back in.

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use toric_dmod_core::charvar::{self, CharError};
use toric_dmod_core::dmod::{self, DmodError, GradedPresentation, Side};
use toric_dmod_core::fan_cox::{self, ClassElem, Fan, FanError, GradingData};
use toric_dmod_core::groebner::ideal::radical_membership;
use toric_dmod_core::groebner::FreeModuleElement;
use toric_dmod_core::poly::{var_names, Poly};
use toric_dmod_core::weyl::{self, WeylElement};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}

// Indices in the core are 0-based; files and reports use 1-based indices.
impl From<FanError> for CliError {
    fn from(e: FanError) -> Self {
        let one = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        let e = match e {
            FanError::RayArity { ray, found, expected } => FanError::RayArity { ray: ray + 1, found, expected },
            FanError::ZeroRay { ray } => FanError::ZeroRay { ray: ray + 1 },
            FanError::NotPrimitive { ray } => FanError::NotPrimitive { ray: ray + 1 },
            FanError::DuplicateRay { first, second } => FanError::DuplicateRay { first: first + 1, second: second + 1 },
            FanError::ConeIndexOutOfRange { cone, ray } => {
                FanError::ConeIndexOutOfRange { cone: cone + 1, ray: ray + 1 }
            }
            FanError::NonSimplicialCone { cone } => FanError::NonSimplicialCone { cone: cone + 1 },
            FanError::NonSmoothCone { cone } => FanError::NonSmoothCone { cone: cone + 1 },
            FanError::UnknownCone(c) => FanError::UnknownCone(one(&c)),
            FanError::ConeNotMaximal(c) => FanError::ConeNotMaximal(one(&c)),
            other => other,
        };
        CliError::Invalid(e.to_string())
    }
}

impl From<DmodError> for CliError {
    fn from(e: DmodError) -> Self {
        match e {
            DmodError::UnknownCone(c) => CliError::from(FanError::UnknownCone(c)),
            DmodError::Arity { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<CharError> for CliError {
    fn from(e: CharError) -> Self {
        match e {
            CharError::PreconditionViolated(msg) => CliError::Precondition(msg),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Machine,
}

/// Ordered `key, value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let sep = match format {
            Format::Plain => ": ",
            Format::Machine => "\t",
        };
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}{sep}{v}");
        }
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanDoc {
    n: usize,
    rays: Vec<Vec<i64>>,
    #[serde(default)]
    max_cones: Vec<Vec<usize>>,
}

/// Parses a fan document; cone indices in the file are 1-based.
pub fn parse_fan(text: &str) -> Result<Fan, CliError> {
    let doc: FanDoc = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if doc.rays.is_empty() {
        return Err(CliError::Parse("rays must not be empty".into()));
    }
    let mut cones = Vec::with_capacity(doc.max_cones.len());
    for c in &doc.max_cones {
        if c.contains(&0) {
            return Err(CliError::Parse("cone indices start at 1".into()));
        }
        cones.push(c.iter().map(|i| i - 1).collect());
    }
    Ok(Fan::new(doc.n, doc.rays, cones)?)
}

pub fn load_grading(text: &str) -> Result<GradingData, CliError> {
    let fan = parse_fan(text)?;
    Ok(fan_cox::grading_data(&fan)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    side: String,
    degrees: Vec<Vec<i64>>,
    #[serde(default)]
    relations: Vec<Vec<String>>,
}

pub fn parse_class(gd: &GradingData, v: &[i64]) -> Result<ClassElem, CliError> {
    if v.len() != gd.class_arity() {
        return Err(CliError::Parse(format!(
            "class vector has {} entries, the class group has {} coordinates",
            v.len(),
            gd.class_arity()
        )));
    }
    Ok(gd.reduce_class(&ClassElem(v.to_vec())))
}

/// Parses `"1"`, `"-1,0"` or `"[1, 0]"`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, CliError> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| CliError::Parse(format!("not an integer: '{}'", p.trim()))))
        .collect()
}

pub fn parse_module(gd: &GradingData, text: &str) -> Result<GradedPresentation, CliError> {
    let doc: ModuleDoc = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let side = match doc.side.as_str() {
        "left" => Side::Left,
        "right" => Side::Right,
        other => return Err(CliError::Parse(format!("side must be \"left\" or \"right\", got \"{other}\""))),
    };
    if doc.degrees.is_empty() {
        return Err(CliError::Parse("a module needs at least one generator".into()));
    }
    let degrees = doc.degrees.iter().map(|v| parse_class(gd, v)).collect::<Result<Vec<_>, _>>()?;
    let d = gd.d();
    let mut relations = Vec::with_capacity(doc.relations.len());
    for (k, row) in doc.relations.iter().enumerate() {
        if row.len() != degrees.len() {
            return Err(CliError::Parse(format!(
                "relation {} has {} entries, expected {}",
                k + 1,
                row.len(),
                degrees.len()
            )));
        }
        let comps = row
            .iter()
            .map(|s| WeylElement::parse(d, s).map_err(|e| CliError::Parse(format!("relation {}: {e}", k + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        relations.push(FreeModuleElement::new(comps));
    }
    Ok(GradedPresentation { side, d, degrees, relations })
}

fn render_int_list(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// `u1=[1, 1], u2=[...]`.
pub fn basis_line(gd: &GradingData) -> String {
    let mut parts: Vec<String> = gd.torsion().iter().map(|t| format!("Z/{t}")).collect();
    parts.extend(gd.dual_basis().iter().enumerate().map(|(j, u)| format!("u{}={}", j + 1, render_int_list(u))));
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

fn render_toml_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render_module(gd: &GradingData, m: &GradedPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Cl = {}; basis: {}", gd.class_group().describe(), basis_line(gd));
    let _ = writeln!(out, "side = \"{}\"", m.side);
    let degs: Vec<String> = m.degrees.iter().map(|c| render_int_list(&c.0)).collect();
    let _ = writeln!(out, "degrees = [{}]", degs.join(", "));
    if m.relations.is_empty() {
        out.push_str("relations = []\n");
    } else {
        out.push_str("relations = [\n");
        for r in &m.relations {
            let entries: Vec<String> = r.components.iter().map(|c| render_toml_string(&c.to_string())).collect();
            let _ = writeln!(out, "    [{}],", entries.join(", "));
        }
        out.push_str("]\n");
    }
    out
}

fn render_class_list(gd: &GradingData, classes: &[ClassElem]) -> String {
    let parts: Vec<String> = classes
        .iter()
        .map(|c| if gd.class_arity() == 1 { c.0[0].to_string() } else { render_int_list(&c.0) })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn render_cone(cone: &[usize]) -> String {
    let parts: Vec<String> = cone.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn cmd_fan_info(fan_text: &str) -> Result<Report, CliError> {
    let gd = load_grading(fan_text)?;
    let mut r = Report::default();
    r.push("d", gd.d().to_string());
    r.push("n", gd.n().to_string());
    r.push("Cl", gd.class_group().describe());
    r.push("basis", basis_line(&gd));
    r.push("deg", render_class_list(&gd, gd.generator_degrees()));
    let e = gd.e_bar();
    r.push("e", if e.0.len() == 1 { e.0[0].to_string() } else { render_int_list(&e.0) });
    let cones: Vec<String> = gd.fan().max_cones().iter().map(|c| render_cone(c)).collect();
    r.push("max-cones", cones.join(" "));
    r.push("b", fan_cox::irrelevant_ideal(gd.fan()).render(&var_names("x", gd.d())));
    if gd.free_rank() == 1 {
        r.push("theta", gd.theta_u(0).to_string());
    } else {
        for j in 0..gd.free_rank() {
            r.push(format!("theta-u{}", j + 1), gd.theta_u(j).to_string());
        }
    }
    Ok(r)
}

pub fn cmd_dl(fan_text: &str, class: &str) -> Result<String, CliError> {
    let gd = load_grading(fan_text)?;
    let b = parse_class(&gd, &parse_int_list(class)?)?;
    Ok(render_module(&gd, &dmod::d_module_left(&gd, &b)))
}

pub fn cmd_dr(fan_text: &str, class: &str) -> Result<String, CliError> {
    let gd = load_grading(fan_text)?;
    let a = parse_class(&gd, &parse_int_list(class)?)?;
    Ok(render_module(&gd, &dmod::d_module_right(&gd, &a)))
}

pub fn cmd_check(fan_text: &str, module_text: &str) -> Result<Report, CliError> {
    let gd = load_grading(fan_text)?;
    let m = parse_module(&gd, module_text)?;
    let v = dmod::check_theta_condition(&gd, &m);
    let mut r = Report::default();
    r.push("basis", basis_line(&gd));
    r.push("side", m.side.to_string());
    r.push("homogeneous", if m.is_homogeneous(&gd) { "yes" } else { "no" });
    match v.failure {
        None => r.push("theta-condition", "OK"),
        Some((i, j)) => r.push("theta-condition", format!("FAIL at generator {}, u = u{}", i + 1, j + 1)),
    }
    Ok(r)
}

pub fn cmd_charvar(fan_text: &str, module_text: &str, charts: bool, show_saturated: bool) -> Result<Report, CliError> {
    let gd = load_grading(fan_text)?;
    let m = parse_module(&gd, module_text)?;
    let rep = charvar::dimension_report(&gd, &m)?;
    let names = charvar::sprime_names(gd.d());
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut r = Report::default();
    r.push("basis", basis_line(&gd));
    r.push("j", rep.j.render(&names));
    r.push("dim", rep.dim.to_string());
    if show_saturated {
        r.push("saturated", rep.saturated.render(&names));
    }
    r.push("torsion", yes_no(rep.torsion));
    r.push("sheaf-dim", rep.sheaf_dim.map_or_else(|| "zero sheaf".to_string(), |k| k.to_string()));
    r.push("holonomic-A", yes_no(rep.holonomic_a));
    r.push("holonomic-sheaf", yes_no(rep.holonomic_sheaf));
    r.push("t-invariant", yes_no(rep.t_invariant));
    r.push("in-Z", yes_no(charvar::z_ideal_generators(&gd).iter().all(|p| radical_membership(p, &rep.j))));
    if charts && !rep.torsion {
        for cone in gd.fan().max_cones() {
            let c = charvar::chart_ideal(&gd, &m, cone)?;
            let key = format!("chart{}", render_cone(cone));
            let gens: Vec<String> = c.generators.iter().map(|g| format!("{}={}", g.name, g.render())).collect();
            let cnames = c.names();
            r.push(format!("{key}.coordinates"), gens.join(", "));
            r.push(format!("{key}.presentation"), c.presentation.render(&cnames));
            r.push(format!("{key}.ideal"), c.image.render(&cnames));
            r.push(format!("{key}.dim"), c.dimension().to_string());
        }
        let q = charvar::verify_quotient_dimension(&gd, &m)?;
        r.push("chart-dim", q.chart_max.map_or_else(|| "empty".to_string(), |k| k.to_string()));
        r.push("chart-agrees", yes_no(q.agrees));
    }
    Ok(r)
}

pub fn cmd_swap(fan_text: &str, module_text: &str) -> Result<String, CliError> {
    let gd = load_grading(fan_text)?;
    let m = parse_module(&gd, module_text)?;
    Ok(render_module(&gd, &dmod::left_right_swap(&gd, &m)))
}

pub fn cmd_local(fan_text: &str, cone: &str, p: &str, g: Option<&str>) -> Result<Report, CliError> {
    let gd = load_grading(fan_text)?;
    let cone_1: Vec<i64> = parse_int_list(cone)?;
    if cone_1.iter().any(|&i| i < 1) {
        return Err(CliError::Parse("cone indices start at 1".into()));
    }
    let cone: Vec<usize> = cone_1.iter().map(|&i| i as usize - 1).collect();
    let p = parse_int_list(p)?;
    let g = match g {
        Some(s) => Some(weyl::parse_theta_poly(gd.d(), s).map_err(|e| CliError::Parse(e.to_string()))?),
        None => None,
    };
    let rep = dmod::local_report(&gd, &cone, &p, g.as_ref())?;
    let th = var_names("th", gd.d());
    let vt = var_names("v", gd.n());
    let agree = |b: bool| if b { "AGREE" } else { "DISAGREE" };
    let mut r = Report::default();
    r.push("basis", basis_line(&gd));
    r.push("cone", render_cone(&cone));
    r.push("p", render_int_list(&p));
    r.push("iota(p)", render_int_list(&gd.iota_of(&p)));
    r.push("h_p", rep.h_p.render(&th));
    r.push("h_p-factored", rep.h_p_factored.clone());
    r.push("rho(h_p)", rep.rho_h_p.render(&vt));
    r.push("I(p)", format!("({})", dmod::i_p_ideal(&gd, &cone, &p)?.monic().render(&vt)));
    r.push("oracle", format!("{} (radius {})", agree(rep.oracle_agrees), rep.radius));
    r.push("inclusive-range", agree(rep.inclusive_range_agrees));
    r.push("Y(p)-exact", if rep.y_p_exact { "yes" } else { "no" });
    if let Some(img) = rep.image {
        let (pp, rg) = img?;
        r.push("image", format!("y^{} * ({})", render_int_list(&pp), rg.render(&vt)));
    }
    Ok(r)
}

/// Seed for randomized drivers: `TORIC_DMOD_SEED` if set, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("TORIC_DMOD_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

/// Renders a theta polynomial with `th` names; used by tests and reports.
pub fn render_theta(p: &Poly) -> String {
    p.render(&var_names("th", p.nvars()))
}
