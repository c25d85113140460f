//! Scenario files.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! kind = "meissner"          # meissner | cs-check | regime-sweep | squid | corbino | pure-gauge-demo
//! name = "strip"             # optional, defaults to the file stem
//!
//! [constants]                # optional
//! charge = 1.0
//! mass = 1.0
//! flux_quantum = 3.14159     # optional override of h/e
//!
//! [geometry]                 # grid kinds: nx, ny, lx, ly, holes = [[i0, j0, i1, j1], ...]
//! nx = 200                   # corbino: r, l_b
//! ny = 1
//! lx = 10.0
//! ly = 0.05
//!
//! [parameters]               # kind-specific, see `KindSpec`
//! lambda = 1.0
//! b_ext = 1.0
//!
//! [outputs]                  # optional
//! dir = "out/strip"
//! format = "both"            # csv | json | both
//! ```
//!
//! Validation is strict: unknown keys are errors, and every problem is
//! reported with its dotted path before any computation starts.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use toml::{Table, Value};

use crate::dec::{CellRect, GridSpec};
use crate::field::Constants;
use crate::london::DirichletSides;
use crate::regime::{linspace, logspace, Axis, SigmaMode, SweepParam, Thresholds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Meissner,
    CsCheck,
    RegimeSweep,
    Squid,
    Corbino,
    PureGaugeDemo,
}

impl Kind {
    pub const ALL: [Kind; 6] =
        [Kind::Meissner, Kind::CsCheck, Kind::RegimeSweep, Kind::Squid, Kind::Corbino, Kind::PureGaugeDemo];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Meissner => "meissner",
            Kind::CsCheck => "cs-check",
            Kind::RegimeSweep => "regime-sweep",
            Kind::Squid => "squid",
            Kind::Corbino => "corbino",
            Kind::PureGaugeDemo => "pure-gauge-demo",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Kind::Meissner => "static London screening of an applied field",
            Kind::CsCheck => "Chern-Simons residuals of London and driven stacks",
            Kind::RegimeSweep => "Hall conductivity and regime labels over a parameter grid",
            Kind::Squid => "internal flux of a ring with a weak link versus applied flux",
            Kind::Corbino => "ring flux quanta against edge-strip filling",
            Kind::PureGaugeDemo => "pure-gauge potential around a hole and its flux quantum",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s)
    }

    fn geometry(self) -> GeometryKind {
        match self {
            Kind::Meissner | Kind::CsCheck | Kind::PureGaugeDemo => GeometryKind::Grid,
            Kind::Corbino => GeometryKind::Ring,
            Kind::RegimeSweep | Kind::Squid => GeometryKind::None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

enum GeometryKind {
    Grid,
    Ring,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            "both" => Some(Format::Both),
            _ => None,
        }
    }

    pub fn csv(self) -> bool {
        self != Format::Json
    }

    pub fn json(self) -> bool {
        self != Format::Csv
    }
}

/// London material given either by depth or by carrier density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Screening {
    Lambda(f64),
    Density(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquidField {
    Flux(f64),
    FluxQuanta(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KindSpec {
    Meissner {
        grid: GridSpec,
        screening: Screening,
        b_ext: f64,
        sides: DirichletSides,
        tolerance: f64,
        sigma_h: f64,
    },
    CsCheck {
        grid: GridSpec,
        screening: Screening,
        b_ext: f64,
        sides: DirichletSides,
        sigma_h: f64,
        dt: f64,
        slices: usize,
        /// Relative ramp rate of the current in the driven stack.
        drive: f64,
    },
    RegimeSweep {
        b: f64,
        n: f64,
        tau: f64,
        sigma: SigmaMode,
        axes: Vec<Axis>,
        thresholds: Thresholds,
    },
    Squid {
        beta: f64,
        phi_ext: Vec<f64>,
    },
    Corbino {
        r: f64,
        l_b: f64,
        b_squid: SquidField,
        n_carriers: u64,
    },
    PureGaugeDemo {
        grid: GridSpec,
        winding: i64,
        amplitude: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outputs {
    pub dir: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub constants: Constants,
    pub spec: KindSpec,
    pub outputs: Outputs,
}

impl Scenario {
    pub fn kind(&self) -> Kind {
        match self.spec {
            KindSpec::Meissner { .. } => Kind::Meissner,
            KindSpec::CsCheck { .. } => Kind::CsCheck,
            KindSpec::RegimeSweep { .. } => Kind::RegimeSweep,
            KindSpec::Squid { .. } => Kind::Squid,
            KindSpec::Corbino { .. } => Kind::Corbino,
            KindSpec::PureGaugeDemo { .. } => Kind::PureGaugeDemo,
        }
    }
}

/// One validation problem at a dotted key path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioError {
    pub issues: Vec<Issue>,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ScenarioError {}

#[derive(Default)]
struct Checker {
    issues: Vec<Issue>,
}

#[derive(Clone, Copy, PartialEq)]
enum Bound {
    Any,
    NonNegative,
    Positive,
}

impl Checker {
    fn err(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue { path: path.into(), message: message.into() });
    }

    fn table<'a>(&mut self, root: &'a Table, key: &str, required: bool) -> Option<&'a Table> {
        match root.get(key) {
            None if required => {
                self.err(key, "missing table");
                None
            }
            None => None,
            Some(Value::Table(t)) => Some(t),
            Some(_) => {
                self.err(key, "expected a table");
                None
            }
        }
    }

    fn unknown(&mut self, t: &Table, prefix: &str, allowed: &[&str]) {
        for k in t.keys() {
            if !allowed.contains(&k.as_str()) {
                self.err(join(prefix, k), format!("unknown key (accepted: {})", allowed.join(", ")));
            }
        }
    }

    fn number(&mut self, t: &Table, prefix: &str, key: &str, bound: Bound) -> Option<f64> {
        let path = join(prefix, key);
        let v = match t.get(key)? {
            Value::Float(f) => *f,
            Value::Integer(i) => *i as f64,
            _ => {
                self.err(path, "expected a number");
                return None;
            }
        };
        if !v.is_finite() {
            self.err(path, "must be finite");
            return None;
        }
        let ok = match bound {
            Bound::Any => true,
            Bound::NonNegative => v >= 0.0,
            Bound::Positive => v > 0.0,
        };
        if !ok {
            let what = if bound == Bound::Positive { "positive" } else { "non-negative" };
            self.err(path, format!("must be {what}, got {v}"));
            return None;
        }
        Some(v)
    }

    fn required_number(&mut self, t: &Table, prefix: &str, key: &str, bound: Bound) -> Option<f64> {
        if !t.contains_key(key) {
            self.err(join(prefix, key), "missing required value");
            return None;
        }
        self.number(t, prefix, key, bound)
    }

    fn number_or(&mut self, t: &Table, prefix: &str, key: &str, bound: Bound, default: f64) -> Option<f64> {
        if t.contains_key(key) {
            self.number(t, prefix, key, bound)
        } else {
            Some(default)
        }
    }

    fn integer(&mut self, t: &Table, prefix: &str, key: &str, min: i64) -> Option<i64> {
        let path = join(prefix, key);
        match t.get(key)? {
            Value::Integer(i) if *i >= min => Some(*i),
            Value::Integer(i) => {
                self.err(path, format!("must be at least {min}, got {i}"));
                None
            }
            _ => {
                self.err(path, "expected an integer");
                None
            }
        }
    }

    fn required_integer(&mut self, t: &Table, prefix: &str, key: &str, min: i64) -> Option<i64> {
        if !t.contains_key(key) {
            self.err(join(prefix, key), "missing required value");
            return None;
        }
        self.integer(t, prefix, key, min)
    }

    fn number_list(&mut self, v: &Value, path: &str) -> Option<Vec<f64>> {
        let Value::Array(items) = v else {
            self.err(path, "expected an array of numbers");
            return None;
        };
        let mut out = Vec::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            match item {
                Value::Float(f) if f.is_finite() => out.push(*f),
                Value::Integer(n) => out.push(*n as f64),
                _ => {
                    self.err(format!("{path}[{i}]"), "expected a finite number");
                    return None;
                }
            }
        }
        Some(out)
    }

    /// `[start, stop, count]` for linspace/logspace.
    fn spacing(&mut self, v: &Value, path: &str) -> Option<(f64, f64, usize)> {
        let list = self.number_list(v, path)?;
        match list[..] {
            [a, b, n] if n >= 1.0 && n.fract() == 0.0 => Some((a, b, n as usize)),
            _ => {
                self.err(path, "expected [start, stop, count] with a positive integer count");
                None
            }
        }
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

const PARAMS: &str = "parameters";

fn parse_constants(c: &mut Checker, root: &Table) -> Option<Constants> {
    let Some(t) = c.table(root, "constants", false) else {
        return Some(Constants::default());
    };
    c.unknown(t, "constants", &["charge", "mass", "flux_quantum"]);
    let charge = c.number_or(t, "constants", "charge", Bound::Positive, 1.0);
    let mass = c.number_or(t, "constants", "mass", Bound::Positive, 1.0);
    let phi0 = if t.contains_key("flux_quantum") {
        Some(c.number(t, "constants", "flux_quantum", Bound::Positive)?)
    } else {
        None
    };
    let mut k = Constants::new(charge?, mass?).ok()?;
    k.flux_quantum_override = phi0;
    Some(k)
}

fn parse_grid(c: &mut Checker, t: &Table) -> Option<GridSpec> {
    const G: &str = "geometry";
    c.unknown(t, G, &["nx", "ny", "lx", "ly", "holes"]);
    let nx = c.required_integer(t, G, "nx", 1);
    let ny = c.required_integer(t, G, "ny", 1);
    let lx = c.required_number(t, G, "lx", Bound::Positive);
    let ly = c.required_number(t, G, "ly", Bound::Positive);
    let mut holes = Vec::new();
    if let Some(v) = t.get("holes") {
        match v {
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    let path = format!("geometry.holes[{i}]");
                    let ints: Option<Vec<usize>> = match item {
                        Value::Array(xs) => {
                            xs.iter().map(|x| x.as_integer().filter(|&n| n >= 0).map(|n| n as usize)).collect()
                        }
                        _ => None,
                    };
                    match ints.as_deref() {
                        Some(&[i0, j0, i1, j1]) => holes.push(CellRect::new(i0, j0, i1, j1)),
                        _ => c.err(path, "expected [i0, j0, i1, j1] with non-negative integers"),
                    }
                }
            }
            _ => c.err("geometry.holes", "expected an array of [i0, j0, i1, j1]"),
        }
    }
    let mut spec = GridSpec::new(nx? as usize, ny? as usize, lx?, ly?);
    for h in holes {
        spec = spec.with_hole(h);
    }
    if let Err(e) = crate::dec::Mesh2D::from_grid(&spec) {
        c.err("geometry", e.to_string());
        return None;
    }
    Some(spec)
}

fn check_thickness(c: &mut Checker, grid: &Option<GridSpec>, sides: &Option<DirichletSides>) {
    let (Some(g), Some(s)) = (grid, sides) else {
        return;
    };
    if (s.left || s.right) && g.nx < 2 {
        c.err("geometry.nx", "need at least 2 cells across a Dirichlet direction");
    }
    if (s.bottom || s.top) && g.ny < 2 {
        c.err("geometry.ny", "need at least 2 cells across a Dirichlet direction");
    }
}

fn parse_screening(c: &mut Checker, p: &Table) -> Option<Screening> {
    match (p.contains_key("lambda"), p.contains_key("n")) {
        (true, false) => c.number(p, PARAMS, "lambda", Bound::Positive).map(Screening::Lambda),
        (false, true) => c.number(p, PARAMS, "n", Bound::Positive).map(Screening::Density),
        (true, true) => {
            c.err("parameters.lambda", "give either lambda or n, not both");
            None
        }
        (false, false) => {
            c.err("parameters.lambda", "missing required value (or give n)");
            None
        }
    }
}

/// Without an explicit list every side is Dirichlet, except across a
/// direction that is a single cell thick, which is left insulated.
fn parse_sides(c: &mut Checker, p: &Table, grid: &Option<GridSpec>) -> Option<DirichletSides> {
    let Some(v) = p.get("dirichlet") else {
        let mut s = DirichletSides::default();
        if let Some(g) = grid {
            s.left = g.nx >= 2;
            s.right = g.nx >= 2;
            s.bottom = g.ny >= 2;
            s.top = g.ny >= 2;
        }
        return Some(s);
    };
    let Value::Array(items) = v else {
        c.err("parameters.dirichlet", "expected an array of side names");
        return None;
    };
    let mut s = DirichletSides { left: false, right: false, bottom: false, top: false, holes: false };
    for (i, item) in items.iter().enumerate() {
        match item.as_str() {
            Some("left") => s.left = true,
            Some("right") => s.right = true,
            Some("bottom") => s.bottom = true,
            Some("top") => s.top = true,
            Some("holes") => s.holes = true,
            _ => c.err(format!("parameters.dirichlet[{i}]"), "expected one of left, right, bottom, top, holes"),
        }
    }
    Some(s)
}

fn parse_axes(c: &mut Checker, p: &Table) -> Option<Vec<Axis>> {
    let Some(v) = p.get("axes") else {
        c.err("parameters.axes", "missing required value");
        return None;
    };
    let Value::Array(items) = v else {
        c.err("parameters.axes", "expected an array of tables");
        return None;
    };
    if items.is_empty() {
        c.err("parameters.axes", "need at least one axis");
        return None;
    }
    let mut axes = Vec::new();
    let mut ok = true;
    for (i, item) in items.iter().enumerate() {
        let prefix = format!("parameters.axes[{i}]");
        let Value::Table(t) = item else {
            c.err(prefix, "expected a table");
            ok = false;
            continue;
        };
        c.unknown(t, &prefix, &["param", "values", "linspace", "logspace"]);
        let param = match t.get("param").and_then(Value::as_str) {
            Some("b") => Some(SweepParam::B),
            Some("n") => Some(SweepParam::N),
            Some("tau") => Some(SweepParam::Tau),
            Some("omega_c_tau") => Some(SweepParam::OmegaCTau),
            _ => {
                c.err(join(&prefix, "param"), "expected one of b, n, tau, omega_c_tau");
                None
            }
        };
        let given: Vec<&str> = ["values", "linspace", "logspace"].into_iter().filter(|k| t.contains_key(*k)).collect();
        let values = match given[..] {
            ["values"] => c.number_list(&t["values"], &join(&prefix, "values")),
            ["linspace"] => c.spacing(&t["linspace"], &join(&prefix, "linspace")).map(|(a, b, n)| linspace(a, b, n)),
            ["logspace"] => c.spacing(&t["logspace"], &join(&prefix, "logspace")).map(|(a, b, n)| logspace(a, b, n)),
            _ => {
                c.err(prefix.clone(), "give exactly one of values, linspace, logspace");
                None
            }
        };
        if let Some(vals) = &values {
            if vals.is_empty() {
                c.err(join(&prefix, "values"), "axis is empty");
            } else if vals.iter().any(|v| *v <= 0.0) {
                c.err(join(&prefix, "values"), "all values must be positive");
            }
        }
        match (param, values) {
            (Some(param), Some(values)) => axes.push(Axis { param, values }),
            _ => ok = false,
        }
    }
    let has = |q| axes.iter().filter(|a: &&Axis| a.param == q).count();
    for q in [SweepParam::B, SweepParam::N, SweepParam::Tau, SweepParam::OmegaCTau] {
        if has(q) > 1 {
            c.err("parameters.axes", format!("{} is swept twice", q.name()));
        }
    }
    if has(SweepParam::Tau) > 0 && has(SweepParam::OmegaCTau) > 0 {
        c.err("parameters.axes", "tau and omega_c_tau cannot both be swept");
    }
    ok.then_some(axes)
}

fn parse_thresholds(c: &mut Checker, p: &Table) -> Option<Thresholds> {
    let d = Thresholds::default();
    let Some(v) = p.get("thresholds") else {
        return Some(d);
    };
    let Value::Table(t) = v else {
        c.err("parameters.thresholds", "expected a table");
        return None;
    };
    const T: &str = "parameters.thresholds";
    c.unknown(t, T, &["low", "high", "nu_tolerance", "q_max", "sigma_tolerance", "b_c"]);
    let th = Thresholds {
        low: c.number_or(t, T, "low", Bound::Positive, d.low)?,
        high: c.number_or(t, T, "high", Bound::Positive, d.high)?,
        nu_tolerance: c.number_or(t, T, "nu_tolerance", Bound::Positive, d.nu_tolerance)?,
        q_max: if t.contains_key("q_max") { c.integer(t, T, "q_max", 2)? as u32 } else { d.q_max },
        sigma_tolerance: c.number_or(t, T, "sigma_tolerance", Bound::Positive, d.sigma_tolerance)?,
        b_c: if t.contains_key("b_c") { Some(c.number(t, T, "b_c", Bound::Positive)?) } else { None },
    };
    if let Err(e) = th.validate() {
        c.err(T, e.to_string());
        return None;
    }
    Some(th)
}

fn parse_kind(c: &mut Checker, kind: Kind, geometry: Option<&Table>, p: &Table) -> Option<KindSpec> {
    let grid_spec = match (kind.geometry(), geometry) {
        (GeometryKind::Grid, Some(g)) => parse_grid(c, g),
        (GeometryKind::None, Some(_)) => {
            c.err("geometry", format!("kind {kind} takes no geometry"));
            None
        }
        (GeometryKind::Grid | GeometryKind::Ring, None) => {
            c.err("geometry", "missing table");
            None
        }
        _ => None,
    };
    match kind {
        Kind::Meissner => {
            c.unknown(p, PARAMS, &["lambda", "n", "b_ext", "dirichlet", "tolerance", "sigma_h"]);
            let screening = parse_screening(c, p);
            let b_ext = c.required_number(p, PARAMS, "b_ext", Bound::Any);
            let sides = parse_sides(c, p, &grid_spec);
            check_thickness(c, &grid_spec, &sides);
            let tolerance = c.number_or(p, PARAMS, "tolerance", Bound::Positive, 1e-10);
            let sigma_h = c.number_or(p, PARAMS, "sigma_h", Bound::NonNegative, 1.0);
            Some(KindSpec::Meissner {
                grid: grid_spec?,
                screening: screening?,
                b_ext: b_ext?,
                sides: sides?,
                tolerance: tolerance?,
                sigma_h: sigma_h?,
            })
        }
        Kind::CsCheck => {
            c.unknown(p, PARAMS, &["lambda", "n", "b_ext", "dirichlet", "sigma_h", "dt", "slices", "drive"]);
            let screening = parse_screening(c, p);
            let b_ext = c.number_or(p, PARAMS, "b_ext", Bound::Any, 1.0);
            let sides = parse_sides(c, p, &grid_spec);
            check_thickness(c, &grid_spec, &sides);
            let sigma_h = c.number_or(p, PARAMS, "sigma_h", Bound::NonNegative, 1.0);
            let dt = c.number_or(p, PARAMS, "dt", Bound::Positive, 0.1);
            let slices = if p.contains_key("slices") { c.integer(p, PARAMS, "slices", 2) } else { Some(3) };
            let drive = c.number_or(p, PARAMS, "drive", Bound::Positive, 0.01);
            Some(KindSpec::CsCheck {
                grid: grid_spec?,
                screening: screening?,
                b_ext: b_ext?,
                sides: sides?,
                sigma_h: sigma_h?,
                dt: dt?,
                slices: slices? as usize,
                drive: drive?,
            })
        }
        Kind::RegimeSweep => {
            c.unknown(p, PARAMS, &["b", "n", "tau", "sigma_0", "axes", "thresholds"]);
            let b = c.number_or(p, PARAMS, "b", Bound::Positive, 1.0);
            let n = c.number_or(p, PARAMS, "n", Bound::Positive, 1.0);
            let tau = c.number_or(p, PARAMS, "tau", Bound::Positive, 1.0);
            let sigma = match p.get("sigma_0") {
                None => Some(SigmaMode::UnitHall),
                Some(Value::String(s)) if s == "unit-hall" => Some(SigmaMode::UnitHall),
                Some(Value::String(s)) if s == "drude" => Some(SigmaMode::Drude),
                Some(Value::Float(_) | Value::Integer(_)) => {
                    c.number(p, PARAMS, "sigma_0", Bound::NonNegative).map(SigmaMode::Fixed)
                }
                Some(_) => {
                    c.err("parameters.sigma_0", "expected a non-negative number, \"unit-hall\" or \"drude\"");
                    None
                }
            };
            let axes = parse_axes(c, p);
            let thresholds = parse_thresholds(c, p);
            Some(KindSpec::RegimeSweep { b: b?, n: n?, tau: tau?, sigma: sigma?, axes: axes?, thresholds: thresholds? })
        }
        Kind::Squid => {
            c.unknown(p, PARAMS, &["beta", "phi_ext", "phi_ext_range"]);
            let beta = c.required_number(p, PARAMS, "beta", Bound::NonNegative);
            let phi_ext = match (p.get("phi_ext"), p.get("phi_ext_range")) {
                (Some(v), None) => c.number_list(v, "parameters.phi_ext"),
                (None, Some(v)) => c.spacing(v, "parameters.phi_ext_range").map(|(a, b, n)| linspace(a, b, n)),
                (None, None) => Some(linspace(-2.4, 2.4, 481)),
                (Some(_), Some(_)) => {
                    c.err("parameters.phi_ext", "give either phi_ext or phi_ext_range, not both");
                    None
                }
            };
            if let Some(xs) = &phi_ext {
                if xs.is_empty() {
                    c.err("parameters.phi_ext", "grid is empty");
                } else if xs.windows(2).any(|w| w[1] < w[0]) {
                    c.err("parameters.phi_ext", "grid must be ascending");
                }
            }
            Some(KindSpec::Squid { beta: beta?, phi_ext: phi_ext? })
        }
        Kind::Corbino => {
            let (r, l_b) = match geometry {
                Some(g) => {
                    c.unknown(g, "geometry", &["r", "l_b"]);
                    let r = c.required_number(g, "geometry", "r", Bound::Positive);
                    let l_b = c.required_number(g, "geometry", "l_b", Bound::Positive);
                    if let (Some(r), Some(l)) = (r, l_b) {
                        if l >= r {
                            c.err("geometry.l_b", format!("must be smaller than r = {r}"));
                        }
                    }
                    (r, l_b)
                }
                None => (None, None),
            };
            c.unknown(p, PARAMS, &["b_squid", "flux_quanta", "n_carriers"]);
            let field = match (p.contains_key("b_squid"), p.contains_key("flux_quanta")) {
                (true, false) => c.number(p, PARAMS, "b_squid", Bound::Positive).map(SquidField::Flux),
                (false, true) => c.number(p, PARAMS, "flux_quanta", Bound::Positive).map(SquidField::FluxQuanta),
                (true, true) => {
                    c.err("parameters.b_squid", "give either b_squid or flux_quanta, not both");
                    None
                }
                (false, false) => {
                    c.err("parameters.b_squid", "missing required value (or give flux_quanta)");
                    None
                }
            };
            let n_carriers = c.required_integer(p, PARAMS, "n_carriers", 1);
            Some(KindSpec::Corbino { r: r?, l_b: l_b?, b_squid: field?, n_carriers: n_carriers? as u64 })
        }
        Kind::PureGaugeDemo => {
            c.unknown(p, PARAMS, &["winding", "amplitude"]);
            let winding = if p.contains_key("winding") { c.integer(p, PARAMS, "winding", i64::MIN) } else { Some(1) };
            let amplitude = c.number_or(p, PARAMS, "amplitude", Bound::Positive, 1.0);
            let grid = grid_spec?;
            if grid.holes.len() != 1 {
                c.err("geometry.holes", format!("pure-gauge-demo needs exactly one hole, got {}", grid.holes.len()));
                return None;
            }
            Some(KindSpec::PureGaugeDemo { grid, winding: winding?, amplitude: amplitude? })
        }
    }
}

/// Parse and validate scenario text. `default_name` is used when the
/// document has no `name`.
pub fn parse_scenario_str(text: &str, default_name: &str) -> Result<Scenario, ScenarioError> {
    let root: Table = toml::from_str(text)
        .map_err(|e| ScenarioError { issues: vec![Issue { path: String::new(), message: e.to_string() }] })?;
    let mut c = Checker::default();
    c.unknown(&root, "", &["kind", "name", "constants", "geometry", "parameters", "outputs"]);
    let accepted = Kind::ALL.map(Kind::as_str).join(", ");
    let kind = match root.get("kind") {
        None => {
            c.err("kind", format!("missing (accepted kinds: {accepted})"));
            None
        }
        Some(Value::String(s)) => {
            let k = Kind::parse(s);
            if k.is_none() {
                c.err("kind", format!("unknown kind \"{s}\" (accepted kinds: {accepted})"));
            }
            k
        }
        Some(_) => {
            c.err("kind", "expected a string");
            None
        }
    };
    let name = match root.get("name") {
        None => Some(default_name.to_string()),
        Some(Value::String(s)) if !s.is_empty() && !s.contains(['/', '\\']) => Some(s.clone()),
        Some(_) => {
            c.err("name", "expected a non-empty string without path separators");
            None
        }
    };
    let constants = parse_constants(&mut c, &root);
    let geometry = c.table(&root, "geometry", false);
    let empty = Table::new();
    let params = c.table(&root, "parameters", false).unwrap_or(&empty);
    let spec = kind.and_then(|k| parse_kind(&mut c, k, geometry, params));
    let outputs = match c.table(&root, "outputs", false) {
        None => Some(Outputs { dir: None, format: Format::Both }),
        Some(t) => {
            c.unknown(t, "outputs", &["dir", "format"]);
            let dir = match t.get("dir") {
                None => Some(None),
                Some(Value::String(s)) if !s.is_empty() => Some(Some(PathBuf::from(s))),
                Some(_) => {
                    c.err("outputs.dir", "expected a non-empty string");
                    None
                }
            };
            let format = match t.get("format") {
                None => Some(Format::Both),
                Some(v) => {
                    let f = v.as_str().and_then(Format::parse);
                    if f.is_none() {
                        c.err("outputs.format", "expected one of csv, json, both");
                    }
                    f
                }
            };
            match (dir, format) {
                (Some(dir), Some(format)) => Some(Outputs { dir, format }),
                _ => None,
            }
        }
    };
    match (c.issues.is_empty(), name, constants, spec, outputs) {
        (true, Some(name), Some(constants), Some(spec), Some(outputs)) => {
            Ok(Scenario { name, constants, spec, outputs })
        }
        _ => {
            if c.issues.is_empty() {
                c.err("", "invalid scenario");
            }
            Err(ScenarioError { issues: c.issues })
        }
    }
}

pub fn parse_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError {
        issues: vec![Issue { path: String::new(), message: format!("cannot read {}: {e}", path.display()) }],
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    parse_scenario_str(&text, stem)
}
