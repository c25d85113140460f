//! Scenario execution and output files.
//!
//! Every run writes its data products plus `report.json` into one directory.
//! Floats are written in shortest round-trip form and JSON objects have
//! sorted keys, so identical scenarios give byte-identical files. Wall time
//! is never written to disk.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::dec::{Cochain, Degree, Mesh2D};
use crate::field::{
    cs_action, cs_residual, ohm_relation, pure_gauge_potential, snapshot_csv, wavefunction_from_phase, winding_phase,
    Constants, FieldState, SpacetimeStack,
};
use crate::london::{
    convergence_jsonl, current_csv, current_fraction_within, face_boundary_distances, field_csv, london_state,
    solve_meissner_with, Material, MeissnerSetup,
};
use crate::regime::{hall_conductivity, sweep, SigmaMode, SweepSpec};
use crate::ring::{corbino_bridge, flux_quantize, squid_staircase, RingGeometry};
use crate::scenario::{Format, KindSpec, Scenario, Screening, SquidField};

/// Environment variable naming the base directory for run outputs.
pub const OUT_DIR_ENV: &str = "GAUGECOND_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "gaugecond-out";

/// A checked inequality on a headline number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contract {
    pub name: String,
    pub value: f64,
    /// `"<="` or `">="`.
    pub relation: &'static str,
    pub limit: f64,
    pub passed: bool,
}

impl Contract {
    pub fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Contract { name: name.into(), value, relation: "<=", limit, passed: value <= limit }
    }

    pub fn at_least(name: &str, value: f64, limit: f64) -> Self {
        Contract { name: name.into(), value, relation: ">=", limit, passed: value >= limit }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub name: String,
    pub kind: String,
    pub scenario: Value,
    /// Files written, relative to the output directory.
    pub files: Vec<String>,
    pub metrics: Map<String, Value>,
    pub contracts: Vec<Contract>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum FileKind {
    Csv,
    Json,
}

struct Product {
    name: &'static str,
    kind: FileKind,
    content: String,
}

#[derive(Default)]
struct Outcome {
    products: Vec<Product>,
    metrics: Map<String, Value>,
    contracts: Vec<Contract>,
    /// gnuplot body, emitted when CSV output is on.
    plot: Option<String>,
}

impl Outcome {
    fn csv(&mut self, name: &'static str, content: String) {
        self.products.push(Product { name, kind: FileKind::Csv, content });
    }

    fn json(&mut self, name: &'static str, content: String) {
        self.products.push(Product { name, kind: FileKind::Json, content });
    }

    fn metric(&mut self, key: &str, v: impl Into<Value>) {
        self.metrics.insert(key.into(), v.into());
    }
}

/// Output directory: explicit flag, then the scenario's own setting, then
/// `$GAUGECOND_OUT_DIR/<name>`, then `gaugecond-out/<name>`.
pub fn resolve_out_dir(flag: Option<&Path>, scenario: &Scenario, env: Option<&str>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = &scenario.outputs.dir {
        return p.clone();
    }
    let base = env.filter(|s| !s.is_empty()).unwrap_or(DEFAULT_OUT_DIR);
    Path::new(base).join(&scenario.name)
}

/// Run a validated scenario and write its outputs into `out_dir`.
///
/// Module failures produce a failed report rather than an error; the error
/// case is reserved for I/O.
pub fn run(scenario: &Scenario, out_dir: &Path, format: Format) -> io::Result<RunReport> {
    let outcome = match &scenario.spec {
        KindSpec::Meissner { .. } => run_meissner(scenario),
        KindSpec::CsCheck { .. } => run_cs_check(scenario),
        KindSpec::RegimeSweep { .. } => run_regime_sweep(scenario),
        KindSpec::Squid { .. } => run_squid(scenario),
        KindSpec::Corbino { .. } => run_corbino(scenario),
        KindSpec::PureGaugeDemo { .. } => run_pure_gauge(scenario),
    };
    fs::create_dir_all(out_dir)?;
    let mut report = RunReport {
        name: scenario.name.clone(),
        kind: scenario.kind().to_string(),
        scenario: serde_json::to_value(scenario).expect("scenario serializes"),
        files: Vec::new(),
        metrics: Map::new(),
        contracts: Vec::new(),
        passed: false,
        error: None,
    };
    match outcome {
        Ok(out) => {
            for p in &out.products {
                let keep = match p.kind {
                    FileKind::Csv => format.csv(),
                    FileKind::Json => format.json(),
                };
                if keep {
                    fs::write(out_dir.join(p.name), &p.content)?;
                    report.files.push(p.name.to_string());
                }
            }
            if let (Some(body), true) = (&out.plot, format.csv()) {
                fs::write(out_dir.join("plot.gp"), plot_script(&scenario.name, body))?;
                report.files.push("plot.gp".into());
            }
            report.passed = out.contracts.iter().all(|c| c.passed);
            report.metrics = out.metrics;
            report.contracts = out.contracts;
        }
        Err(e) => report.error = Some(e),
    }
    report.files.push("report.json".into());
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    fs::write(out_dir.join("report.json"), text)?;
    Ok(report)
}

fn plot_script(name: &str, body: &str) -> String {
    format!("# gnuplot script for scenario {name}\nset datafile separator ','\nset key autotitle columnhead\n{body}")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn material(mesh: &Mesh2D, screening: Screening, constants: &Constants) -> Result<Material, String> {
    let region = vec![true; mesh.num_faces()];
    match screening {
        Screening::Lambda(l) => Material::from_lambda(l, region, constants),
        Screening::Density(n) => Material::new(n, region, constants),
    }
    .map_err(err)
}

fn nearest_face(mesh: &Mesh2D, p: [f64; 2]) -> usize {
    (0..mesh.num_faces())
        .min_by(|&a, &b| {
            let d = |f: usize| {
                let c = mesh.face_center(f);
                (c[0] - p[0]).hypot(c[1] - p[1])
            };
            d(a).total_cmp(&d(b))
        })
        .expect("meshes have faces")
}

fn run_meissner(s: &Scenario) -> Result<Outcome, String> {
    let KindSpec::Meissner { grid, screening, b_ext, sides, tolerance, sigma_h } = &s.spec else { unreachable!() };
    let mesh = Mesh2D::from_grid(grid).map_err(err)?;
    let mat = material(&mesh, *screening, &s.constants)?;
    let setup = MeissnerSetup { b_ext: *b_ext, sides: *sides, tolerance: *tolerance };
    let sol = solve_meissner_with(&mesh, &mat, &setup).map_err(err)?;
    let b = sol.field(&mesh);
    let [x0, y0, x1, y1] = mesh.bounding_box();
    let center = b[nearest_face(&mesh, [0.5 * (x0 + x1), 0.5 * (y0 + y1)])];
    let faces: Vec<usize> = (0..mesh.num_faces()).collect();
    let dist = face_boundary_distances(&mesh, sides);
    let deep = faces.iter().filter(|&&f| dist[f] > 5.0 * mat.lambda).map(|&f| b[f].abs()).reduce(f64::max);
    let state = london_state(&mesh, &sol, &mat, *sigma_h, &s.constants).map_err(err)?;
    let ohm = ohm_relation(&mesh, &state, &sol.b).map_err(err)?;

    let mut out = Outcome::default();
    out.metric("lambda", mat.lambda);
    out.metric("density", mat.n);
    out.metric("faces", mesh.num_faces());
    out.metric("iterations", sol.iterations);
    out.metric("residual_norm", sol.residual_norm);
    out.metric("center_field", center);
    out.metric("min_field", b.iter().copied().fold(f64::INFINITY, f64::min));
    out.metric("max_field", b.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    out.metric("flux_ratio", if *b_ext == 0.0 { Value::Null } else { sol.flux_ratio(&mesh, &faces).into() });
    out.metric(
        "deep_interior_max_field",
        deep.map_or(Value::Null, |v| (v / b_ext.abs().max(f64::MIN_POSITIVE)).into()),
    );
    out.metric("current_fraction_within_3_lambda", current_fraction_within(&mesh, sides, &sol.j_e, 3.0 * mat.lambda));
    out.metric("ohm_max_discrepancy", ohm.max_discrepancy());
    out.contracts.push(Contract::at_most("solver relative residual", sol.residual_norm, *tolerance));
    if *sigma_h == 1.0 {
        out.contracts.push(Contract::at_most("Hall-Ohm balance", ohm.max_discrepancy(), 1e-8));
    }
    out.csv("field.csv", field_csv(&mesh, &sol));
    out.csv("current.csv", current_csv(&mesh, &sol));
    out.json("convergence.jsonl", convergence_jsonl(&sol));
    out.plot = Some(if grid.ny == 1 {
        "set xlabel 'x'\nset ylabel 'B'\nplot 'field.csv' using 2:4 with linespoints\n".into()
    } else {
        "set view map\nset xlabel 'x'\nset ylabel 'y'\nsplot 'field.csv' using 2:3:4 with points palette pointtype 5\n"
            .into()
    });
    Ok(out)
}

fn run_cs_check(s: &Scenario) -> Result<Outcome, String> {
    let KindSpec::CsCheck { grid, screening, b_ext, sides, sigma_h, dt, slices, drive } = &s.spec else {
        unreachable!()
    };
    let mesh = Mesh2D::from_grid(grid).map_err(err)?;
    let mat = material(&mesh, *screening, &s.constants)?;
    let sol = solve_meissner_with(&mesh, &mat, &MeissnerSetup::new(*b_ext).with_sides(*sides)).map_err(err)?;
    let base = london_state(&mesh, &sol, &mat, *sigma_h, &s.constants).map_err(err)?;

    let london = SpacetimeStack::new(vec![base.clone(); *slices], *dt).map_err(err)?;
    let london_res = cs_residual(&mesh, &london).map_err(err)?;
    let london_action = cs_action(&mesh, &london).map_err(err)?;

    // Same potential, current ramped in time.
    let driven_states: Vec<FieldState> = (0..*slices)
        .map(|k| {
            let j = base.j_e.scale(1.0 + drive * k as f64 * dt);
            FieldState::from_currents(&mesh, base.a.clone(), j, mat.n, *sigma_h, mat.lambda, &s.constants)
        })
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let driven = SpacetimeStack::new(driven_states.clone(), *dt).map_err(err)?;
    let driven_res = cs_residual(&mesh, &driven).map_err(err)?;
    let mut fd_mismatch = 0.0f64;
    for (k, pair) in driven_states.windows(2).enumerate() {
        for e in 0..mesh.num_edges() {
            let hand = mat.lambda * (pair[1].j_e.values()[e] - pair[0].j_e.values()[e]) / dt;
            fd_mismatch = fd_mismatch.max((driven_res.mixed[k].values()[e] - hand).abs());
        }
    }

    let mut csv = String::from("stack,slice,component,max_abs\n");
    for (label, r) in [("london", &london_res), ("driven", &driven_res)] {
        for (k, c) in r.spatial.iter().enumerate() {
            csv.push_str(&format!("{label},{k},spatial,{:?}\n", c.max_abs()));
        }
        for (k, c) in r.mixed.iter().enumerate() {
            csv.push_str(&format!("{label},{k},mixed,{:?}\n", c.max_abs()));
        }
    }

    let mut out = Outcome::default();
    out.metric("lambda", mat.lambda);
    out.metric("sigma_h", *sigma_h);
    out.metric("london_residual", london_res.max());
    out.metric("london_action", london_action);
    out.metric("driven_residual", driven_res.max_mixed());
    out.metric("driven_finite_difference_mismatch", fd_mismatch);
    if *sigma_h == 1.0 {
        out.contracts.push(Contract::at_most("static London stack residual", london_res.max(), 1e-12));
    } else {
        out.contracts.push(Contract::at_least("static stack violation detected", london_res.max(), 1e-3));
    }
    out.contracts.push(Contract::at_least("driven stack violation detected", driven_res.max_mixed(), 1e-3));
    out.contracts.push(Contract::at_most("driven residual matches λ dj/dt", fd_mismatch, 1e-12));
    out.csv("residual.csv", csv);
    out.plot = Some(
        "set logscale y\nset xlabel 'slice'\nset ylabel 'max |residual|'\n\
         plot 'residual.csv' using 2:(strcol(1) eq 'driven' && strcol(3) eq 'mixed' ? $4 : 1/0) title 'driven, mixed' with points\n"
            .into(),
    );
    Ok(out)
}

fn run_regime_sweep(s: &Scenario) -> Result<Outcome, String> {
    let KindSpec::RegimeSweep { b, n, tau, sigma, axes, thresholds } = &s.spec else { unreachable!() };
    let spec = SweepSpec { b: *b, n: *n, tau: *tau, sigma: *sigma, axes: axes.clone(), thresholds: *thresholds };
    let diagram = sweep(&spec, &s.constants).map_err(err)?;
    let mut identity = 0.0f64;
    let mut bound = 0.0f64;
    let mut unit = 0.0f64;
    for p in &diagram.points {
        let again = hall_conductivity(p.sigma_0, p.omega_c_tau).map_err(err)?;
        identity = identity.max((again - p.sigma_h).abs());
        bound = bound.max((p.sigma_h - p.sigma_0 / 2.0).max(-p.sigma_h));
        unit = unit.max((p.sigma_h - 1.0).abs());
    }
    let mut out = Outcome::default();
    out.metric("points", diagram.points.len());
    out.metric("labels", diagram.summary_json()["labels"].clone());
    out.contracts.push(Contract::at_most("Drude recompute deviation", identity, 1e-12));
    out.contracts.push(Contract::at_most("sigma_H outside [0, sigma_0/2]", bound, 0.0));
    if *sigma == SigmaMode::UnitHall {
        out.contracts.push(Contract::at_most("unit Hall deviation", unit, 1e-12));
    }
    out.csv("diagram.csv", diagram.to_csv());
    out.json("summary.json", serde_json::to_string_pretty(&diagram.summary_json()).unwrap() + "\n");
    out.plot = Some(
        "set logscale xy\nset xlabel 'omega_c tau'\nplot 'diagram.csv' using 4:5 title 'sigma_0' with linespoints, \
         '' using 4:6 title 'sigma_H' with linespoints\n"
            .into(),
    );
    Ok(out)
}

fn run_squid(s: &Scenario) -> Result<Outcome, String> {
    let KindSpec::Squid { beta, phi_ext } = &s.spec else { unreachable!() };
    let curve = squid_staircase(phi_ext, *beta).map_err(err)?;
    let step = curve.phi_int.windows(2).map(|w| w[0] - w[1]).fold(0.0f64, f64::max);
    let plateaus: std::collections::BTreeSet<i64> = curve.plateau().into_iter().collect();
    let near_integer = curve
        .phi_ext
        .iter()
        .zip(&curve.phi_int)
        .filter(|(x, _)| (*x - x.round()).abs() <= 0.4)
        .map(|(x, p)| (p - x.round()).abs())
        .fold(0.0f64, f64::max);
    let mut out = Outcome::default();
    out.metric("beta", *beta);
    out.metric("points", curve.phi_ext.len());
    out.metric("plateaus", plateaus.into_iter().collect::<Vec<_>>());
    out.metric("max_offset_from_nearest_integer_within_0_4", near_integer);
    out.contracts.push(Contract::at_most("largest decrease of phi_int", step, 1e-12));
    out.csv("squid.csv", curve.to_csv());
    out.plot = Some(
        "set xlabel 'phi_ext / phi_0'\nset ylabel 'phi_int / phi_0'\nplot 'squid.csv' using 1:2 with lines, '' using 1:1 title 'identity' with lines dashtype 2\n"
            .into(),
    );
    Ok(out)
}

fn run_corbino(s: &Scenario) -> Result<Outcome, String> {
    let KindSpec::Corbino { r, l_b, b_squid, n_carriers } = &s.spec else { unreachable!() };
    let geometry = RingGeometry::new(*r, *l_b).map_err(err)?;
    let b = match b_squid {
        SquidField::Flux(b) => *b,
        SquidField::FluxQuanta(q) => q * s.constants.flux_quantum() / geometry.s(),
    };
    let report = corbino_bridge(&geometry, b, *n_carriers, &s.constants).map_err(err)?;
    let mut out = Outcome::default();
    out.metric("ratio", report.ratio);
    out.metric("b_qhe", report.b_qhe);
    out.metric("z", report.z);
    out.metric("nu", report.nu);
    out.metric("cross_check_residual", report.cross_check_residual);
    out.contracts.push(Contract::at_most("filling cross-check", report.cross_check_residual, 1e-10));
    out.contracts.push(Contract::at_most("flux conservation", report.flux_conservation_residual, 1e-10));
    out.json("corbino.json", serde_json::to_string_pretty(&report).unwrap() + "\n");
    Ok(out)
}

fn run_pure_gauge(s: &Scenario) -> Result<Outcome, String> {
    let KindSpec::PureGaugeDemo { grid, winding, amplitude } = &s.spec else { unreachable!() };
    let mesh = Mesh2D::from_grid(grid).map_err(err)?;
    let incr = winding_phase(&mesh, 0, *winding).map_err(err)?;
    let rho = Cochain::from_fn(&mesh, Degree::Zero, |_| *amplitude);
    let psi = wavefunction_from_phase(&mesh, &rho, &incr).map_err(err)?;
    let a = pure_gauge_potential(&mesh, &incr, &s.constants).map_err(err)?;
    let state = FieldState::from_wavefunction(&mesh, psi, a, 0.0, 1.0, &s.constants).map_err(err)?;
    let q = flux_quantize(&mesh, &state.a, &s.constants).map_err(err)?;
    let mut out = Outcome::default();
    out.metric("winding", *winding);
    out.metric("max_em_current", state.j_em.max_abs());
    out.metric("max_electric_current", state.j_e.max_abs());
    out.metric("flux", q.flux);
    out.metric("z", q.z);
    out.metric("deviation", q.deviation);
    out.contracts.push(Contract::at_most("max |J_em|", state.j_em.max_abs(), 1e-12));
    out.contracts.push(Contract::at_most("flux quantum deviation", q.deviation, 1e-12));
    out.contracts.push(Contract::at_most("|Z - winding|", (q.z - winding).abs() as f64, 0.0));
    out.csv("snapshot.csv", snapshot_csv(&mesh, &state).map_err(err)?);
    out.plot = Some(
        "set view map\nset xlabel 'x'\nset ylabel 'y'\nsplot 'snapshot.csv' using 3:4:(strcol(1) eq 'edge' ? $7 : 1/0) title 'A' with points palette pointtype 5\n"
            .into(),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario_str;

    fn run_text(text: &str) -> (RunReport, tempfile::TempDir) {
        let dir = tempfile::tempdir().unwrap();
        let s = parse_scenario_str(text, "t").unwrap();
        (run(&s, dir.path(), Format::Both).unwrap(), dir)
    }

    #[test]
    fn meissner_strip_report() {
        let (r, dir) = run_text(
            "kind = \"meissner\"\n[geometry]\nnx = 100\nny = 1\nlx = 10\nly = 0.1\n\
             [parameters]\nlambda = 1.0\nb_ext = 1.0\ndirichlet = [\"left\", \"right\"]\n",
        );
        assert!(r.passed, "{r:?}");
        assert!(r.metrics["residual_norm"].as_f64().unwrap() <= 1e-10);
        for f in &r.files {
            assert!(dir.path().join(f).exists(), "{f}");
        }
        assert!(r.files.contains(&"plot.gp".to_string()));
    }

    #[test]
    fn regime_sweep_unit_hall_column() {
        let (r, dir) = run_text(
            "kind = \"regime-sweep\"\n[parameters]\naxes = [{ param = \"omega_c_tau\", values = [0.01, 1, 100] }]\n",
        );
        assert!(r.passed);
        let csv = std::fs::read_to_string(dir.path().join("diagram.csv")).unwrap();
        let s0: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
        for (got, want) in s0.iter().zip([100.01, 2.0, 100.01]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn squid_without_screening_is_identity() {
        let (r, dir) = run_text("kind = \"squid\"\n[parameters]\nbeta = 0.0\nphi_ext_range = [-1, 1, 21]\n");
        assert!(r.passed);
        let csv = std::fs::read_to_string(dir.path().join("squid.csv")).unwrap();
        for l in csv.lines().skip(1) {
            let cols: Vec<&str> = l.split(',').collect();
            assert_eq!(cols[0], cols[1]);
        }
    }

    #[test]
    fn json_only_skips_tables_and_plot() {
        let dir = tempfile::tempdir().unwrap();
        let s = parse_scenario_str("kind = \"squid\"\n[parameters]\nbeta = 5.0\n", "t").unwrap();
        let r = run(&s, dir.path(), Format::Json).unwrap();
        assert_eq!(r.files, vec!["report.json".to_string()]);
    }

    #[test]
    fn module_failure_is_a_failed_report() {
        let (r, _dir) = run_text(
            "kind = \"corbino\"\n[geometry]\nr = 1.0\nl_b = 0.05\n[parameters]\nb_squid = 0.01\nn_carriers = 6\n",
        );
        assert!(!r.passed);
        assert!(r.error.as_deref().unwrap().contains("zero"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn out_dir_resolution_order() {
        let s = parse_scenario_str("kind = \"squid\"\nname = \"sq\"\n[parameters]\nbeta = 1.0\n", "t").unwrap();
        assert_eq!(resolve_out_dir(Some(Path::new("x")), &s, Some("env")), PathBuf::from("x"));
        assert_eq!(resolve_out_dir(None, &s, Some("env")), PathBuf::from("env/sq"));
        assert_eq!(resolve_out_dir(None, &s, None), PathBuf::from("gaugecond-out/sq"));
    }
}
