//! Grid sweeps over the regime map.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{assemble, sigma0_for_unit_hall, RegimeError, RegimeLabel, RegimePoint, Thresholds};
use crate::field::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    B,
    N,
    Tau,
    /// Sets `τ = x M_e / (e B)` at each point.
    OmegaCTau,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::B => "b",
            SweepParam::N => "n",
            SweepParam::Tau => "tau",
            SweepParam::OmegaCTau => "omega_c_tau",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// How `σ₀` is chosen at each point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaMode {
    Fixed(f64),
    /// `σ₀ = (1 + x²)/x`, so that `σ_H = 1`.
    UnitHall,
    /// `σ₀ = n e² τ / M_e`.
    Drude,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub b: f64,
    pub n: f64,
    pub tau: f64,
    pub sigma: SigmaMode,
    /// First axis varies slowest.
    pub axes: Vec<Axis>,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    pub axes: Vec<Axis>,
    /// Row-major over `axes`.
    pub points: Vec<RegimePoint>,
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
    }
}

/// `count` points from `10^start` to `10^stop`.
pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    linspace(start, stop, count).into_iter().map(|e| 10f64.powf(e)).collect()
}

fn validate(spec: &SweepSpec) -> Result<(), RegimeError> {
    let cfg = |m: String| Err(RegimeError::Config(m));
    spec.thresholds.validate()?;
    if spec.axes.is_empty() {
        return cfg("sweep needs at least one axis".into());
    }
    for (i, a) in spec.axes.iter().enumerate() {
        if a.values.is_empty() {
            return cfg(format!("axis {} ({}) is empty", i, a.param.name()));
        }
        if a.values.iter().any(|v| !v.is_finite()) {
            return cfg(format!("axis {} ({}) has non-finite values", i, a.param.name()));
        }
        if spec.axes[..i].iter().any(|b| b.param == a.param) {
            return cfg(format!("axis {} repeats {}", i, a.param.name()));
        }
    }
    let has = |p| spec.axes.iter().any(|a| a.param == p);
    if has(SweepParam::Tau) && has(SweepParam::OmegaCTau) {
        return cfg("tau and omega_c_tau cannot both be swept".into());
    }
    Ok(())
}

pub fn sweep(spec: &SweepSpec, constants: &Constants) -> Result<PhaseDiagram, RegimeError> {
    validate(spec)?;
    let shape: Vec<usize> = spec.axes.iter().map(|a| a.values.len()).collect();
    let total: usize = shape.iter().product();
    let mut points = Vec::with_capacity(total);
    let mut index = vec![0usize; shape.len()];
    for _ in 0..total {
        let (mut b, mut n, mut tau, mut x) = (spec.b, spec.n, spec.tau, None);
        for (axis, &i) in spec.axes.iter().zip(&index) {
            let v = axis.values[i];
            match axis.param {
                SweepParam::B => b = v,
                SweepParam::N => n = v,
                SweepParam::Tau => tau = v,
                SweepParam::OmegaCTau => x = Some(v),
            }
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(RegimeError::Domain(format!("B must be positive, got {b}")));
        }
        let omega_c = constants.cyclotron_frequency(b);
        let x = match x {
            Some(x) => {
                tau = x / omega_c;
                x
            }
            None => omega_c * tau,
        };
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(RegimeError::Domain(format!("tau must be positive, got {tau}")));
        }
        let sigma_0 = match spec.sigma {
            SigmaMode::Fixed(s) => s,
            SigmaMode::UnitHall => sigma0_for_unit_hall(x)?.sigma_0,
            SigmaMode::Drude => n * constants.charge * constants.charge * tau / constants.mass,
        };
        points.push(assemble(b, n, tau, x, sigma_0, constants, &spec.thresholds)?);
        for d in (0..index.len()).rev() {
            index[d] += 1;
            if index[d] < shape[d] {
                break;
            }
            index[d] = 0;
        }
    }
    Ok(PhaseDiagram { axes: spec.axes.clone(), points })
}

pub const DIAGRAM_HEADER: &str = "b,n,tau,omega_c_tau,sigma_0,sigma_h,nu,label,above_critical";

impl PhaseDiagram {
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.values.len()).collect()
    }

    /// Count per label, every label present.
    pub fn histogram(&self) -> BTreeMap<RegimeLabel, usize> {
        let mut h: BTreeMap<RegimeLabel, usize> = RegimeLabel::ALL.iter().map(|&l| (l, 0)).collect();
        for p in &self.points {
            *h.get_mut(&p.label).unwrap() += 1;
        }
        h
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(DIAGRAM_HEADER);
        out.push('\n');
        for p in &self.points {
            let crit = p.above_critical.map_or(String::new(), |c| c.to_string());
            writeln!(
                out,
                "{:?},{:?},{:?},{:?},{:?},{:?},{:?},{},{}",
                p.b, p.n, p.tau, p.omega_c_tau, p.sigma_0, p.sigma_h, p.nu, p.label, crit
            )
            .unwrap();
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let hist: serde_json::Map<String, serde_json::Value> =
            self.histogram().into_iter().map(|(l, c)| (l.as_str().to_string(), c.into())).collect();
        serde_json::json!({
            "axes": self.axes.iter().map(|a| serde_json::json!({ "param": a.param.name(), "values": a.values })).collect::<Vec<_>>(),
            "shape": self.shape(),
            "points": self.points.len(),
            "labels": hist,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regime::{regime_point, PointInputs};

    fn spec(axes: Vec<Axis>, sigma: SigmaMode) -> SweepSpec {
        SweepSpec { b: 1.0, n: 1.0, tau: 1.0, sigma, axes, thresholds: Thresholds::default() }
    }

    #[test]
    fn single_point_matches_direct_evaluation() {
        let c = Constants::default();
        let d =
            sweep(&spec(vec![Axis { param: SweepParam::B, values: vec![2.5] }], SigmaMode::Fixed(3.0)), &c).unwrap();
        let direct =
            regime_point(&PointInputs { b: 2.5, n: 1.0, tau: 1.0, sigma_0: 3.0 }, &c, &Thresholds::default()).unwrap();
        assert_eq!(d.points, vec![direct]);
    }

    #[test]
    fn unit_hall_sweep_over_omega_c_tau() {
        let d = sweep(
            &spec(vec![Axis { param: SweepParam::OmegaCTau, values: vec![0.01, 1.0, 100.0] }], SigmaMode::UnitHall),
            &Constants::default(),
        )
        .unwrap();
        let s0: Vec<f64> = d.points.iter().map(|p| p.sigma_0).collect();
        for (got, want) in s0.iter().zip([100.01, 2.0, 100.01]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(d.points.iter().all(|p| (p.sigma_h - 1.0).abs() < 1e-12));
    }

    #[test]
    fn row_major_order_and_histogram() {
        let d = sweep(
            &spec(
                vec![
                    Axis { param: SweepParam::B, values: vec![1.0, 2.0] },
                    Axis { param: SweepParam::Tau, values: vec![0.01, 1.0, 100.0] },
                ],
                SigmaMode::Drude,
            ),
            &Constants::default(),
        )
        .unwrap();
        assert_eq!(d.shape(), vec![2, 3]);
        assert_eq!(d.points[1].b, 1.0);
        assert_eq!(d.points[1].tau, 1.0);
        assert_eq!(d.points[3].b, 2.0);
        assert_eq!(d.histogram().values().sum::<usize>(), 6);
        assert_eq!(d.to_csv().lines().count(), 7);
        assert_eq!(d.summary_json()["labels"]["classical-Hall"], 2);
    }

    #[test]
    fn labels_move_monotonically_toward_the_quantum_side() {
        let c = Constants::default();
        let d = sweep(
            &spec(vec![Axis { param: SweepParam::B, values: logspace(-3.0, 3.0, 61) }], SigmaMode::Fixed(2.0)),
            &c,
        )
        .unwrap();
        let side = |l: RegimeLabel, x: f64| match l {
            RegimeLabel::ClassicalHall => 0,
            _ if x <= 10.0 => 1,
            _ => 2,
        };
        let sides: Vec<i32> = d.points.iter().map(|p| side(p.label, p.omega_c_tau)).collect();
        assert!(sides.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!((sides[0], *sides.last().unwrap()), (0, 2));
    }

    #[test]
    fn rejects_bad_axes() {
        let c = Constants::default();
        assert!(matches!(sweep(&spec(vec![], SigmaMode::UnitHall), &c), Err(RegimeError::Config(_))));
        let empty = vec![Axis { param: SweepParam::B, values: vec![] }];
        assert!(matches!(sweep(&spec(empty, SigmaMode::UnitHall), &c), Err(RegimeError::Config(_))));
        let both = vec![
            Axis { param: SweepParam::Tau, values: vec![1.0] },
            Axis { param: SweepParam::OmegaCTau, values: vec![1.0] },
        ];
        assert!(sweep(&spec(both, SigmaMode::UnitHall), &c).is_err());
    }

    #[test]
    fn spacing_helpers() {
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        let l = logspace(-3.0, 3.0, 61);
        assert_eq!(l.len(), 61);
        assert!((l[0] - 1e-3).abs() < 1e-18 && (l[30] - 1.0).abs() < 1e-15);
    }
}
