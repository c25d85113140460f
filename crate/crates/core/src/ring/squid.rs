//! Fluxoid-energy model of a ring with one weak link.
//!
//! In units of `φ₀`,
//!
//! ```text
//! E(Φ; Φ_ext) = (Φ − Φ_ext)² / 2 + β (1 − cos 2πΦ) / (2π)²
//! ```
//!
//! and the internal flux is the global minimizer over `Φ`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use super::RingError;

/// Samples per flux quantum in the bracketing scan.
const SCAN_DENSITY: f64 = 400.0;

pub fn squid_energy(phi: f64, phi_ext: f64, beta: f64) -> f64 {
    let d = phi - phi_ext;
    0.5 * d * d + beta * (1.0 - (2.0 * PI * phi).cos()) / (4.0 * PI * PI)
}

fn slope(phi: f64, phi_ext: f64, beta: f64) -> f64 {
    (phi - phi_ext) + beta * (2.0 * PI * phi).sin() / (2.0 * PI)
}

fn bisect(mut lo: f64, mut hi: f64, phi_ext: f64, beta: f64) -> f64 {
    // slope(lo) < 0 <= slope(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid, phi_ext, beta) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Global minimizer of the fluxoid energy; ties go to the smaller `Φ`.
///
/// Stationary points satisfy `|Φ − Φ_ext| ≤ β/2π`, so a scan over that
/// window (plus a margin) brackets every local minimum.
pub fn squid_minimize(phi_ext: f64, beta: f64) -> f64 {
    if beta == 0.0 {
        return phi_ext;
    }
    let half = beta / (2.0 * PI) + 1.0;
    let n = ((2.0 * half * SCAN_DENSITY).ceil() as usize).max(2);
    let h = 2.0 * half / n as f64;
    let mut best: Option<(f64, f64)> = None;
    let mut prev_x = phi_ext - half;
    let mut prev_s = slope(prev_x, phi_ext, beta);
    for i in 1..=n {
        let x = phi_ext - half + i as f64 * h;
        let s = slope(x, phi_ext, beta);
        if prev_s < 0.0 && s >= 0.0 {
            let root = bisect(prev_x, x, phi_ext, beta);
            let e = squid_energy(root, phi_ext, beta);
            let tol = 1e-13 * (1.0 + e.abs());
            match best {
                Some((_, be)) if e >= be - tol => {}
                _ => best = Some((root, e)),
            }
        }
        prev_x = x;
        prev_s = s;
    }
    best.expect("energy is coercive, a minimum is always bracketed").0
}

#[derive(Debug, Clone, PartialEq)]
pub struct SquidCurve {
    pub phi_ext: Vec<f64>,
    pub phi_int: Vec<f64>,
    pub beta: f64,
}

impl SquidCurve {
    /// Nearest integer flux for each point.
    pub fn plateau(&self) -> Vec<i64> {
        self.phi_int.iter().map(|p| p.round() as i64).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("phi_ext,phi_int,plateau\n");
        for ((x, p), n) in self.phi_ext.iter().zip(&self.phi_int).zip(self.plateau()) {
            writeln!(out, "{x:?},{p:?},{n}").unwrap();
        }
        out
    }
}

pub fn squid_staircase(phi_ext: &[f64], beta: f64) -> Result<SquidCurve, RingError> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(RingError::InvalidInput(format!("beta must be non-negative, got {beta}")));
    }
    if phi_ext.is_empty() {
        return Err(RingError::InvalidInput("external flux grid is empty".into()));
    }
    if phi_ext.iter().any(|x| !x.is_finite()) {
        return Err(RingError::InvalidInput("external flux grid has non-finite values".into()));
    }
    if let Some(i) = phi_ext.windows(2).position(|w| w[1] < w[0]) {
        return Err(RingError::InvalidInput(format!("external flux grid is not ascending at index {}", i + 1)));
    }
    Ok(SquidCurve {
        phi_ext: phi_ext.to_vec(),
        phi_int: phi_ext.iter().map(|&x| squid_minimize(x, beta)).collect(),
        beta,
    })
}
