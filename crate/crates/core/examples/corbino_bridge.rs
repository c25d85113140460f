//! Ring flux quanta and edge-strip filling in a Corbino geometry.

use std::f64::consts::PI;

use gaugecond::field::Constants;
use gaugecond::ring::{corbino_bridge, magnetic_length, RingGeometry};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Constants::default();
    let geometry = RingGeometry::new(1.0, 0.05)?;
    for (z, n) in [(1, 1), (2, 6), (3, 2), (5, 15)] {
        let b = z as f64 * c.flux_quantum() / (PI * geometry.r * geometry.r);
        let r = corbino_bridge(&geometry, b, n, &c)?;
        println!(
            "Z = {}  N = {n:>2}  nu = {:.4}  B_qhe/B_sc = {}  cross-check {:.1e}  passed {}",
            r.z,
            r.nu,
            r.b_qhe / r.b_squid,
            r.cross_check_residual,
            r.passed
        );
    }
    println!("l_B at B = 400: {}", magnetic_length(400.0, &c)?);
    Ok(())
}
