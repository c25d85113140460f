//! A pure-gauge potential around a hole: no current, whole flux quanta.

use gaugecond::dec::{CellRect, Cochain, Degree, GridSpec, Mesh2D};
use gaugecond::field::{
    electric_current, em_current, pure_gauge_potential, wavefunction_from_phase, winding_phase, Constants,
};
use gaugecond::ring::flux_quantize;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mesh = Mesh2D::from_grid(&GridSpec::new(20, 20, 1.0, 1.0).with_hole(CellRect::new(7, 7, 13, 13)))?;
    let constants = Constants::new(2.0, 1.0)?;
    let rho = Cochain::from_fn(&mesh, Degree::Zero, |v| 1.0 + 0.3 * (v as f64).sin());

    println!("winding  flux/phi0  Z  deviation  max|j_e|  max|J_em|");
    for winding in -3..=3 {
        let incr = winding_phase(&mesh, 0, winding)?;
        let psi = wavefunction_from_phase(&mesh, &rho, &incr)?;
        let a = pure_gauge_potential(&mesh, &incr, &constants)?;
        let q = flux_quantize(&mesh, &a, &constants)?;
        let j_e = electric_current(&mesh, &psi, &constants)?;
        let j_em = em_current(&mesh, &psi, &a, &constants)?;
        println!(
            "{winding:>7}  {:>9.6}  {:>2}  {:.1e}    {:.4}    {:.1e}",
            q.flux / constants.flux_quantum(),
            q.z,
            q.deviation,
            j_e.max_abs(),
            j_em.max_abs()
        );
    }
    Ok(())
}
