//! Chern-Simons residuals of a static London state and of a driven one.

use gaugecond::dec::{CellRect, GridSpec, Mesh2D};
use gaugecond::field::{cs_action, cs_residual, ohm_relation, Constants, FieldState, SpacetimeStack};
use gaugecond::london::{london_state, solve_meissner, Material};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Constants::default();
    let mesh = Mesh2D::from_grid(&GridSpec::new(24, 18, 2.0, 1.5).with_hole(CellRect::new(9, 6, 15, 12)))?;
    let material = Material::uniform(&mesh, 0.2, &c)?;
    let sol = solve_meissner(&mesh, &material, 1.0)?;

    for sigma_h in [1.0, 0.5] {
        let state = london_state(&mesh, &sol, &material, sigma_h, &c)?;
        let stack = SpacetimeStack::new(vec![state.clone(); 3], 0.1)?;
        let r = cs_residual(&mesh, &stack)?;
        let ohm = ohm_relation(&mesh, &state, &sol.b)?;
        println!(
            "sigma_H = {sigma_h}: residual {:.2e}, action {:.2e}, Hall-Ohm mismatch {:.2e}",
            r.max(),
            cs_action(&mesh, &stack)?,
            ohm.max_discrepancy()
        );
    }

    let base = london_state(&mesh, &sol, &material, 1.0, &c)?;
    let dt = 0.1;
    let slices = (0..4)
        .map(|k| {
            let j = base.j_e.scale(1.0 + 0.2 * k as f64 * dt);
            FieldState::from_currents(&mesh, base.a.clone(), j, material.n, 1.0, material.lambda, &c)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let r = cs_residual(&mesh, &SpacetimeStack::new(slices, dt)?)?;
    println!("ramped current: spatial {:.2e}, mixed {:.2e}", r.max_spatial(), r.max_mixed());
    Ok(())
}
