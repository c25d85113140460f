//! London screening of a field applied to both ends of a strip.

use gaugecond::dec::Mesh2D;
use gaugecond::field::Constants;
use gaugecond::london::{solve_meissner_with, DirichletSides, Material, MeissnerSetup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (l, lambda, n) = (10.0, 1.0, 200);
    let mesh = Mesh2D::grid(n, 1, l, l / n as f64)?;
    let material = Material::uniform(&mesh, lambda, &Constants::default())?;
    let setup = MeissnerSetup::new(1.0).with_sides(DirichletSides::strip_x());
    let sol = solve_meissner_with(&mesh, &material, &setup)?;
    println!("CG: {} iterations, relative residual {:.2e}", sol.iterations, sol.residual_norm);

    let b = sol.field(&mesh);
    println!("       x        B   cosh profile");
    for f in (0..n).step_by(20).chain([n / 2]) {
        let x = mesh.face_center(f)[0];
        let exact = ((x - l / 2.0) / lambda).cosh() / (l / (2.0 * lambda)).cosh();
        println!("{x:8.3} {:8.5} {exact:8.5}", b[f]);
    }
    let all: Vec<usize> = (0..mesh.num_faces()).collect();
    println!("flux admitted: {:.3} of the applied flux", sol.flux_ratio(&mesh, &all));
    Ok(())
}
