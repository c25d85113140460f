//! d∘d = 0 and Stokes on a grid with a hole.

use gaugecond::dec::{
    codifferential, exterior_derivative, inner_product, loop_sum, stokes_check, CellRect, Cochain, Degree, GridSpec,
    Mesh2D,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GridSpec::new(16, 12, 2.0, 1.5).with_hole(CellRect::new(5, 4, 10, 8));
    let mesh = Mesh2D::from_grid(&spec)?;
    println!(
        "mesh: {} vertices, {} edges, {} faces, {} hole",
        mesh.num_vertices(),
        mesh.num_edges(),
        mesh.num_faces(),
        mesh.hole_loops().len()
    );

    let f = Cochain::from_fn(&mesh, Degree::Zero, |v| {
        let [x, y] = mesh.vertices()[v];
        (3.0 * x).sin() * y.cosh()
    });
    let df = exterior_derivative(&mesh, &f)?;
    let ddf = exterior_derivative(&mesh, &df)?;
    println!("max |d d f|               = {:e}", ddf.max_abs());
    println!("loop sum of df around hole = {:e}", loop_sum(&mesh, &df, &mesh.hole_loops()[0])?);

    let a = Cochain::from_fn(&mesh, Degree::One, |e| {
        let [x, y] = mesh.edge_midpoint(e);
        (x * y).sin() * mesh.edge_length(e)
    });
    let region: Vec<usize> =
        (0..spec.nx * 3).filter_map(|c| mesh.grid_info()?.face_at(c % spec.nx, c / spec.nx)).collect();
    let (boundary, interior) = stokes_check(&mesh, &a, &region)?;
    println!("Stokes on {} faces: boundary {boundary:.15} vs interior {interior:.15}", region.len());

    // <d f, a> = <f, δ a>
    let lhs = inner_product(&mesh, &df, &a)?;
    let rhs = inner_product(&mesh, &f, &codifferential(&mesh, &a)?)?;
    println!("adjointness: <df, a> = {lhs:.12}, <f, δa> = {rhs:.12}");
    Ok(())
}
