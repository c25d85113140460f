//! Internal flux of a ring with a weak link for a few screening strengths.

use gaugecond::regime::linspace;
use gaugecond::ring::squid_staircase;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = linspace(-1.5, 2.5, 17);
    let curves = [0.0, 5.0, 50.0].map(|beta| squid_staircase(&grid, beta));
    println!("phi_ext   beta=0   beta=5   beta=50");
    for (i, x) in grid.iter().enumerate() {
        print!("{x:7.2}");
        for c in &curves {
            print!(" {:8.4}", c.as_ref().map_err(|e| e.to_string())?.phi_int[i]);
        }
        println!();
    }
    Ok(())
}
