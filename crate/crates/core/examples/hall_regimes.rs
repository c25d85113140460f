//! Drude Hall conductivity and regime labels across omega_c tau.

use gaugecond::field::Constants;
use gaugecond::regime::{
    hall_conductivity, sigma0_for_unit_hall, sweep, Axis, SigmaMode, SweepParam, SweepSpec, Thresholds,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("omega_c tau   sigma_0 for sigma_H = 1   asymptote");
    for x in [0.01, 0.1, 1.0, 10.0, 100.0] {
        let u = sigma0_for_unit_hall(x)?;
        println!("{x:>11}   {:>22}   {:?}", u.sigma_0, u.asymptote);
    }
    println!("peak of sigma_0 = 4: sigma_H(1) = {}", hall_conductivity(4.0, 1.0)?);

    // nu = 2 pi n / B = 6 / B, and omega_c tau = 100 B is deep in the quantum regime.
    let n = 6.0 / (2.0 * std::f64::consts::PI);
    for sigma in [SigmaMode::Drude, SigmaMode::UnitHall] {
        let spec = SweepSpec {
            b: 1.0,
            n,
            tau: 100.0,
            sigma,
            axes: vec![Axis { param: SweepParam::B, values: vec![0.0005, 0.01, 1.0, 2.0, 3.0, 4.0, 6.0, 6.5, 9.0] }],
            thresholds: Thresholds::default(),
        };
        let diagram = sweep(&spec, &Constants::default())?;
        println!("\n{sigma:?}:");
        for p in &diagram.points {
            println!(
                "B = {:>6}  omega_c tau = {:>6}  nu = {:>9.4}  sigma_H = {:.4}  {}",
                p.b,
                p.omega_c_tau,
                p.nu,
                p.sigma_h,
                p.label.as_str()
            );
        }
    }
    Ok(())
}
