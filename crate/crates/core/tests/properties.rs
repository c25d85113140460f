use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use gaugecond::dec::{exterior_derivative, loop_sum, CellRect, Cochain, Degree, GridSpec, Mesh2D};
use gaugecond::field::{
    electric_current, em_current, ohm_relation, pure_gauge_potential, wavefunction_from_phase, winding_phase, Constants,
};
use gaugecond::london::{london_state, solve_meissner_with, Material, MeissnerSetup};
use gaugecond::regime::{hall_conductivity, regime_point, PointInputs, Thresholds};
use gaugecond::ring::{corbino_bridge, flux_quantize, RingGeometry};

fn annulus(nx: usize, ny: usize) -> Mesh2D {
    let spec = GridSpec::new(nx, ny, 1.0, 0.8).with_hole(CellRect::new(2, 2, nx - 2, ny - 2));
    Mesh2D::from_grid(&spec).unwrap()
}

fn values(seed: u64, n: usize, scale: f64) -> Vec<f64> {
    // Small deterministic generator so cochain sizes can follow the mesh.
    let mut s = seed | 1;
    (0..n)
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            scale * ((s >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn em_current_is_gauge_covariant(
        nx in 3usize..12, ny in 3usize..12, seed in any::<u64>(), charge in 0.2f64..3.0, mass in 0.2f64..3.0,
    ) {
        let m = Mesh2D::grid(nx, ny, 1.0, 1.0).unwrap();
        let c = Constants::new(charge, mass).unwrap();
        let n = m.num_vertices();
        let rho = values(seed, n, 1.0);
        let phase = values(seed.wrapping_add(1), n, PI);
        let psi = Cochain::from_fn(&m, Degree::Zero, |v| Complex64::from_polar(1.5 + rho[v], phase[v]));
        let a = Cochain::from_values(&m, Degree::One, values(seed.wrapping_add(2), m.num_edges(), 0.3)).unwrap();
        let chi = Cochain::from_values(&m, Degree::Zero, values(seed.wrapping_add(3), n, 0.4)).unwrap();

        let psi2 = Cochain::from_fn(&m, Degree::Zero, |v| {
            psi.values()[v] * Complex64::from_polar(1.0, charge * chi.values()[v])
        });
        let a2 = a.add(&exterior_derivative(&m, &chi).unwrap()).unwrap();
        let before = em_current(&m, &psi, &a, &c).unwrap();
        let after = em_current(&m, &psi2, &a2, &c).unwrap();
        prop_assert!(before.sub(&after).unwrap().max_abs() <= 1e-10);
    }

    #[test]
    fn electric_current_ignores_global_phase(seed in any::<u64>(), theta in -PI..PI) {
        let m = Mesh2D::grid(6, 5, 1.0, 1.0).unwrap();
        let c = Constants::default();
        let phase = values(seed, m.num_vertices(), 1.0);
        let psi = Cochain::from_fn(&m, Degree::Zero, |v| Complex64::from_polar(1.0, phase[v]));
        let rotated = psi.map(|z| z * Complex64::from_polar(1.0, theta));
        let d = electric_current(&m, &psi, &c).unwrap().sub(&electric_current(&m, &rotated, &c).unwrap()).unwrap();
        prop_assert!(d.max_abs() <= 1e-12);
    }

    #[test]
    fn pure_gauge_with_perturbation_keeps_the_integer(
        nx in 6usize..14, ny in 6usize..14, winding in -6i64..=6, offset in -0.24f64..0.24, charge in 0.3f64..2.5,
    ) {
        let m = annulus(nx, ny);
        let c = Constants::new(charge, 1.0).unwrap();
        let incr = winding_phase(&m, 0, winding).unwrap();
        let rho = Cochain::from_fn(&m, Degree::Zero, |_| 1.0);
        let psi = wavefunction_from_phase(&m, &rho, &incr).unwrap();
        let a = pure_gauge_potential(&m, &incr, &c).unwrap();
        prop_assert!(em_current(&m, &psi, &a, &c).unwrap().max_abs() <= 1e-12);

        let step = m.hole_loops()[0].steps[0];
        let mut bump = Cochain::zeros(&m, Degree::One);
        bump.values_mut()[step.edge] = step.sign as f64 * offset * c.flux_quantum();
        let around = loop_sum(&m, &bump, &m.hole_loops()[0]).unwrap();
        prop_assert!((around - offset * c.flux_quantum()).abs() <= 1e-15);
        let q = flux_quantize(&m, &a.add(&bump).unwrap(), &c).unwrap();
        prop_assert_eq!(q.z, winding);
        prop_assert!((q.deviation - offset.abs()).abs() <= 1e-10);
        prop_assert!(!q.ambiguous);
    }

    #[test]
    fn london_response_is_linear_and_balanced(lambda in 0.08f64..1.0, b_ext in -3.0f64..3.0) {
        let m = Mesh2D::grid(12, 10, 1.2, 1.0).unwrap();
        let c = Constants::default();
        let mat = Material::uniform(&m, lambda, &c).unwrap();
        let tight = |b: f64| MeissnerSetup { tolerance: 1e-12, ..MeissnerSetup::new(b) };
        let one = solve_meissner_with(&m, &mat, &tight(1.0)).unwrap();
        let sol = solve_meissner_with(&m, &mat, &tight(b_ext)).unwrap();
        let scaled = one.b.scale(b_ext);
        prop_assert!(sol.b.sub(&scaled).unwrap().max_abs() <= 1e-8 * (1.0 + b_ext.abs()));
        let state = london_state(&m, &sol, &mat, 1.0, &c).unwrap();
        prop_assert!(ohm_relation(&m, &state, &sol.b).unwrap().max_discrepancy() <= 1e-8);
        prop_assert!(sol.field(&m).iter().all(|b| b.abs() <= b_ext.abs() * (1.0 + 1e-9)));
    }

    #[test]
    fn regime_points_respect_the_drude_bound(b in 1e-3f64..1e3, n in 1e-3f64..1e3, tau in 1e-2f64..1e2, s0 in 0.0f64..10.0) {
        let c = Constants::default();
        let p = regime_point(&PointInputs { b, n, tau, sigma_0: s0 }, &c, &Thresholds::default()).unwrap();
        prop_assert!(p.sigma_h >= 0.0 && p.sigma_h <= s0 / 2.0 + 1e-15);
        prop_assert!((p.sigma_h - hall_conductivity(s0, p.omega_c_tau).unwrap()).abs() <= 1e-15);
        prop_assert!((p.nu - n * 2.0 * PI / b).abs() <= 1e-12 * p.nu);
    }

    #[test]
    fn corbino_fillings_agree(r in 0.5f64..5.0, frac in 0.01f64..0.45, z in 1i64..20, carriers in 1u64..200) {
        let c = Constants::default();
        let g = RingGeometry::new(r, frac * r).unwrap();
        let b = z as f64 * c.flux_quantum() / g.s();
        let rep = corbino_bridge(&g, b, carriers, &c).unwrap();
        prop_assert_eq!(rep.z, z);
        prop_assert!(rep.cross_check_residual <= 1e-10 * rep.nu.max(1.0));
        prop_assert!(rep.flux_conservation_residual <= 4.0 * f64::EPSILON);
        prop_assert!((rep.ratio - 1.0 / (2.0 * frac)).abs() <= 1e-12 * rep.ratio);
    }
}
