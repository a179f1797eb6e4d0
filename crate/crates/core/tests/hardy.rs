use std::f64::consts::{PI, TAU};

use bivek::calculus::poisson_extend;
use bivek::hardy::{self, StolzPath, TrigPoly};
use bivek::random::spiral_probes;
use bivek::{BiPoly, Bicomplex, ClosureFn};
use proptest::prelude::*;

mod common;

#[test]
fn boundary_value_reconstructs_holomorphic_function() {
    let mut rng = bivek::random::case_rng(5, 0);
    let f = bivek::random::holomorphic(&mut rng, 3, 1.0);
    let trace = hardy::boundary_fourier(&f, 3, &hardy::radii_schedule(10)).unwrap();
    for z in spiral_probes(12, 0.8) {
        let v = poisson_extend(&trace, z.norm(), z.arg()).unwrap();
        assert!((v - f.evaluate(z)).norm() < 1e-6);
    }
}

#[test]
fn stolz_limits_do_not_depend_on_aperture() {
    let f = BiPoly::monomial(2, 1, Bicomplex::new(1.0, 0.5, -0.5, 0.25)).add(&BiPoly::hat_zbar());
    let theta0 = 1.1;
    let a = hardy::stolz_probe(&f, &StolzPath::geometric(theta0, PI / 6.0, 0.5, 14)).unwrap();
    let b = hardy::stolz_probe(&f, &StolzPath::geometric(theta0, PI / 3.0, 0.5, 14)).unwrap();
    let exact = f.evaluate(num_complex::Complex64::from_polar(1.0, theta0));
    assert!((a.limit - b.limit).norm() < 1e-8);
    assert!((a.limit - exact).norm() < 1e-8);
}

#[test]
fn pole_pairings_converge_for_all_low_degree_tests() {
    let f = ClosureFn::pow_one_minus_z(2.0);
    // extrapolation error grows like k³(1 − r)³, so go out to 1 − 2⁻¹²
    let radii = hardy::radii_schedule(12);
    for k in 1..=8 {
        // Σ (n+1) zⁿ paired with cos kθ gives π(k+1)
        let v = hardy::dist_pair(&f, &TrigPoly::cos_k(k), &radii).unwrap();
        assert!((v.limit - Bicomplex::real(PI * (k + 1) as f64)).norm() < 1e-6, "k={k}: {}", v.limit);
    }
}

#[test]
fn boundary_gap_slope_for_z() {
    let radii = hardy::radii_schedule(12);
    for p in [0.5, 1.0, 2.0] {
        for &r in &radii {
            let g = hardy::boundary_gap(&BiPoly::z_embed(), p, r, 256).unwrap();
            assert!((g - TAU * (1.0 - r).powf(p)).abs() <= 1e-12 * (1.0 + g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn component_sandwich(f in common::bipoly(3, 6), r in 0.05f64..0.99, p in 0.25f64..4.0) {
        let (ip, im, isum, inorm) = hardy::component_integrals(&f, r, p, 256);
        let c = 2f64.powf(p / 2.0);
        prop_assert!(ip.max(im) <= c * inorm * (1.0 + 1e-12) + 1e-300);
        prop_assert!(inorm <= isum / c * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn circle_integral_matches_exact_monomial(k in 0usize..6, p in 0.5f64..3.0, r in 0.1f64..0.99) {
        let f = BiPoly::monomial(k, 0, Bicomplex::ONE);
        let v = hardy::circle_lp(&f, r, p, 256).unwrap();
        prop_assert!((v - TAU * r.powf(k as f64 * p)).abs() <= 1e-12);
    }
}
