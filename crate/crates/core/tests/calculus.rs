use bivek::calculus::{
    self, fd_apply, poisson_extend, BoundaryTrace, EvalMode, FdStencil, QuadratureGrid, TbMode, Wirtinger,
};
use bivek::{BiPoly, Bicomplex, CPoly, Error};
use num_complex::Complex64;
use proptest::prelude::*;

mod common;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn one() -> Complex64 {
    c(1.0, 0.0)
}

#[test]
fn frozen_transform_values() {
    let z0 = c(0.3, -0.4);
    let grid = QuadratureGrid::default();
    let cases = [
        (CPoly::constant(one()), z0.conj()),
        (CPoly::monomial(1, 0, one()), c(z0.norm_sqr() - 1.0, 0.0)),
        (CPoly::monomial(0, 1, one()), z0.conj() * z0.conj() / 2.0),
        (CPoly::monomial(2, 0, one()), z0 * z0 * z0.conj() - z0),
    ];
    for (g, expect) in cases {
        let closed = calculus::t_complex(&g, z0, EvalMode::ClosedForm).unwrap();
        let quad = calculus::t_complex(&g, z0, EvalMode::Quadrature(grid)).unwrap();
        assert!((closed - expect).norm() < 1e-14, "{g:?}");
        assert!((quad - expect).norm() < 1e-9, "{g:?}: {quad} vs {expect}");
    }
    let ts = calculus::t_star_quadrature(|_| one(), z0, &grid).unwrap();
    assert!((ts - z0).norm() < 1e-9);
}

#[test]
fn adaptive_quadrature_converges() {
    let z0 = c(-0.6, 0.5);
    let start = QuadratureGrid::new(16, 32).unwrap();
    let v = calculus::t_complex_adaptive(|z: Complex64| z * z.conj(), z0, start, 1e-10, 6).unwrap();
    let exact = calculus::t_complex_poly(&CPoly::monomial(1, 1, one())).eval(z0);
    assert!((v - exact).norm() < 1e-9);
    let err = calculus::t_complex_adaptive(|z: Complex64| z, z0, start, 0.0, 1);
    assert!(matches!(err, Err(Error::QuadratureDivergence { .. })));
}

#[test]
fn transform_of_one_is_hat_zbar() {
    let t = calculus::t_bicomplex_poly(&BiPoly::constant(Bicomplex::ONE), TbMode::ComponentMatched);
    assert_eq!(t, BiPoly::hat_zbar());
}

#[test]
fn literal_kernel_breaks_right_inverse_on_zbar() {
    let f = BiPoly::zbar_embed();
    let g = calculus::dbar(&calculus::t_bicomplex_poly(&f, TbMode::Literal));
    // the minus component picks up an extra z
    let z = c(0.2, 0.5);
    assert!((g.minus.eval(z) - (z.conj() + z)).norm() < 1e-15);
    assert!(g.max_coeff_diff(&f) > 0.5);
    let g = calculus::dbar(&calculus::t_bicomplex_poly(&BiPoly::constant(Bicomplex::J), TbMode::Literal));
    assert_eq!(g, BiPoly::constant(Bicomplex::J));
}

#[test]
fn bicomplex_quadrature_matches_closed_form() {
    let f = BiPoly::monomial(2, 1, Bicomplex::new(1.0, -0.5, 0.25, 2.0)).add(&BiPoly::hat_z());
    let grid = QuadratureGrid::default();
    for z0 in [c(0.1, 0.2), c(-0.85, 0.1), c(0.0, -0.7)] {
        for tb in [TbMode::ComponentMatched, TbMode::Literal] {
            let a = calculus::t_bicomplex(&f, z0, EvalMode::ClosedForm, tb).unwrap();
            let b = calculus::t_bicomplex_quadrature(&f, z0, &grid, tb).unwrap();
            assert!((a - b).norm() < 1e-8, "{z0} {tb:?}");
        }
    }
    assert!(calculus::t_bicomplex(&f, c(1.0, 0.0), EvalMode::ClosedForm, TbMode::ComponentMatched).is_err());
}

#[test]
fn stencil_leaving_disk_is_rejected() {
    let f = BiPoly::z_embed();
    let err = fd_apply(&f, Wirtinger::Dbar, c(0.9995, 0.0), FdStencil::default());
    assert!(matches!(err, Err(Error::StencilOutOfDomain(_))));
    assert!(FdStencil::new(5, 1e-3).is_err());
    let v = calculus::fd_apply_auto(&f, Wirtinger::D, c(0.9995, 0.0), FdStencil::default()).unwrap();
    assert!((v - calculus::d(&f).evaluate(c(0.9995, 0.0))).norm() < 1e-8);
    assert!((v - Bicomplex::P_MINUS).norm() < 1e-8);
}

#[test]
fn poisson_kernel_properties() {
    assert!((calculus::poisson_kernel(0.0, 1.3) - 1.0).abs() < 1e-15);
    let trace = BoundaryTrace::Fourier(vec![(0, Bicomplex::J), (2, Bicomplex::ONE)]);
    let v = poisson_extend(&trace, 0.5, 0.3).unwrap();
    let expect = Bicomplex::J + Bicomplex::from_complex(Complex64::from_polar(0.25, 0.6));
    assert!((v - expect).norm() < 1e-15);
    assert!(poisson_extend(&trace, 1.0, 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn right_inverse(f in common::bipoly(8, 10)) {
        let g = calculus::dbar(&calculus::t_bicomplex_poly(&f, TbMode::ComponentMatched));
        prop_assert!(g.max_coeff_diff(&f) <= 1e-12);
    }

    #[test]
    fn mixed_partials_commute(f in common::bipoly(6, 10)) {
        let a = calculus::d(&calculus::dbar(&f));
        let b = calculus::dbar(&calculus::d(&f));
        prop_assert!(a.max_coeff_diff(&b) <= 1e-12);
    }

    #[test]
    fn finite_differences_match_exact(f in common::bipoly(4, 6), z in common::disk_point(0.9)) {
        let s = FdStencil::default();
        let exact = calculus::dbar(&f).evaluate(z);
        let fd = fd_apply(&f, Wirtinger::Dbar, z, s).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-8);
        let exact = calculus::d(&f).evaluate(z);
        let fd = fd_apply(&f, Wirtinger::D, z, s).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-8);
    }

    #[test]
    fn poisson_reproduces_holomorphic(h in common::holomorphic(10), z in common::disk_point(0.95)) {
        let trace = BoundaryTrace::sample(&h, 1024);
        let v = poisson_extend(&trace, z.norm(), z.arg()).unwrap();
        prop_assert!((v - h.evaluate(z)).norm() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn quadrature_oracle(f in common::bipoly(3, 4), z in common::disk_point(0.9)) {
        let grid = QuadratureGrid::default();
        let a = calculus::t_bicomplex(&f, z, EvalMode::ClosedForm, TbMode::ComponentMatched).unwrap();
        let b = calculus::t_bicomplex(&f, z, EvalMode::Quadrature(grid), TbMode::ComponentMatched).unwrap();
        prop_assert!((a - b).norm() <= 1e-6);
    }
}
