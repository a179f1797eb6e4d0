use bivek::decomp::{self, Mode};
use bivek::random;
use bivek::vekua::{self, VekuaProblem};
use bivek::{BiPoly, Bicomplex, CPoly, Error};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

mod common;

const DEG: usize = 3;

/// Recover holomorphic coefficients by a dense least-squares fit of
/// `f = Σ_k b^k φ_k`, one component at a time.
fn least_squares_coefficients(f: &BiPoly, basis: &BiPoly, n: usize) -> Vec<BiPoly> {
    let solve = |target: &CPoly, b: &CPoly, holo: &dyn Fn(usize) -> CPoly| -> Vec<Vec<Complex64>> {
        let cols: Vec<CPoly> = (0..n)
            .flat_map(|k| (0..=DEG).map(move |d| (k, d)))
            .map(|(k, d)| {
                let mut p = CPoly::constant(Complex64::new(1.0, 0.0));
                for _ in 0..k {
                    p = p.mul(b);
                }
                p.mul(&holo(d))
            })
            .collect();
        let mut rows: Vec<(usize, usize)> = cols.iter().flat_map(|c| c.terms().map(|(k, _)| k)).collect();
        rows.extend(target.terms().map(|(k, _)| k));
        rows.sort();
        rows.dedup();
        let a = DMatrix::from_fn(rows.len(), cols.len(), |i, j| cols[j].coeff(rows[i].0, rows[i].1));
        let rhs = DVector::from_fn(rows.len(), |i, _| target.coeff(rows[i].0, rows[i].1));
        let x = a.svd(true, true).solve(&rhs, 1e-12).unwrap();
        (0..n).map(|k| (0..=DEG).map(|d| x[k * (DEG + 1) + d]).collect()).collect()
    };
    let one = Complex64::new(1.0, 0.0);
    let plus = solve(&f.plus, &basis.plus, &|d| CPoly::monomial(0, d, one));
    let minus = solve(&f.minus, &basis.minus, &|d| CPoly::monomial(d, 0, one));
    (0..n)
        .map(|k| {
            let mut p = CPoly::zero();
            let mut m = CPoly::zero();
            for d in 0..=DEG {
                p.add_term(0, d, plus[k][d]);
                m.add_term(d, 0, minus[k][d]);
            }
            BiPoly::from_parts(p, m)
        })
        .collect()
}

fn coefficients(seed: u64, n: usize) -> Vec<BiPoly> {
    let mut rng = random::case_rng(seed, 7);
    (0..n).map(|_| random::holomorphic(&mut rng, DEG, 1.0)).collect()
}

#[test]
fn extraction_matches_dense_solve() {
    let zero = BiPoly::zero();
    for mode in [Mode::Poly, Mode::Hoiv] {
        for n in 1..=5 {
            for seed in 0..5 {
                let coeffs = coefficients(seed, n);
                let f = decomp::construct(mode, &coeffs, &zero, &zero, 1e-10).unwrap();
                let oracle = least_squares_coefficients(&f, &mode.basis(), n);
                let got = decomp::extract(mode, &f, n, &zero, &zero, 1e-10).unwrap();
                for k in 0..n {
                    assert!(got.coefficients[k].max_coeff_diff(&oracle[k]) < 1e-9, "{mode:?} n={n} k={k}");
                    assert!(oracle[k].max_coeff_diff(&coeffs[k]) < 1e-9);
                }
            }
        }
    }
}

#[test]
fn meta_with_fixed_point_coefficients() {
    let a = BiPoly::constant(Bicomplex::new(0.04, -0.03, 0.02, 0.05));
    let problem = VekuaProblem::with_coefficients(a.clone(), BiPoly::zero()).unwrap();
    let coeffs: Vec<BiPoly> = coefficients(3, 3)
        .iter()
        .map(|h| vekua::solve_fixed_point(&problem, h, 50, 1e-14).unwrap().solution)
        .collect();
    let f = decomp::construct(Mode::Meta, &coeffs, &a, &BiPoly::zero(), 1e-8).unwrap();
    let r = decomp::extract(Mode::Meta, &f, 3, &a, &BiPoly::zero(), 1e-8).unwrap();
    for (x, y) in r.coefficients.iter().zip(&coeffs) {
        assert!(x.max_coeff_diff(y) < 1e-9);
    }
    // with A ignored the same function is no longer of order 3
    let err = decomp::extract(Mode::Poly, &f, 3, &a, &BiPoly::zero(), 1e-8);
    assert!(matches!(err, Err(Error::NotInClass { .. })));
}

#[test]
fn coefficient_condition_lists_offenders() {
    let a = BiPoly::constant(Bicomplex::new(0.1, 0.0, 0.0, 0.0));
    let h = coefficients(1, 3);
    // holomorphic but not solutions of ∂̄φ = Aφ
    let err = decomp::construct(Mode::Meta, &h, &a, &BiPoly::zero(), 1e-8);
    assert_eq!(err, Err(Error::CoefficientCondition(vec![0, 1, 2])));
}

#[test]
fn json_shape() {
    let r = decomp::extract(Mode::Poly, &BiPoly::hat_zbar(), 2, &BiPoly::zero(), &BiPoly::zero(), 1e-8).unwrap();
    let v = r.to_json();
    assert_eq!(v["mode"], "poly");
    assert_eq!(v["order"], 2);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_and_nilpotency(seed in any::<u64>(), n in 1usize..=5, mode_ix in 0usize..2) {
        let mode = [Mode::Poly, Mode::Hoiv][mode_ix];
        let zero = BiPoly::zero();
        let coeffs = coefficients(seed, n);
        let f = decomp::construct(mode, &coeffs, &zero, &zero, 1e-10).unwrap();
        prop_assert!(decomp::iterate_op(&f, &zero, &zero, n).unwrap().is_zero());
        let r = decomp::extract(mode, &f, n, &zero, &zero, 1e-10).unwrap();
        for (x, y) in r.coefficients.iter().zip(&coeffs) {
            prop_assert!(x.max_coeff_diff(y) <= 1e-9);
        }
        prop_assert!(r.reconstruction_error <= 1e-12);
    }
}
