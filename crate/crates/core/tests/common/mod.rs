#![allow(dead_code)]

use std::f64::consts::TAU;

use bivek::{BiPoly, Bicomplex};
use num_complex::Complex64;
use proptest::prelude::*;

pub fn bicomplex(scale: f64) -> impl Strategy<Value = Bicomplex> {
    prop::array::uniform4(-scale..scale).prop_map(Bicomplex::from_array)
}

pub fn disk_point(rmax: f64) -> impl Strategy<Value = Complex64> {
    (0.0..rmax, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Sparse polynomial with up to `terms` monomials of bidegree ≤ (max, max).
pub fn bipoly(max: usize, terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max, 0..=max, bicomplex(1.0)), 0..=terms).prop_map(|ts| {
        ts.into_iter()
            .fold(BiPoly::zero(), |f, (m, n, c)| f.add(&BiPoly::monomial(m, n, c)))
    })
}

/// Random B-holomorphic polynomial of degree ≤ `deg`.
pub fn holomorphic(deg: usize) -> impl Strategy<Value = BiPoly> {
    any::<u64>().prop_map(move |s| bivek::random::holomorphic(&mut bivek::random::case_rng(s, 0), deg, 1.0))
}

pub fn close(a: Bicomplex, b: Bicomplex, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}
