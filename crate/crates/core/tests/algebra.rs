use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use bivek::{Bicomplex, ConjKind, Error};
use num_complex::Complex64;
use proptest::prelude::*;

mod common;

const KINDS: [ConjKind; 3] = [ConjKind::BarJ, ConjKind::BarI, ConjKind::BarIj];

#[test]
fn frozen_products() {
    // i·j = ij, j² = −1, (ij)² = 1
    assert_eq!(Bicomplex::I * Bicomplex::J, Bicomplex::IJ);
    assert_eq!(Bicomplex::J * Bicomplex::J, -Bicomplex::ONE);
    assert_eq!(Bicomplex::IJ * Bicomplex::IJ, Bicomplex::ONE);
    // (1 + 2i + 3j + 4ij)(−1 + i − 2j + ij): expanded by hand
    let w = Bicomplex::new(1.0, 2.0, 3.0, 4.0);
    let v = Bicomplex::new(-1.0, 1.0, -2.0, 1.0);
    assert_eq!(w * v, Bicomplex::new(7.0, 4.0, -11.0, -4.0));
    assert_eq!((w * v).plus(), w.plus() * v.plus());
    assert_eq!(w.plus(), Complex64::new(5.0, -1.0));
    assert_eq!(w.minus(), Complex64::new(-3.0, 5.0));
}

#[test]
fn idempotents_and_zero_divisors() {
    let (p, m) = (Bicomplex::P_PLUS, Bicomplex::P_MINUS);
    assert_eq!(p * p, p);
    assert_eq!(m * m, m);
    assert_eq!(p * m, Bicomplex::ZERO);
    assert_eq!(p + m, Bicomplex::ONE);
    assert!(p.is_zero_divisor());
    assert_eq!(p.inverse(), Err(Error::ZeroDivisor));
    assert_eq!(Bicomplex::ZERO.inverse(), Err(Error::Zero));
    assert!((p.norm() - FRAC_1_SQRT_2).abs() < 1e-16);
    assert!(((p * p).norm() - SQRT_2 * p.norm() * p.norm()).abs() < 1e-15);
}

proptest! {
    #[test]
    fn split_join_round_trip(w in common::bicomplex(100.0)) {
        let (a, b) = w.split();
        prop_assert!((Bicomplex::join(a, b) - w).norm() <= 1e-12 * w.norm());
        let idem = Bicomplex::P_PLUS * Bicomplex::from_complex(a) + Bicomplex::P_MINUS * Bicomplex::from_complex(b);
        prop_assert!((idem - w).norm() <= 1e-12 * w.norm());
    }

    #[test]
    fn product_is_componentwise(w in common::bicomplex(10.0), v in common::bicomplex(10.0)) {
        let p = w * v;
        prop_assert!((p.plus() - w.plus() * v.plus()).norm() <= 1e-12 * (1.0 + p.norm()));
        prop_assert!((p.minus() - w.minus() * v.minus()).norm() <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn norm_sandwich(w in common::bicomplex(10.0)) {
        let (a, b) = w.split();
        let n = w.norm();
        prop_assert!((n - w.euclidean_norm()).abs() <= 1e-12 * n);
        prop_assert!(a.norm() * FRAC_1_SQRT_2 <= n * (1.0 + 1e-15));
        prop_assert!(b.norm() * FRAC_1_SQRT_2 <= n * (1.0 + 1e-15));
        prop_assert!(n <= (a.norm() + b.norm()) * FRAC_1_SQRT_2 * (1.0 + 1e-15));
    }

    #[test]
    fn submultiplicative(w in common::bicomplex(10.0), v in common::bicomplex(10.0)) {
        prop_assert!((w * v).norm() <= SQRT_2 * w.norm() * v.norm() * (1.0 + 1e-15));
    }

    #[test]
    fn ring_laws(w in common::bicomplex(5.0), v in common::bicomplex(5.0), u in common::bicomplex(5.0)) {
        prop_assert!(common::close(w * (v + u), w * v + w * u, 1e-13));
        prop_assert!(common::close((w * v) * u, w * (v * u), 1e-13));
        prop_assert_eq!(w * v, v * w);
    }

    #[test]
    fn exp_is_a_homomorphism(w in common::bicomplex(1.5), v in common::bicomplex(1.5)) {
        prop_assert!(common::close((w + v).exp(), w.exp() * v.exp(), 1e-12));
        let inv = w.exp().inverse().unwrap();
        prop_assert!(common::close(inv, (-w).exp(), 1e-12));
        prop_assert!(!w.exp().is_zero_divisor());
    }

    #[test]
    fn conjugations(w in common::bicomplex(10.0), v in common::bicomplex(10.0)) {
        for k in KINDS {
            prop_assert_eq!(w.conj(k).conj(k), w);
            prop_assert!(common::close((w * v).conj(k), w.conj(k) * v.conj(k), 1e-13));
        }
        prop_assert_eq!(w.conj(ConjKind::BarJ).conj(ConjKind::BarI), w.conj(ConjKind::BarIj));
        // bar_ij conjugates each component in place
        let c = w.conj(ConjKind::BarIj);
        prop_assert_eq!(c.plus(), w.plus().conj());
        prop_assert_eq!(c.minus(), w.minus().conj());
    }

    #[test]
    fn inverse_when_invertible(w in common::bicomplex(10.0)) {
        prop_assume!(w.plus().norm() > 1e-6 && w.minus().norm() > 1e-6);
        let inv = w.inverse().unwrap();
        prop_assert!(common::close(w * inv, Bicomplex::ONE, 1e-9));
    }
}
