use bivek::funcrep::{parse_bipoly, parse_function_spec};
use bivek::{calculus, BiPoly, Bicomplex, ConjKind, Error, Func};
use num_complex::Complex64;
use proptest::prelude::*;
use serde_json::json;

mod common;

#[test]
fn schema_errors() {
    let bad = [
        json!({"kind": "bipoly", "terms": [{"mz": -1, "mzs": 0, "coeff": [1, 0, 0, 0]}]}),
        json!({"kind": "bipoly", "terms": [{"mz": 0, "mzs": 0, "coeff": [1, 0, 0]}]}),
        json!({"kind": "bipoly", "terms": [{"mz": 0, "mzs": 0, "coeff": ["x", 0, 0, 0]}]}),
        json!({"kind": "bipoly"}),
        json!({"kind": "rational", "terms": []}),
        json!({"kind": "closure", "name": "sinc"}),
        json!({"terms": []}),
    ];
    for doc in bad {
        assert!(matches!(parse_function_spec(&doc), Err(Error::Schema(_))), "{doc}");
    }
}

#[test]
fn duplicate_terms_are_summed() {
    let doc = json!({"kind": "bipoly", "terms": [
        {"mz": 2, "mzs": 1, "coeff": [1, 0, 0, 0]},
        {"mz": 2, "mzs": 1, "coeff": [0, 0, 1, 0]},
    ]});
    let f = parse_bipoly(&doc).unwrap();
    assert_eq!(f, BiPoly::monomial(2, 1, Bicomplex::new(1.0, 0.0, 1.0, 0.0)));
}

#[test]
fn spec_round_trip_and_closures() {
    let f = BiPoly::hat_zbar().add(&BiPoly::monomial(3, 2, Bicomplex::new(0.5, -1.0, 0.25, 2.0)));
    assert_eq!(parse_bipoly(&f.to_spec()).unwrap(), f);
    let doc = json!({"kind": "closure", "name": "pow_one_minus_z", "params": {"beta": 2.0}});
    let g = parse_function_spec(&doc).unwrap();
    let z = Complex64::new(0.5, 0.0);
    assert!((g.evaluate(z) - Bicomplex::real(4.0)).norm() < 1e-14);
    let doc = json!({"kind": "closure", "name": "exp_of_bipoly", "params": {"bipoly": BiPoly::z_embed().to_spec()}});
    let g = parse_function_spec(&doc).unwrap();
    assert!(matches!(g, Func::Closure(_)));
    assert!((g.evaluate(z) - Bicomplex::real(0.5f64.exp())).norm() < 1e-14);
}

#[test]
fn hat_variables() {
    let z = Complex64::new(0.3, 0.2);
    // ẑ* = z1 − j·z2 for z = x + iy: here [0.3, 0, −0.2, 0]
    assert_eq!(BiPoly::hat_zbar().evaluate(z), Bicomplex::new(0.3, 0.0, -0.2, 0.0));
    assert_eq!(BiPoly::hat_z().evaluate(z), Bicomplex::new(0.3, 0.0, 0.2, 0.0));
    assert_eq!(BiPoly::two_re_z().evaluate(z), Bicomplex::real(0.6));
}

proptest! {
    #[test]
    fn evaluation_is_a_homomorphism(f in common::bipoly(4, 6), g in common::bipoly(4, 6), z in common::disk_point(1.0)) {
        let (fz, gz) = (f.evaluate(z), g.evaluate(z));
        prop_assert!(common::close(f.mul(&g).unwrap().evaluate(z), fz * gz, 1e-12));
        prop_assert!(common::close(f.add(&g).evaluate(z), fz + gz, 1e-12));
    }

    #[test]
    fn conjugation_commutes_with_evaluation(f in common::bipoly(5, 8), z in common::disk_point(1.0)) {
        for k in [ConjKind::BarIj, ConjKind::BarJ, ConjKind::BarI] {
            prop_assert!(common::close(f.conj(k).evaluate(z), f.evaluate(z).conj(k), 1e-12));
        }
    }

    #[test]
    fn holomorphic_means_dbar_vanishes(f in common::bipoly(4, 8)) {
        prop_assert_eq!(f.is_holomorphic(), calculus::dbar(&f).is_zero());
    }

    #[test]
    fn holomorphic_generator(h in common::holomorphic(6)) {
        prop_assert!(h.is_holomorphic());
        prop_assert!(calculus::dbar(&h).is_zero());
    }
}
