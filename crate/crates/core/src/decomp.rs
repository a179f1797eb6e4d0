//! Polyanalytic, meta-analytic and HOIV representations.
//!
//! With `L = ∂̄ − A − B·conj_ij(·)` a function annihilated by `Lⁿ` is
//! `f = Σ_{k<n} b^k φ_k` where `Lφ_k = 0` and the basis `b` is `ẑ*`
//! (polyanalytic, meta) or the real-valued `ẑ + ẑ*` (HOIV). Since `∂̄b = 1`
//! and `b` commutes with conjugation in the HOIV case,
//! `L^m f = Σ_{k≥m} k!/(k−m)! b^{k−m} φ_k`, and the coefficients come back by
//! the alternating sum
//!
//! ```text
//! φ_k = (1/k!) Σ_{j=0}^{n−1−k} ((−1)^j / j!) b^j L^{k+j} f
//! ```

use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bicomplex::{Bicomplex, ConjKind};
use crate::calculus::{self, FdStencil};
use crate::error::{Error, Result};
use crate::funcrep::{BiPoly, Func, DEFAULT_DEGREE_CAP};
use crate::random::spiral_probes;
use crate::vekua::{self, VekuaProblem};

/// Default sup-norm tolerance for class membership checks.
pub const DEFAULT_CLASS_TOL: f64 = 1e-8;
/// Probes used by membership and reconstruction checks.
pub const DEFAULT_PROBES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Poly,
    Meta,
    Hoiv,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poly" => Ok(Mode::Poly),
            "meta" => Ok(Mode::Meta),
            "hoiv" => Ok(Mode::Hoiv),
            other => Err(Error::Schema(format!("unknown mode {other:?}"))),
        }
    }
}

impl Mode {
    pub fn basis(self) -> BiPoly {
        match self {
            Mode::Poly | Mode::Meta => BiPoly::hat_zbar(),
            Mode::Hoiv => BiPoly::two_re_z(),
        }
    }

    /// The coefficients this mode actually uses (`A = B = 0` for poly, `B = 0` for meta).
    fn effective(self, a: &BiPoly, b: &BiPoly) -> (BiPoly, BiPoly) {
        match self {
            Mode::Poly => (BiPoly::zero(), BiPoly::zero()),
            Mode::Meta => (a.clone(), BiPoly::zero()),
            Mode::Hoiv => (a.clone(), b.clone()),
        }
    }
}

/// Apply `∂̄ − A − B·conj_ij(·)` `k` times.
pub fn iterate_op(f: &BiPoly, a: &BiPoly, b: &BiPoly, k: usize) -> Result<BiPoly> {
    iterate_op_capped(f, a, b, k, DEFAULT_DEGREE_CAP)
}

pub fn iterate_op_capped(f: &BiPoly, a: &BiPoly, b: &BiPoly, k: usize, cap: usize) -> Result<BiPoly> {
    let mut g = f.clone();
    for _ in 0..k {
        let ag = a.mul_capped(&g, cap)?;
        let bg = b.mul_capped(&g.conj(ConjKind::BarIj), cap)?;
        g = calculus::dbar(&g).sub(&ag).sub(&bg);
    }
    Ok(g)
}

fn first_order_residual(a: &BiPoly, b: &BiPoly, phi: &BiPoly, probes: &[Complex64]) -> Result<f64> {
    let problem = VekuaProblem {
        a: a.clone(),
        b: b.clone(),
        conj: ConjKind::BarIj,
        degree_cap: DEFAULT_DEGREE_CAP,
    };
    vekua::residual(&problem, &Func::Poly(phi.clone()), probes, FdStencil::default())
}

fn sup_norm(f: &BiPoly, probes: &[Complex64]) -> f64 {
    probes.iter().map(|&z| f.evaluate(z).norm()).fold(0.0, f64::max)
}

/// `Σ_k basis^k φ_k`, after checking each coefficient solves the mode's
/// first-order equation (holomorphy for poly, Vekua residual ≤ `tol` otherwise).
pub fn construct(mode: Mode, coeffs: &[BiPoly], a: &BiPoly, b: &BiPoly, tol: f64) -> Result<BiPoly> {
    if coeffs.is_empty() {
        return Err(Error::Precondition("order n must be at least 1".into()));
    }
    let (a, b) = mode.effective(a, b);
    let probes = spiral_probes(DEFAULT_PROBES, 0.9);
    let mut bad = Vec::new();
    for (k, phi) in coeffs.iter().enumerate() {
        let ok = match mode {
            Mode::Poly => phi.is_holomorphic(),
            Mode::Meta | Mode::Hoiv => first_order_residual(&a, &b, phi, &probes)? <= tol,
        };
        if !ok {
            bad.push(k);
        }
    }
    if !bad.is_empty() {
        return Err(Error::CoefficientCondition(bad));
    }
    let basis = mode.basis();
    let mut power = BiPoly::constant(Bicomplex::ONE);
    let mut f = BiPoly::zero();
    for phi in coeffs {
        f = f.add(&power.mul(phi)?);
        power = power.mul(&basis)?;
    }
    Ok(f)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompResult {
    pub mode: Mode,
    pub order: usize,
    #[serde(serialize_with = "serialize_coeffs")]
    pub coefficients: Vec<BiPoly>,
    pub reconstruction_error: f64,
    pub class_residual: f64,
}

fn serialize_coeffs<S: serde::Serializer>(c: &[BiPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Value> = c.iter().map(BiPoly::to_spec).collect();
    v.serialize(s)
}

impl DecompResult {
    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode,
            "order": self.order,
            "coefficients": self.coefficients.iter().map(BiPoly::to_spec).collect::<Vec<_>>(),
            "reconstruction_error": self.reconstruction_error,
            "class_residual": self.class_residual,
        })
    }
}

/// Recover `φ_0..φ_{n−1}` by the alternating-sum formula.
pub fn extract(mode: Mode, f: &BiPoly, n: usize, a: &BiPoly, b: &BiPoly, tol: f64) -> Result<DecompResult> {
    if n == 0 {
        return Err(Error::Precondition("order n must be at least 1".into()));
    }
    let (a, b) = mode.effective(a, b);
    let probes = spiral_probes(DEFAULT_PROBES, 0.9);
    // L^0 f .. L^n f
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(f.clone());
    for m in 0..n {
        let next = iterate_op(&powers[m], &a, &b, 1)?;
        powers.push(next);
    }
    let class_residual = sup_norm(&powers[n], &probes);
    if class_residual > tol {
        return Err(Error::NotInClass {
            residual: class_residual,
            tol,
        });
    }
    let basis = mode.basis();
    let mut basis_pow = vec![BiPoly::constant(Bicomplex::ONE)];
    for j in 1..n {
        let next = basis_pow[j - 1].mul(&basis)?;
        basis_pow.push(next);
    }
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    let mut coefficients = Vec::with_capacity(n);
    for k in 0..n {
        let mut phi = BiPoly::zero();
        for j in 0..(n - k) {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let term = basis_pow[j].mul(&powers[k + j])?;
            phi = phi.add(&term.scale_real(sign / fact(j)));
        }
        coefficients.push(phi.scale_real(1.0 / fact(k)));
    }
    let mut rebuilt = BiPoly::zero();
    for (k, phi) in coefficients.iter().enumerate() {
        rebuilt = rebuilt.add(&basis_pow[k].mul(phi)?);
    }
    let reconstruction_error = sup_norm(&f.sub(&rebuilt), &probes);
    Ok(DecompResult {
        mode,
        order: n,
        coefficients,
        reconstruction_error,
        class_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn zero() -> BiPoly {
        BiPoly::zero()
    }

    #[test]
    fn iterate_op_examples() {
        let zs2 = BiPoly::hat_zbar().pow(2).unwrap();
        assert_eq!(iterate_op(&zs2, &zero(), &zero(), 2).unwrap(), BiPoly::constant(Bicomplex::real(2.0)));
        let mut rng = random::case_rng(9, 0);
        let f = random::bipoly(&mut rng, 3, 3, 1.0);
        let a = random::bipoly(&mut rng, 1, 1, 1.0);
        assert_eq!(iterate_op(&f, &a, &a, 0).unwrap(), f);
        let phi = random::holomorphic(&mut rng, 4, 1.0);
        let f = BiPoly::hat_zbar().pow(3).unwrap().mul(&phi).unwrap();
        let expect = BiPoly::hat_zbar().pow(2).unwrap().mul(&phi).unwrap().scale_real(3.0);
        assert!(iterate_op(&f, &zero(), &zero(), 1).unwrap().max_coeff_diff(&expect) < 1e-14);
    }

    #[test]
    fn iterate_op_overflow() {
        let f = BiPoly::monomial(60, 0, Bicomplex::ONE);
        let a = BiPoly::monomial(10, 0, Bicomplex::ONE);
        assert!(matches!(iterate_op(&f, &a, &zero(), 1), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn construct_examples() {
        let one = BiPoly::constant(Bicomplex::ONE);
        let f = construct(Mode::Poly, &[zero(), one.clone()], &zero(), &zero(), 1e-8).unwrap();
        assert_eq!(f, BiPoly::hat_zbar());

        let mut rng = random::case_rng(2, 0);
        let phi = random::holomorphic(&mut rng, 3, 1.0);
        let f = construct(Mode::Hoiv, &[zero(), phi.clone()], &zero(), &zero(), 1e-8).unwrap();
        assert!(f.max_coeff_diff(&BiPoly::two_re_z().mul(&phi).unwrap()) < 1e-15);
        assert!(iterate_op(&f, &zero(), &zero(), 2).unwrap().is_zero());

        let f = construct(Mode::Meta, &[phi.clone()], &zero(), &zero(), 1e-8).unwrap();
        assert_eq!(f, phi);

        let err = construct(Mode::Poly, &[one.clone(), BiPoly::hat_zbar()], &zero(), &zero(), 1e-8);
        assert_eq!(err, Err(Error::CoefficientCondition(vec![1])));
        assert!(construct(Mode::Poly, &[], &zero(), &zero(), 1e-8).is_err());
    }

    #[test]
    fn extract_examples() {
        let r = extract(Mode::Poly, &BiPoly::hat_zbar(), 2, &zero(), &zero(), 1e-8).unwrap();
        assert!(r.coefficients[0].is_zero());
        assert_eq!(r.coefficients[1], BiPoly::constant(Bicomplex::ONE));
        assert!(r.reconstruction_error < 1e-15);
    }

    #[test]
    fn extract_rejects_out_of_class() {
        let f = BiPoly::hat_zbar().pow(3).unwrap();
        let err = extract(Mode::Poly, &f, 2, &zero(), &zero(), 1e-8);
        assert!(matches!(err, Err(Error::NotInClass { .. })));
    }

    #[test]
    fn mode_parse() {
        assert_eq!("hoiv".parse::<Mode>().unwrap(), Mode::Hoiv);
        assert!("bers".parse::<Mode>().is_err());
    }
}
