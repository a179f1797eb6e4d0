//! The bicomplex Vekua equation `∂̄w = Aw + B·conj(w)` on the unit disk.
//!
//! With `B ≡ 0` every solution factors as `φ·exp(T_B(A))` with `φ`
//! `B`-holomorphic ([`solve_similarity`]). General polynomial coefficients go
//! through the second-kind equation `w = φ + T_B(Aw + B·conj(w))`, iterated
//! with explicit truncation ([`solve_fixed_point`]). Under the `bar_ij`
//! conjugation the equation splits into two complex Vekua equations, one per
//! idempotent component ([`decouple`]).

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::bicomplex::{Bicomplex, ConjKind};
use crate::calculus::{self, fd_apply_auto, t_bicomplex_poly, FdStencil, TbMode, Wirtinger};
use crate::error::{Error, Result};
use crate::funcrep::{parse_bipoly, BiPoly, CPoly, ClosureFn, Func, DEFAULT_DEGREE_CAP};
use crate::random::spiral_probes;

pub const DEFAULT_FIXED_POINT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct VekuaProblem {
    pub a: BiPoly,
    pub b: BiPoly,
    pub conj: ConjKind,
    pub degree_cap: usize,
}

impl VekuaProblem {
    pub fn new(a: BiPoly, b: BiPoly, conj: ConjKind, degree_cap: usize) -> Result<Self> {
        let (am, an) = a.bidegree();
        let (bm, bn) = b.bidegree();
        let need = am.max(an).max(bm).max(bn);
        if degree_cap < need || degree_cap > DEFAULT_DEGREE_CAP {
            return Err(Error::DegreeOverflow {
                m: need,
                n: need,
                cap: degree_cap,
            });
        }
        Ok(VekuaProblem { a, b, conj, degree_cap })
    }

    /// `(A, B)` with `bar_ij` and the default fixed-point cap.
    pub fn with_coefficients(a: BiPoly, b: BiPoly) -> Result<Self> {
        VekuaProblem::new(a, b, ConjKind::BarIj, DEFAULT_FIXED_POINT_CAP)
    }

    /// `{"A": <spec>, "B": <spec>, "conj": "bar_ij"|"bar_j", "degree_cap": int}`;
    /// missing fields default to zero coefficients, `bar_ij` and cap 24.
    pub fn from_json(doc: &Value) -> Result<Self> {
        let coeff = |key: &str| match doc.get(key) {
            Some(v) => parse_bipoly(v),
            None => Ok(BiPoly::zero()),
        };
        let conj = match doc.get("conj") {
            None => ConjKind::BarIj,
            Some(v) => v
                .as_str()
                .ok_or_else(|| Error::Schema("conj must be a string".into()))?
                .parse()?,
        };
        let cap = match doc.get("degree_cap") {
            None => DEFAULT_FIXED_POINT_CAP,
            Some(v) => v
                .as_u64()
                .ok_or_else(|| Error::Schema("degree_cap must be a nonnegative integer".into()))?
                as usize,
        };
        VekuaProblem::new(coeff("A")?, coeff("B")?, conj, cap)
    }

    /// `∂̄w − Aw − B·conj(w)` at `z`, from given values of `w` and `∂̄w`.
    fn residual_from(&self, z: Complex64, w: Bicomplex, dw: Bicomplex) -> Bicomplex {
        dw - self.a.evaluate(z) * w - self.b.evaluate(z) * w.conj(self.conj)
    }

    /// Pointwise residual; exact `∂̄` for polynomials, finite differences otherwise.
    pub fn residual_at(&self, w: &Func, z: Complex64, stencil: FdStencil) -> Result<Bicomplex> {
        let (val, dw) = match w {
            Func::Poly(p) => (p.evaluate(z), calculus::dbar(p).evaluate(z)),
            Func::Closure(c) => (c.evaluate(z), fd_apply_auto(c, Wirtinger::Dbar, z, stencil)?),
        };
        Ok(self.residual_from(z, val, dw))
    }

    /// The residual as an exact polynomial.
    pub fn residual_poly(&self, w: &BiPoly) -> BiPoly {
        calculus::dbar(w)
            .sub(&self.a.mul_unchecked(w))
            .sub(&self.b.mul_unchecked(&w.conj(self.conj)))
    }
}

fn check_probes(probes: &[Complex64]) -> Result<()> {
    if probes.is_empty() {
        return Err(Error::Precondition("residual needs at least one probe".into()));
    }
    if let Some(z) = probes.iter().find(|z| z.norm() >= 1.0) {
        return Err(Error::Precondition(format!("probe {z} is not in the open disk")));
    }
    Ok(())
}

/// `sup ‖∂̄w − Aw − B·conj(w)‖_B` over the probes.
pub fn residual(problem: &VekuaProblem, w: &Func, probes: &[Complex64], stencil: FdStencil) -> Result<f64> {
    check_probes(probes)?;
    let mut worst: f64 = 0.0;
    for &z in probes {
        worst = worst.max(problem.residual_at(w, z, stencil)?.norm());
    }
    Ok(worst)
}

/// `exp(T_B(A))`, never zero and never a zero divisor.
pub fn similarity_factor(a: &BiPoly) -> ClosureFn {
    ClosureFn::exp_of_bipoly(t_bicomplex_poly(a, TbMode::ComponentMatched))
}

/// `w = φ·exp(T_B(A))`, a solution of `∂̄w = Aw` for holomorphic `φ`.
pub fn solve_similarity(a: &BiPoly, phi: &BiPoly) -> Result<ClosureFn> {
    if !phi.is_holomorphic() {
        return Err(Error::Precondition("similarity factor φ must be B-holomorphic".into()));
    }
    let exponent = t_bicomplex_poly(a, TbMode::ComponentMatched);
    let phi = phi.clone();
    Ok(ClosureFn::new("phi*exp(T_B(A))", move |z| {
        phi.evaluate(z) * exponent.evaluate(z).exp()
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    #[serde(serialize_with = "serialize_spec")]
    pub solution: BiPoly,
    pub residual_sup: f64,
    pub iterations: usize,
    pub converged: bool,
    pub last_change: f64,
    pub truncated_mass: f64,
}

fn serialize_spec<S: serde::Serializer>(p: &BiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.to_spec().serialize(s)
}

/// Iterate `w ← φ + T_B(Aw + B·conj(w))`, truncating at the problem's cap.
///
/// Stops once the largest coefficient change drops below `tol`; the residual
/// is then measured independently at 64 probes with `|z| ≤ 0.9`.
pub fn solve_fixed_point(problem: &VekuaProblem, phi: &BiPoly, max_iter: usize, tol: f64) -> Result<SolveReport> {
    if !phi.is_holomorphic() {
        return Err(Error::Precondition("fixed-point seed φ must be B-holomorphic".into()));
    }
    let cap = problem.degree_cap;
    let (pm, pn) = phi.bidegree();
    if pm > cap || pn > cap {
        return Err(Error::DegreeOverflow { m: pm, n: pn, cap });
    }
    let mut w = phi.clone();
    let mut change = f64::INFINITY;
    // an iteration whose updates ever grow is not contracting
    let mut expanding = false;
    for it in 1..=max_iter {
        let rhs = problem
            .a
            .mul_unchecked(&w)
            .add(&problem.b.mul_unchecked(&w.conj(problem.conj)));
        let (next, mass) = phi.add(&t_bicomplex_poly(&rhs, TbMode::ComponentMatched)).truncate(cap);
        let prev_change = change;
        change = next.max_coeff_diff(&w);
        expanding |= it > 1 && change > prev_change;
        w = next;
        if !change.is_finite() || w.max_coeff_norm() > 1e150 {
            return Err(Error::NonConvergence { iterations: it, change });
        }
        if change < tol {
            let probes = spiral_probes(64, 0.9);
            let residual_sup = residual(problem, &Func::Poly(w.clone()), &probes, FdStencil::default())?;
            if residual_sup > tol && expanding {
                return Err(Error::NonConvergence { iterations: it, change: residual_sup });
            }
            if residual_sup > tol && mass > 0.0 {
                let (m, n) = w.bidegree();
                return Err(Error::DegreeOverflow { m: m + 1, n: n + 1, cap });
            }
            return Ok(SolveReport {
                solution: w,
                residual_sup,
                iterations: it,
                converged: residual_sup <= tol,
                last_change: change,
                truncated_mass: mass,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        change,
    })
}

/// One of the two complex Vekua equations `∂u/∂z* = a·u + b·u*`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVekua {
    pub a: CPoly,
    pub b: CPoly,
}

impl ComplexVekua {
    pub fn residual_poly(&self, u: &CPoly) -> CPoly {
        u.d_dzbar().sub(&self.a.mul(u)).sub(&self.b.mul(&u.conj()))
    }
}

#[derive(Debug, Clone)]
pub struct DecoupleReport {
    /// Equation for `(w⁺)*`: coefficients `((A⁺)*, (B⁺)*)`.
    pub plus_problem: ComplexVekua,
    /// Equation for `w⁻`: coefficients `(A⁻, B⁻)`.
    pub minus_problem: ComplexVekua,
    pub probes: Vec<Complex64>,
    pub plus_residuals: Vec<f64>,
    pub minus_residuals: Vec<f64>,
    pub bicomplex_residuals: Vec<f64>,
}

/// Split the problem into its two complex component equations and compare
/// their residuals with the bicomplex one at each probe.
pub fn decouple(problem: &VekuaProblem, w: &BiPoly, probes: &[Complex64]) -> Result<DecoupleReport> {
    if problem.conj != ConjKind::BarIj {
        return Err(Error::Convention(problem.conj.name().into()));
    }
    check_probes(probes)?;
    let plus_problem = ComplexVekua {
        a: problem.a.plus.conj(),
        b: problem.b.plus.conj(),
    };
    let minus_problem = ComplexVekua {
        a: problem.a.minus.clone(),
        b: problem.b.minus.clone(),
    };
    let rp = plus_problem.residual_poly(&w.plus.conj());
    let rm = minus_problem.residual_poly(&w.minus);
    let wf = Func::Poly(w.clone());
    let mut report = DecoupleReport {
        plus_problem,
        minus_problem,
        probes: probes.to_vec(),
        plus_residuals: Vec::with_capacity(probes.len()),
        minus_residuals: Vec::with_capacity(probes.len()),
        bicomplex_residuals: Vec::with_capacity(probes.len()),
    };
    for &z in probes {
        report.plus_residuals.push(rp.eval(z).norm());
        report.minus_residuals.push(rm.eval(z).norm());
        report
            .bicomplex_residuals
            .push(problem.residual_at(&wf, z, FdStencil::default())?.norm());
    }
    Ok(report)
}
