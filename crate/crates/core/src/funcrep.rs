//! Functions `D → B`.
//!
//! [`BiPoly`] is an exact polynomial algebra in `(z, z*)`, stored as one
//! complex polynomial per idempotent component. [`ClosureFn`] wraps
//! non-polynomial functions that can only be evaluated.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::bicomplex::{Bicomplex, ConjKind};
use crate::error::{Error, Result};

/// Sparse Horner: `Σ c_e x^e` for `(e, c)` pairs sorted by ascending `e`.
fn horner_sparse(items: &[(usize, Complex64)], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut cur = items.last().map_or(0, |&(e, _)| e);
    for &(e, c) in items.iter().rev() {
        for _ in e..cur {
            acc *= x;
        }
        acc += c;
        cur = e;
    }
    for _ in 0..cur {
        acc *= x;
    }
    acc
}

/// Default per-variable degree cap for polynomial arithmetic.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Anything that can be evaluated on the disk.
pub trait DiskFunction: Send + Sync {
    fn eval(&self, z: Complex64) -> Bicomplex;
}

/// Complex polynomial `Σ c_{mn} z^m z*^n` with sparse, normalized storage.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CPoly {
    terms: BTreeMap<(usize, usize), Complex64>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn constant(c: Complex64) -> Self {
        CPoly::monomial(0, 0, c)
    }

    pub fn monomial(m: usize, n: usize, c: Complex64) -> Self {
        let mut p = CPoly::zero();
        p.add_term(m, n, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), Complex64)>>(it: I) -> Self {
        let mut p = CPoly::zero();
        for ((m, n), c) in it {
            p.add_term(m, n, c);
        }
        p
    }

    /// Accumulate `c z^m z*^n`, dropping coefficients that become exactly zero.
    pub fn add_term(&mut self, m: usize, n: usize, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry((m, n)).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(m, n));
        }
    }

    pub fn coeff(&self, m: usize, n: usize) -> Complex64 {
        self.terms.get(&(m, n)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(max degree in z, max degree in z*)`; `(0, 0)` for the zero polynomial.
    pub fn bidegree(&self) -> (usize, usize) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(m, n)| (a.max(m), b.max(n)))
    }

    /// Horner in `z*` within each row, then Horner in `z` across rows.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zc = z.conj();
        let mut rows: Vec<(usize, Complex64)> = Vec::new();
        let mut row: Vec<(usize, Complex64)> = Vec::new();
        let mut iter = self.terms.iter().peekable();
        while let Some((&(m, n), &c)) = iter.next() {
            row.push((n, c));
            if iter.peek().map_or(true, |(&(m2, _), _)| m2 != m) {
                rows.push((m, horner_sparse(&row, zc)));
                row.clear();
            }
        }
        horner_sparse(&rows, z)
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for ((m, n), c) in other.terms() {
            out.add_term(m, n, c);
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> CPoly {
        CPoly::from_terms(self.terms().map(|(k, c)| (k, c * s)))
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = CPoly::zero();
        for ((m1, n1), c1) in self.terms() {
            for ((m2, n2), c2) in other.terms() {
                out.add_term(m1 + m2, n1 + n2, c1 * c2);
            }
        }
        out
    }

    /// Complex conjugate as a function: conjugate coefficients, swap exponents.
    pub fn conj(&self) -> CPoly {
        CPoly::from_terms(self.terms().map(|((m, n), c)| ((n, m), c.conj())))
    }

    /// `∂/∂z`
    pub fn d_dz(&self) -> CPoly {
        CPoly::from_terms(
            self.terms()
                .filter(|&((m, _), _)| m > 0)
                .map(|((m, n), c)| ((m - 1, n), c * m as f64)),
        )
    }

    /// `∂/∂z*`
    pub fn d_dzbar(&self) -> CPoly {
        CPoly::from_terms(
            self.terms()
                .filter(|&((_, n), _)| n > 0)
                .map(|((m, n), c)| ((m, n - 1), c * n as f64)),
        )
    }

    /// Largest coefficientwise modulus of `self − other`.
    pub fn max_diff(&self, other: &CPoly) -> f64 {
        self.sub(other)
            .terms()
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Drop every term with a degree above `cap`; returns the dropped l1 mass.
    pub fn truncate(&self, cap: usize) -> (CPoly, f64) {
        let mut mass = 0.0;
        let kept = CPoly::from_terms(self.terms().filter(|&((m, n), c)| {
            let keep = m <= cap && n <= cap;
            if !keep {
                mass += c.norm();
            }
            keep
        }));
        (kept, mass)
    }
}

/// A function `D → B` given by polynomial idempotent components.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BiPoly {
    pub plus: CPoly,
    pub minus: CPoly,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn from_parts(plus: CPoly, minus: CPoly) -> Self {
        BiPoly { plus, minus }
    }

    pub fn constant(c: Bicomplex) -> Self {
        let (p, m) = c.split();
        BiPoly::from_parts(CPoly::constant(p), CPoly::constant(m))
    }

    /// `c · z^m z*^n` with a bicomplex coefficient and the embedded complex monomial.
    pub fn monomial(m: usize, n: usize, c: Bicomplex) -> Self {
        let (p, q) = c.split();
        BiPoly::from_parts(CPoly::monomial(m, n, p), CPoly::monomial(m, n, q))
    }

    /// A complex polynomial embedded with equal components.
    pub fn embed(p: &CPoly) -> Self {
        BiPoly::from_parts(p.clone(), p.clone())
    }

    /// `z` embedded as an `i`-complex valued function.
    pub fn z_embed() -> Self {
        BiPoly::monomial(1, 0, Bicomplex::ONE)
    }

    /// `z*` embedded as an `i`-complex valued function.
    pub fn zbar_embed() -> Self {
        BiPoly::monomial(0, 1, Bicomplex::ONE)
    }

    /// `ẑ = x + jy`, components `(z*, z)`.
    pub fn hat_z() -> Self {
        BiPoly::from_parts(
            CPoly::monomial(0, 1, Complex64::new(1.0, 0.0)),
            CPoly::monomial(1, 0, Complex64::new(1.0, 0.0)),
        )
    }

    /// `ẑ* = x − jy`, components `(z, z*)`.
    pub fn hat_zbar() -> Self {
        BiPoly::from_parts(
            CPoly::monomial(1, 0, Complex64::new(1.0, 0.0)),
            CPoly::monomial(0, 1, Complex64::new(1.0, 0.0)),
        )
    }

    /// `ẑ + ẑ* = 2x`.
    pub fn two_re_z() -> Self {
        BiPoly::hat_z().add(&BiPoly::hat_zbar())
    }

    /// Bicomplex coefficient of the embedded monomial `z^m z*^n`.
    pub fn coeff(&self, m: usize, n: usize) -> Bicomplex {
        Bicomplex::join(self.plus.coeff(m, n), self.minus.coeff(m, n))
    }

    /// All `(m, n)` keys present in either component, ascending.
    pub fn keys(&self) -> Vec<(usize, usize)> {
        let mut k: Vec<_> = self
            .plus
            .terms()
            .map(|(k, _)| k)
            .chain(self.minus.terms().map(|(k, _)| k))
            .collect();
        k.sort_unstable();
        k.dedup();
        k
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        let (a, b) = self.plus.bidegree();
        let (c, d) = self.minus.bidegree();
        (a.max(c), b.max(d))
    }

    pub fn evaluate(&self, z: Complex64) -> Bicomplex {
        Bicomplex::join(self.plus.eval(z), self.minus.eval(z))
    }

    /// Evaluate and report whether `z` lies outside the closed disk.
    pub fn evaluate_flagged(&self, z: Complex64) -> (Bicomplex, bool) {
        (self.evaluate(z), z.norm() > 1.0)
    }

    pub fn add(&self, g: &BiPoly) -> BiPoly {
        BiPoly::from_parts(self.plus.add(&g.plus), self.minus.add(&g.minus))
    }

    pub fn sub(&self, g: &BiPoly) -> BiPoly {
        BiPoly::from_parts(self.plus.sub(&g.plus), self.minus.sub(&g.minus))
    }

    pub fn scale(&self, s: Bicomplex) -> BiPoly {
        let (p, m) = s.split();
        BiPoly::from_parts(self.plus.scale(p), self.minus.scale(m))
    }

    pub fn scale_real(&self, s: f64) -> BiPoly {
        self.scale(Bicomplex::real(s))
    }

    /// Componentwise product without a degree check.
    pub fn mul_unchecked(&self, g: &BiPoly) -> BiPoly {
        BiPoly::from_parts(self.plus.mul(&g.plus), self.minus.mul(&g.minus))
    }

    /// Product with the default degree cap.
    pub fn mul(&self, g: &BiPoly) -> Result<BiPoly> {
        self.mul_capped(g, DEFAULT_DEGREE_CAP)
    }

    pub fn mul_capped(&self, g: &BiPoly, cap: usize) -> Result<BiPoly> {
        let (a, b) = self.bidegree();
        let (c, d) = g.bidegree();
        if !self.is_zero() && !g.is_zero() && (a + c > cap || b + d > cap) {
            return Err(Error::DegreeOverflow {
                m: a + c,
                n: b + d,
                cap,
            });
        }
        Ok(self.mul_unchecked(g))
    }

    pub fn pow(&self, k: u32) -> Result<BiPoly> {
        let mut out = BiPoly::constant(Bicomplex::ONE);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Termwise conjugation; evaluation commutes with [`Bicomplex::conj`].
    pub fn conj(&self, kind: ConjKind) -> BiPoly {
        match kind {
            ConjKind::BarIj => BiPoly::from_parts(self.plus.conj(), self.minus.conj()),
            ConjKind::BarJ => BiPoly::from_parts(self.minus.clone(), self.plus.clone()),
            ConjKind::BarI => BiPoly::from_parts(self.minus.conj(), self.plus.conj()),
        }
    }

    /// `∂̄f = 0`: the plus part is free of `z`, the minus part free of `z*`.
    pub fn is_holomorphic(&self) -> bool {
        self.plus.terms().all(|((m, _), _)| m == 0) && self.minus.terms().all(|((_, n), _)| n == 0)
    }

    /// Largest coefficientwise bicomplex-norm of `self − other`.
    pub fn max_coeff_diff(&self, other: &BiPoly) -> f64 {
        let diff = self.sub(other);
        diff.keys()
            .into_iter()
            .map(|(m, n)| diff.coeff(m, n).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.max_coeff_diff(&BiPoly::zero())
    }

    /// Drop terms above `cap` in either variable; returns the dropped mass.
    pub fn truncate(&self, cap: usize) -> (BiPoly, f64) {
        let (p, a) = self.plus.truncate(cap);
        let (m, b) = self.minus.truncate(cap);
        (BiPoly::from_parts(p, m), a + b)
    }

    pub fn to_spec(&self) -> Value {
        let terms: Vec<Value> = self
            .keys()
            .into_iter()
            .map(|(m, n)| json!({"mz": m, "mzs": n, "coeff": self.coeff(m, n).to_array()}))
            .collect();
        json!({"kind": "bipoly", "terms": terms})
    }
}

impl DiskFunction for BiPoly {
    fn eval(&self, z: Complex64) -> Bicomplex {
        self.evaluate(z)
    }
}

type EvalFn = dyn Fn(Complex64) -> Bicomplex + Send + Sync;

/// An evaluate-only function with an optional exact `∂̄`.
#[derive(Clone)]
pub struct ClosureFn {
    eval: Arc<EvalFn>,
    dbar: Option<Arc<EvalFn>>,
    descriptor: String,
}

impl fmt::Debug for ClosureFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureFn")
            .field("descriptor", &self.descriptor)
            .field("has_dbar", &self.dbar.is_some())
            .finish()
    }
}

impl ClosureFn {
    pub fn new<F>(descriptor: impl Into<String>, f: F) -> Self
    where
        F: Fn(Complex64) -> Bicomplex + Send + Sync + 'static,
    {
        ClosureFn {
            eval: Arc::new(f),
            dbar: None,
            descriptor: descriptor.into(),
        }
    }

    pub fn with_dbar<F>(mut self, f: F) -> Self
    where
        F: Fn(Complex64) -> Bicomplex + Send + Sync + 'static,
    {
        self.dbar = Some(Arc::new(f));
        self
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn evaluate(&self, z: Complex64) -> Bicomplex {
        (self.eval)(z)
    }

    /// Analytic `∂̄`, when the closure carries one.
    pub fn exact_dbar(&self, z: Complex64) -> Option<Bicomplex> {
        self.dbar.as_ref().map(|f| f(z))
    }

    /// `(1 − z)^(−β)` embedded as an `i`-complex function (principal branch).
    pub fn pow_one_minus_z(beta: f64) -> Self {
        ClosureFn::new(format!("(1-z)^(-{beta})"), move |z: Complex64| {
            Bicomplex::from_complex((Complex64::new(1.0, 0.0) - z).powf(-beta))
        })
        .with_dbar(|_| Bicomplex::ZERO)
    }

    /// `exp(g)` for a polynomial `g`, with `∂̄ exp(g) = exp(g)·∂̄g`.
    pub fn exp_of_bipoly(g: BiPoly) -> Self {
        let dg = crate::calculus::dbar(&g);
        let g1 = g.clone();
        ClosureFn::new("exp(bipoly)", move |z| g1.evaluate(z).exp())
            .with_dbar(move |z| g.evaluate(z).exp() * dg.evaluate(z))
    }

    pub fn from_poly(p: BiPoly) -> Self {
        let dp = crate::calculus::dbar(&p);
        let p1 = p.clone();
        ClosureFn::new("bipoly", move |z| p1.evaluate(z)).with_dbar(move |z| dp.evaluate(z))
    }
}

impl DiskFunction for ClosureFn {
    fn eval(&self, z: Complex64) -> Bicomplex {
        self.evaluate(z)
    }
}

/// Either representation.
#[derive(Debug, Clone)]
pub enum Func {
    Poly(BiPoly),
    Closure(ClosureFn),
}

impl Func {
    pub fn as_poly(&self) -> Option<&BiPoly> {
        match self {
            Func::Poly(p) => Some(p),
            Func::Closure(_) => None,
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Bicomplex {
        match self {
            Func::Poly(p) => p.evaluate(z),
            Func::Closure(c) => c.evaluate(z),
        }
    }

    pub fn into_closure(self) -> ClosureFn {
        match self {
            Func::Poly(p) => ClosureFn::from_poly(p),
            Func::Closure(c) => c,
        }
    }
}

impl DiskFunction for Func {
    fn eval(&self, z: Complex64) -> Bicomplex {
        self.evaluate(z)
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn parse_degree(term: &Value, key: &str) -> Result<usize> {
    let v = term
        .get(key)
        .ok_or_else(|| schema(format!("term is missing {key:?}")))?;
    if let Some(i) = v.as_i64() {
        if i < 0 {
            return Err(schema(format!("{key} must be >= 0, got {i}")));
        }
        return Ok(i as usize);
    }
    if let Some(u) = v.as_u64() {
        return Ok(u as usize);
    }
    Err(schema(format!("{key} must be an integer")))
}

fn parse_coeff(term: &Value) -> Result<Bicomplex> {
    let arr = term
        .get("coeff")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("coeff must be an array of four reals"))?;
    if arr.len() != 4 {
        return Err(schema(format!("coeff must have 4 entries, got {}", arr.len())));
    }
    let mut out = [0.0; 4];
    for (slot, v) in out.iter_mut().zip(arr) {
        *slot = v
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| schema("coeff entries must be finite reals"))?;
    }
    Ok(Bicomplex::from_array(out))
}

/// Parse a `{"kind":"bipoly",...}` document.
pub fn parse_bipoly(doc: &Value) -> Result<BiPoly> {
    match parse_function_spec(doc)? {
        Func::Poly(p) => Ok(p),
        Func::Closure(_) => Err(schema("expected a bipoly document")),
    }
}

/// Parse a function-spec document into a normalized representation.
pub fn parse_function_spec(doc: &Value) -> Result<Func> {
    let kind = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("document needs a string \"kind\""))?;
    match kind {
        "bipoly" => {
            let terms = doc
                .get("terms")
                .and_then(Value::as_array)
                .ok_or_else(|| schema("bipoly needs a \"terms\" array"))?;
            let mut f = BiPoly::zero();
            for t in terms {
                let m = parse_degree(t, "mz")?;
                let n = parse_degree(t, "mzs")?;
                if m > DEFAULT_DEGREE_CAP || n > DEFAULT_DEGREE_CAP {
                    return Err(Error::DegreeOverflow {
                        m,
                        n,
                        cap: DEFAULT_DEGREE_CAP,
                    });
                }
                let c = parse_coeff(t)?;
                f = f.add(&BiPoly::monomial(m, n, c));
            }
            Ok(Func::Poly(f))
        }
        "closure" => {
            let name = doc
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| schema("closure needs a string \"name\""))?;
            let params = doc.get("params").cloned().unwrap_or(json!({}));
            match name {
                "pow_one_minus_z" => {
                    let beta = params
                        .get("beta")
                        .and_then(Value::as_f64)
                        .ok_or_else(|| schema("pow_one_minus_z needs numeric params.beta"))?;
                    Ok(Func::Closure(ClosureFn::pow_one_minus_z(beta)))
                }
                "exp_of_bipoly" => {
                    let inner = params
                        .get("bipoly")
                        .ok_or_else(|| schema("exp_of_bipoly needs params.bipoly"))?;
                    Ok(Func::Closure(ClosureFn::exp_of_bipoly(parse_bipoly(inner)?)))
                }
                other => Err(schema(format!("unknown closure {other:?}"))),
            }
        }
        other => Err(schema(format!("unknown kind {other:?}"))),
    }
}
