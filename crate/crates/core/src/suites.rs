//! Deterministic invariant suites behind `bivek check`.
//!
//! Each invariant draws case `k` from `case_rng(seed, (id << 32) | k)`, where
//! `id` is the invariant's fixed stream id, so a reported failure can be
//! replayed alone. Reports contain no timings and serialize identically for
//! identical inputs.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bicomplex::{Bicomplex, ConjKind};
use crate::calculus::{self, BoundaryTrace, FdStencil, QuadratureGrid, TbMode, Wirtinger};
use crate::decomp::{self, Mode};
use crate::error::{Error, Result};
use crate::funcrep::{BiPoly, CPoly, ClosureFn, Func};
use crate::hardy::{self, StolzPath, TrigPoly};
use crate::random::{self, case_rng, spiral_probes};
use crate::vekua::{self, VekuaProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Algebra,
    Toperator,
    Vekua,
    Decomp,
    Hardy,
    All,
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "algebra" => SuiteName::Algebra,
            "toperator" => SuiteName::Toperator,
            "vekua" => SuiteName::Vekua,
            "decomp" => SuiteName::Decomp,
            "hardy" => SuiteName::Hardy,
            "all" => SuiteName::All,
            other => return Err(Error::Schema(format!("unknown suite {other:?}"))),
        })
    }
}

impl SuiteName {
    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Algebra => "algebra",
            SuiteName::Toperator => "toperator",
            SuiteName::Vekua => "vekua",
            SuiteName::Decomp => "decomp",
            SuiteName::Hardy => "hardy",
            SuiteName::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteConfig {
    #[serde(serialize_with = "serialize_tb")]
    pub tb: TbMode,
    pub conj: ConjKind,
    #[serde(serialize_with = "serialize_grid")]
    pub grid: QuadratureGrid,
    pub fd_order: usize,
    pub degree_cap: usize,
    /// Solver and class-membership tolerance.
    pub tol: f64,
}

fn serialize_tb<S: serde::Serializer>(tb: &TbMode, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match tb {
        TbMode::ComponentMatched => "component_matched",
        TbMode::Literal => "literal",
    })
}

fn serialize_grid<S: serde::Serializer>(g: &QuadratureGrid, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}x{}", g.n_r, g.n_theta))
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tb: TbMode::ComponentMatched,
            conj: ConjKind::BarIj,
            grid: QuadratureGrid::default(),
            fd_order: 6,
            degree_cap: vekua::DEFAULT_FIXED_POINT_CAP,
            tol: 1e-8,
        }
    }
}

impl SuiteConfig {
    fn stencil(&self) -> FdStencil {
        FdStencil::new(self.fd_order, 1e-3).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Passes when the metric is at most the threshold.
    Upper,
    /// Passes when the metric is at least the threshold.
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub name: String,
    pub anchor: String,
    pub bound: Bound,
    pub threshold: f64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Largest metric for upper bounds, smallest for lower bounds.
    pub worst: Option<f64>,
    /// Labels of the first failing cases.
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

const MAX_LISTED: usize = 8;

impl InvariantReport {
    fn new(name: &str, anchor: &str, bound: Bound, threshold: f64) -> Self {
        InvariantReport {
            name: name.into(),
            anchor: anchor.into(),
            bound,
            threshold,
            cases: 0,
            passed: 0,
            failed: 0,
            worst: None,
            failures: Vec::new(),
            skipped: None,
        }
    }

    fn upper(name: &str, anchor: &str, threshold: f64) -> Self {
        Self::new(name, anchor, Bound::Upper, threshold)
    }

    fn lower(name: &str, anchor: &str, threshold: f64) -> Self {
        Self::new(name, anchor, Bound::Lower, threshold)
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.skipped = Some(reason.into());
        self
    }

    fn tally(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(label());
            }
        }
    }

    /// Record a metric compared against the threshold; NaN fails.
    fn record(&mut self, metric: f64, label: impl FnOnce() -> String) {
        let ok = match self.bound {
            Bound::Upper => metric <= self.threshold,
            Bound::Lower => metric >= self.threshold,
        };
        if !metric.is_nan() {
            self.worst = Some(match (self.worst, self.bound) {
                (None, _) => metric,
                (Some(w), Bound::Upper) => w.max(metric),
                (Some(w), Bound::Lower) => w.min(metric),
            });
        }
        self.tally(ok, label);
    }

    fn record_error(&mut self, err: &Error, label: impl FnOnce() -> String) {
        self.tally(false, || format!("{}: {err}", label()));
    }

    fn record_result(&mut self, metric: Result<f64>, label: impl FnOnce() -> String) {
        match metric {
            Ok(m) => self.record(m, label),
            Err(e) => self.record_error(&e, label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub config: SuiteConfig,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub invariants: Vec<InvariantReport>,
}

impl SuiteReport {
    pub fn invariant(&self, name: &str) -> Option<&InvariantReport> {
        self.invariants.iter().find(|i| i.name == name)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn rng_for(seed: u64, id: u64, case: u64) -> ChaCha8Rng {
    case_rng(seed, (id << 32) | case)
}

fn rel(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

/// Slack for comparisons that hold exactly in real arithmetic.
const ROUNDING: f64 = 1e-14;

// ---------------------------------------------------------------- algebra

pub const ALGEBRA_PAIRS: usize = 100_000;

pub fn algebra_suite(seed: u64) -> Vec<InvariantReport> {
    let mut recon = InvariantReport::upper(
        "idempotent_reconstruction",
        "w = p⁺w⁺ + p⁻w⁻ and join(split(w)) = w, error relative to ‖w‖",
        1e-12,
    );
    let mut norms = InvariantReport::upper(
        "norm_formulas_agree",
        "sqrt((|w⁺|² + |w⁻|²)/2) equals the Euclidean norm of (a, b, c, d)",
        1e-12,
    );
    let mut sandwich = InvariantReport::upper(
        "norm_sandwich",
        "|w±|/√2 ≤ ‖w‖ ≤ (|w⁺| + |w⁻|)/√2; metric is the largest lhs/rhs − 1",
        ROUNDING,
    );
    let mut submult = InvariantReport::upper(
        "submultiplicative",
        "‖wv‖ ≤ √2‖w‖‖v‖; metric is ‖wv‖/(√2‖w‖‖v‖) − 1",
        ROUNDING,
    );
    let mut witness = InvariantReport::upper(
        "submultiplicative_equality",
        "‖p⁺p⁺‖ = √2‖p⁺‖²",
        ROUNDING,
    );
    let mut exp_hom = InvariantReport::upper(
        "exp_homomorphism",
        "exp(w + v) = exp(w)exp(v) and exp(w)⁻¹ = exp(−w), relative error",
        1e-12,
    );
    let mut conj = InvariantReport::upper(
        "conjugation_involutions",
        "each conjugation is an involution and bar_ij = bar_i ∘ bar_j",
        0.0,
    );
    let mut linear = InvariantReport::upper(
        "linearity",
        "w(v + u) = wv + wu and split is additive, relative error",
        1e-13,
    );

    let p = Bicomplex::P_PLUS;
    witness.record((p * p).norm() / (SQRT_2 * p.norm() * p.norm()) - 1.0, || "p⁺".into());

    for case in 0..ALGEBRA_PAIRS as u64 {
        let mut rng = rng_for(seed, 1, case);
        let mag = |rng: &mut ChaCha8Rng| 10f64.powf(rng.random_range(-3.0..3.0));
        let w = random::bicomplex(&mut rng, 1.0) * mag(&mut rng);
        let v = random::bicomplex(&mut rng, 1.0) * mag(&mut rng);
        let u = random::bicomplex(&mut rng, 1.0) * mag(&mut rng);
        let label = || format!("case {case}: w={w} v={v}");

        let (wp, wm) = w.split();
        let idem = Bicomplex::P_PLUS * Bicomplex::from_complex(wp) + Bicomplex::P_MINUS * Bicomplex::from_complex(wm);
        let e = (idem - w).norm().max((Bicomplex::join(wp, wm) - w).norm());
        recon.record(rel(e, w.norm()), label);

        norms.record(rel((w.norm() - w.euclidean_norm()).abs(), w.norm()), label);

        let n = w.norm();
        let s = [
            wp.norm() * FRAC_1_SQRT_2 / n - 1.0,
            wm.norm() * FRAC_1_SQRT_2 / n - 1.0,
            n / ((wp.norm() + wm.norm()) * FRAC_1_SQRT_2) - 1.0,
        ];
        sandwich.record(s.iter().copied().fold(f64::MIN, f64::max), label);

        submult.record((w * v).norm() / (SQRT_2 * w.norm() * v.norm()) - 1.0, label);

        // exponentials on the unit box keep the values well scaled
        let (ws, vs) = (w * (1.0 / w.norm()), v * (1.0 / v.norm()));
        let lhs = (ws + vs).exp();
        let e1 = rel((lhs - ws.exp() * vs.exp()).norm(), lhs.norm());
        let e2 = match ws.exp().inverse() {
            Ok(inv) => rel((inv - (-ws).exp()).norm(), (-ws).exp().norm()),
            Err(_) => f64::INFINITY,
        };
        exp_hom.record(e1.max(e2), label);

        let mut cd: f64 = 0.0;
        for kind in [ConjKind::BarJ, ConjKind::BarI, ConjKind::BarIj] {
            cd = cd.max((w.conj(kind).conj(kind) - w).norm());
        }
        cd = cd.max((w.conj(ConjKind::BarJ).conj(ConjKind::BarI) - w.conj(ConjKind::BarIj)).norm());
        conj.record(cd, label);

        let d = (w * (v + u) - (w * v + w * u)).norm();
        let scale = w.norm() * (v.norm() + u.norm());
        let (sp, sm) = (w + v).split();
        let sd = (sp - wp - v.plus()).norm().max((sm - wm - v.minus()).norm());
        linear.record(rel(d, scale).max(rel(sd, w.norm() + v.norm())), label);
    }
    vec![recon, norms, sandwich, submult, witness, exp_hom, conj, linear]
}

// -------------------------------------------------------------- toperator

/// Monomials `ζ^m ζ*^n` with unit coefficients on both components, `m, n ≤ 8`.
fn right_inverse_cases() -> Vec<(String, BiPoly)> {
    let mut out = vec![("zbar_embed".to_string(), BiPoly::zbar_embed())];
    for m in 0..=8 {
        for n in 0..=8 {
            out.push((format!("monomial({m},{n})"), BiPoly::monomial(m, n, Bicomplex::ONE)));
            out.push((format!("monomial({m},{n})·j"), BiPoly::monomial(m, n, Bicomplex::J)));
        }
    }
    out
}

pub fn right_inverse(seed: u64, cfg: &SuiteConfig) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "right_inverse",
        "∂̄ T_B f = f coefficientwise for bidegree ≤ (8, 8)",
        1e-12,
    );
    for (label, f) in right_inverse_cases() {
        let g = calculus::dbar(&calculus::t_bicomplex_poly(&f, cfg.tb));
        rep.record(g.max_coeff_diff(&f), || label);
    }
    for case in 0..20u64 {
        let mut rng = rng_for(seed, 10, case);
        let f = random::bipoly(&mut rng, 8, 8, 1.0);
        let g = calculus::dbar(&calculus::t_bicomplex_poly(&f, cfg.tb));
        rep.record(g.max_coeff_diff(&f), || format!("random bidegree (8,8), case {case}"));
    }
    rep
}

/// Same identity with `T_B` by quadrature and `∂̄` by finite differences.
pub fn right_inverse_quadrature(cfg: &SuiteConfig) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "right_inverse_quadrature",
        "∂̄ T_B f = f with T_B by quadrature and ∂̄ by finite differences",
        1e-6,
    );
    let cases = [
        ("one", BiPoly::constant(Bicomplex::ONE)),
        ("z_embed", BiPoly::z_embed()),
        ("zbar_embed", BiPoly::zbar_embed()),
        ("hat_zbar", BiPoly::hat_zbar()),
    ];
    let probes = [
        Complex64::new(0.3, 0.2),
        Complex64::new(-0.5, 0.1),
        Complex64::new(0.1, -0.6),
    ];
    let stencil = cfg.stencil();
    for (name, f) in cases {
        let (grid, tb) = (cfg.grid, cfg.tb);
        let fq = f.clone();
        let tf = ClosureFn::new("T_B quadrature", move |z| {
            calculus::t_bicomplex_quadrature(&fq, z, &grid, tb).unwrap_or(Bicomplex::new(f64::NAN, 0.0, 0.0, 0.0))
        });
        for z in probes {
            let r = calculus::fd_apply(&tf, Wirtinger::Dbar, z, stencil).map(|d| (d - f.evaluate(z)).norm());
            rep.record_result(r, || format!("{name} at {z}"));
        }
    }
    rep
}

pub const ORACLE_POINTS: usize = 50;
pub const ORACLE_MAX_DEG: usize = 4;

pub fn oracle_agreement(seed: u64, cfg: &SuiteConfig) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "oracle_agreement",
        "closed-form T(ζ^m ζ*^n) equals polar quadrature, m, n ≤ 4, |z| ≤ 0.9",
        1e-6,
    );
    let k = ORACLE_MAX_DEG + 1;
    for case in 0..ORACLE_POINTS as u64 {
        let mut rng = rng_for(seed, 11, case);
        let z0 = random::disk_point(&mut rng, 0.9);
        match calculus::t_complex_monomials_quadrature(ORACLE_MAX_DEG, z0, &cfg.grid) {
            Ok(quad) => {
                for m in 0..k {
                    for n in 0..k {
                        let exact = calculus::t_complex_poly(&CPoly::monomial(m, n, Complex64::new(1.0, 0.0))).eval(z0);
                        rep.record((exact - quad[m * k + n]).norm(), || format!("z0={z0}, m={m}, n={n}"));
                    }
                }
            }
            Err(e) => rep.record_error(&e, || format!("z0={z0}")),
        }
    }
    rep
}

/// Round coefficients to multiples of 2⁻²⁰ so that scaling by small
/// integers is exact in floating point.
fn dyadic(f: &BiPoly) -> BiPoly {
    let round = |x: f64| (x * 1048576.0).round() / 1048576.0;
    let part = |p: &CPoly| CPoly::from_terms(p.terms().map(|(k, c)| (k, Complex64::new(round(c.re), round(c.im)))));
    BiPoly::from_parts(part(&f.plus), part(&f.minus))
}

pub fn mixed_partials(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::upper("mixed_partials", "∂∂̄f = ∂̄∂f exactly (dyadic coefficients)", 0.0);
    for case in 0..50u64 {
        let mut rng = rng_for(seed, 12, case);
        let f = dyadic(&random::bipoly(&mut rng, 6, 6, 1.0));
        let a = calculus::d(&calculus::dbar(&f));
        let b = calculus::dbar(&calculus::d(&f));
        rep.record(a.max_coeff_diff(&b), || format!("case {case}"));
    }
    rep
}

fn sup_on_polar_sample(f: &BiPoly, n_r: usize, n_theta: usize, rmax: f64) -> f64 {
    let mut sup: f64 = 0.0;
    for i in 0..=n_r {
        let r = rmax * i as f64 / n_r as f64;
        for k in 0..n_theta {
            let z = Complex64::from_polar(r, TAU * k as f64 / n_theta as f64);
            sup = sup.max(f.evaluate(z).norm());
        }
    }
    sup
}

pub fn holder_proxy(seed: u64, cfg: &SuiteConfig) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "transform_sup_stable",
        "sup of ‖T_B f‖ over |z| ≤ 0.999 is finite and changes ≤ 1e-4 (relative) under refinement",
        1e-4,
    );
    let mut rng = rng_for(seed, 13, 0);
    let cases = [
        ("one", BiPoly::constant(Bicomplex::ONE)),
        ("hat_zbar", BiPoly::hat_zbar()),
        ("z_embed", BiPoly::z_embed()),
        ("random (3,3)", random::bipoly(&mut rng, 3, 3, 1.0)),
    ];
    for (name, f) in cases {
        let t = calculus::t_bicomplex_poly(&f, cfg.tb);
        let coarse = sup_on_polar_sample(&t, 64, 4096, 0.999);
        let fine = sup_on_polar_sample(&t, 128, 8192, 0.999);
        let metric = if coarse.is_finite() && fine.is_finite() {
            rel((fine - coarse).abs(), fine)
        } else {
            f64::INFINITY
        };
        rep.record(metric, || name.into());
    }
    rep
}

pub const POISSON_NODES: usize = 1024;

pub fn poisson_reproduction(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "poisson_reproduction",
        "Poisson extension of the boundary trace of a holomorphic polynomial of degree ≤ 10 reproduces it, 1024 nodes",
        1e-8,
    );
    let probes = spiral_probes(32, 0.95);
    for case in 0..20u64 {
        let mut rng = rng_for(seed, 14, case);
        let f = random::holomorphic(&mut rng, 10, 1.0);
        let trace = BoundaryTrace::sample(&f, POISSON_NODES);
        let mut worst: f64 = 0.0;
        let mut err = None;
        for &z in &probes {
            match calculus::poisson_extend(&trace, z.norm(), z.arg()) {
                Ok(v) => worst = worst.max((v - f.evaluate(z)).norm()),
                Err(e) => err = Some(e),
            }
        }
        match err {
            Some(e) => rep.record_error(&e, || format!("case {case}")),
            None => rep.record(worst, || format!("case {case}")),
        }
    }
    rep
}

pub fn toperator_suite(seed: u64, cfg: &SuiteConfig) -> Vec<InvariantReport> {
    vec![
        right_inverse(seed, cfg),
        right_inverse_quadrature(cfg),
        oracle_agreement(seed, cfg),
        mixed_partials(seed),
        holder_proxy(seed, cfg),
        poisson_reproduction(seed),
    ]
}

// ------------------------------------------------------------------ vekua

pub const SIMILARITY_CASES: usize = 50;
pub const SIMILARITY_PROBES: usize = 100;

pub fn similarity_residual(seed: u64, cfg: &SuiteConfig) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "similarity_residual",
        "φ·exp(T_B A) solves ∂̄w = Aw; FD residual at 100 probes with |z| ≤ 0.9",
        1e-7,
    );
    let probes = spiral_probes(SIMILARITY_PROBES, 0.9);
    for case in 0..SIMILARITY_CASES as u64 {
        let mut rng = rng_for(seed, 20, case);
        let a = random::bipoly(&mut rng, 3, 3, 1.0);
        let phi = random::holomorphic(&mut rng, 5, 1.0);
        let metric = (|| {
            let problem = VekuaProblem::new(a.clone(), BiPoly::zero(), cfg.conj, vekua::DEFAULT_FIXED_POINT_CAP)?;
            let w = vekua::solve_similarity(&a, &phi)?;
            vekua::residual(&problem, &Func::Closure(w), &probes, cfg.stencil())
        })();
        rep.record_result(metric, || format!("case {case}"));
    }
    rep
}

pub fn nonvanishing_factor(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::lower(
        "similarity_factor_invertible",
        "exp(T_B A) is not a zero divisor; metric is the smallest component modulus",
        f64::MIN_POSITIVE,
    );
    let probes = spiral_probes(SIMILARITY_PROBES, 0.9);
    for case in 0..SIMILARITY_CASES as u64 {
        let mut rng = rng_for(seed, 20, case);
        let a = random::bipoly(&mut rng, 3, 3, 1.0);
        let factor = vekua::similarity_factor(&a);
        let mut least = f64::INFINITY;
        for &z in &probes {
            let v = factor.evaluate(z);
            let m = if v.is_zero_divisor() { 0.0 } else { v.plus().norm().min(v.minus().norm()) };
            least = least.min(m);
        }
        rep.record(least, || format!("case {case}"));
    }
    rep
}

/// Exact polynomial solutions from the zero-divisor family: on each
/// component either the coefficients vanish and the solution is any
/// holomorphic part, or the solution part vanishes.
fn zero_divisor_instance(rng: &mut ChaCha8Rng, with_b: bool) -> (BiPoly, BiPoly, BiPoly) {
    let mut a = BiPoly::zero();
    let mut b = BiPoly::zero();
    let mut phi = random::holomorphic(rng, 3, 1.0);
    let coeff_side = |rng: &mut ChaCha8Rng| random::bipoly(rng, 1, 1, 1.0);
    if rng.random_bool(0.5) {
        a.plus = coeff_side(rng).plus;
        if with_b {
            b.plus = coeff_side(rng).plus;
        }
        phi.plus = CPoly::zero();
    }
    if rng.random_bool(0.5) {
        a.minus = coeff_side(rng).minus;
        if with_b {
            b.minus = coeff_side(rng).minus;
        }
        phi.minus = CPoly::zero();
    }
    (a, b, phi)
}

pub const DECOUPLE_CASES: usize = 50;

pub fn decoupling(seed: u64, cfg: &SuiteConfig) -> InvariantReport {
    let rep = InvariantReport::upper(
        "decoupling_sandwich",
        "component residuals r± and bicomplex residual r satisfy r± ≤ √2·r and r ≤ √2·max(r⁺, r⁻); metric is the largest violation",
        1e-12,
    );
    if cfg.conj != ConjKind::BarIj {
        return rep.skip(format!("decoupling is defined for bar_ij only (got {})", cfg.conj.name()));
    }
    let mut rep = rep;
    let probes = spiral_probes(20, 0.9);
    for case in 0..DECOUPLE_CASES as u64 {
        let mut rng = rng_for(seed, 21, case);
        // even cases: exact solutions; odd cases: arbitrary polynomials
        let (a, b, w) = if case % 2 == 0 {
            zero_divisor_instance(&mut rng, true)
        } else {
            (
                random::bipoly(&mut rng, 2, 2, 1.0),
                random::bipoly(&mut rng, 2, 2, 1.0),
                random::bipoly(&mut rng, 3, 3, 1.0),
            )
        };
        let metric = (|| {
            let problem = VekuaProblem::with_coefficients(a.clone(), b.clone())?;
            let r = vekua::decouple(&problem, &w, &probes)?;
            let mut worst: f64 = 0.0;
            for k in 0..probes.len() {
                let (rp, rm, rb) = (r.plus_residuals[k], r.minus_residuals[k], r.bicomplex_residuals[k]);
                worst = worst
                    .max(rp - SQRT_2 * rb)
                    .max(rm - SQRT_2 * rb)
                    .max(rb - SQRT_2 * rp.max(rm));
            }
            Ok(worst)
        })();
        rep.record_result(metric, || format!("case {case}"));
    }
    rep
}

pub const FIXED_POINT_CASES: usize = 30;
pub const FIXED_POINT_MAX_ITER: usize = 50;

fn small_constant(rng: &mut ChaCha8Rng, max_norm: f64) -> Bicomplex {
    let v = random::bicomplex(rng, 1.0);
    v * (max_norm * rng.random::<f64>() / v.norm())
}

pub fn fixed_point_convergence(seed: u64, cfg: &SuiteConfig) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "fixed_point_convergence",
        "constant ‖A‖, ‖B‖ ≤ 0.1: the truncated fixed point converges within 50 iterations; metric is the residual",
        cfg.tol,
    );
    for case in 0..FIXED_POINT_CASES as u64 {
        let mut rng = rng_for(seed, 22, case);
        let a = BiPoly::constant(small_constant(&mut rng, 0.1));
        let b = BiPoly::constant(small_constant(&mut rng, 0.1));
        let phi = random::holomorphic(&mut rng, 3, 1.0);
        let metric = (|| {
            let problem = VekuaProblem::new(a.clone(), b.clone(), cfg.conj, cfg.degree_cap)?;
            let r = vekua::solve_fixed_point(&problem, &phi, FIXED_POINT_MAX_ITER, cfg.tol)?;
            Ok(if r.converged { r.residual_sup } else { f64::INFINITY })
        })();
        rep.record_result(metric, || format!("case {case}"));
    }
    rep
}

pub fn fixed_point_vs_similarity(seed: u64, cfg: &SuiteConfig) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "fixed_point_matches_similarity",
        "B = 0, constant A and φ: fixed-point and similarity solutions agree at 20 probes",
        1e-6,
    );
    let probes = spiral_probes(20, 0.9);
    for case in 0..FIXED_POINT_CASES as u64 {
        let mut rng = rng_for(seed, 23, case);
        let a = BiPoly::constant(small_constant(&mut rng, 0.1));
        let phi = BiPoly::constant(random::bicomplex(&mut rng, 1.0));
        let metric = (|| {
            let problem = VekuaProblem::new(a.clone(), BiPoly::zero(), cfg.conj, cfg.degree_cap)?;
            let fp = vekua::solve_fixed_point(&problem, &phi, FIXED_POINT_MAX_ITER, cfg.tol)?;
            let sim = vekua::solve_similarity(&a, &phi)?;
            Ok(probes
                .iter()
                .map(|&z| (fp.solution.evaluate(z) - sim.evaluate(z)).norm())
                .fold(0.0, f64::max))
        })();
        rep.record_result(metric, || format!("case {case}"));
    }
    rep
}

pub fn hardy_comparability(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "hardy_comparability",
        "∫‖φe^s‖^p ≤ 2^{p/2} M^p ∫‖φ‖^p with M the computed sup of ‖e^s‖; metric is lhs/rhs",
        1.0 + ROUNDING,
    );
    let radii = hardy::radii_schedule(6);
    let n = 512;
    for case in 0..10u64 {
        let mut rng = rng_for(seed, 24, case);
        let a = random::bipoly(&mut rng, 2, 2, 1.0);
        let phi = random::holomorphic(&mut rng, 4, 1.0);
        let factor = vekua::similarity_factor(&a);
        let w = match vekua::solve_similarity(&a, &phi) {
            Ok(w) => w,
            Err(e) => {
                rep.record_error(&e, || format!("case {case}"));
                continue;
            }
        };
        let m = radii.iter().map(|&r| hardy::circle_sup(&factor, r, n)).fold(0.0, f64::max);
        for p in [1.0, 2.0] {
            let mut worst: f64 = 0.0;
            for &r in &radii {
                let lhs = hardy::circle_lp(&w, r, p, n);
                let rhs = hardy::circle_lp(&phi, r, p, n);
                if let (Ok(l), Ok(q)) = (lhs, rhs) {
                    let bound = 2f64.powf(p / 2.0) * m.powf(p) * q;
                    worst = worst.max(if bound > 0.0 { l / bound } else { l });
                }
            }
            rep.record(worst, || format!("case {case}, p={p}"));
        }
    }
    rep
}

pub fn vekua_suite(seed: u64, cfg: &SuiteConfig) -> Vec<InvariantReport> {
    vec![
        similarity_residual(seed, cfg),
        nonvanishing_factor(seed),
        decoupling(seed, cfg),
        fixed_point_convergence(seed, cfg),
        fixed_point_vs_similarity(seed, cfg),
        hardy_comparability(seed),
    ]
}

// ----------------------------------------------------------------- decomp

pub const DECOMP_SEEDS: usize = 100;
pub const DECOMP_MAX_ORDER: usize = 5;

/// One decomposition instance: coefficients solving the mode's first-order
/// equation, and whether they are exact polynomial solutions.
pub struct DecompInstance {
    pub mode: Mode,
    pub a: BiPoly,
    pub b: BiPoly,
    pub coeffs: Vec<BiPoly>,
    pub exact: bool,
}

/// Even seeds (and every poly-mode seed) use the exact zero-divisor family;
/// odd meta/hoiv seeds use fixed-point solutions with small constant coefficients.
pub fn decomp_instance(seed: u64, case: u64, mode: Mode, n: usize) -> Result<DecompInstance> {
    let mut rng = rng_for(seed, 30, case);
    let exact = mode == Mode::Poly || case % 2 == 0;
    let with_b = mode == Mode::Hoiv;
    if exact {
        let (a, b, _) = zero_divisor_instance(&mut rng, with_b);
        let plus_free = a.plus.is_zero() && b.plus.is_zero();
        let minus_free = a.minus.is_zero() && b.minus.is_zero();
        let coeffs = (0..n)
            .map(|_| {
                let mut phi = random::holomorphic(&mut rng, 3, 1.0);
                if mode != Mode::Poly {
                    if !plus_free {
                        phi.plus = CPoly::zero();
                    }
                    if !minus_free {
                        phi.minus = CPoly::zero();
                    }
                }
                phi
            })
            .collect();
        let (a, b) = if mode == Mode::Poly { (BiPoly::zero(), BiPoly::zero()) } else { (a, b) };
        return Ok(DecompInstance { mode, a, b, coeffs, exact: true });
    }
    let a = BiPoly::constant(small_constant(&mut rng, 0.1));
    let b = if with_b { BiPoly::constant(small_constant(&mut rng, 0.1)) } else { BiPoly::zero() };
    let problem = VekuaProblem::new(a.clone(), b.clone(), ConjKind::BarIj, vekua::DEFAULT_FIXED_POINT_CAP)?;
    let mut coeffs = Vec::with_capacity(n);
    for _ in 0..n {
        let h = random::holomorphic(&mut rng, 2, 1.0);
        coeffs.push(vekua::solve_fixed_point(&problem, &h, FIXED_POINT_MAX_ITER, 1e-14)?.solution);
    }
    Ok(DecompInstance { mode, a, b, coeffs, exact: false })
}

fn scale_of(polys: &[BiPoly]) -> f64 {
    1.0 + polys.iter().map(BiPoly::max_coeff_norm).fold(0.0, f64::max)
}

pub fn decomp_suite(seed: u64, cfg: &SuiteConfig) -> Vec<InvariantReport> {
    let mut round_trip = InvariantReport::upper(
        "round_trip",
        "extract(construct(φ₀..φₙ₋₁)) returns the coefficients, n ≤ 5, all modes",
        1e-9,
    );
    let mut nil_exact = InvariantReport::upper(
        "nilpotency_exact",
        "Lⁿ f = 0 for f of order n, exact polynomial coefficients; metric is the largest coefficient",
        0.0,
    );
    let mut nil_numeric = InvariantReport::upper(
        "nilpotency_numerical",
        "Lⁿ f = 0 for f of order n, fixed-point coefficients; sup over probes",
        // first-order residuals sit at rounding level and each further ∂̄
        // scales them by up to the bidegree (about 10)
        1e-10,
    );
    let mut expansion = InvariantReport::upper(
        "expansion_identity",
        "Lᵏ f = Σ_{j≥k} j!/(j−k)! bʲ⁻ᵏ φⱼ coefficientwise, relative to the largest coefficient",
        1e-12,
    );
    let mut leibniz = InvariantReport::upper(
        "leibniz_step",
        "L(bᵏ⁺¹φ/(k+1)) = bᵏφ when Lφ = 0, relative to the largest coefficient",
        1e-12,
    );
    let probes = spiral_probes(decomp::DEFAULT_PROBES, 0.9);
    for mode in [Mode::Poly, Mode::Meta, Mode::Hoiv] {
        for s in 0..DECOMP_SEEDS as u64 {
            for n in 1..=DECOMP_MAX_ORDER {
                let case = s * 16 + n as u64;
                let label = || format!("{mode:?} seed-case {s} order {n}");
                let inst = match decomp_instance(seed, case + 1000 * mode as u64, mode, n) {
                    Ok(i) => i,
                    Err(e) => {
                        round_trip.record_error(&e, label);
                        continue;
                    }
                };
                let outcome = (|| -> Result<()> {
                    let basis = mode.basis();
                    let f = decomp::construct(mode, &inst.coeffs, &inst.a, &inst.b, cfg.tol)?;
                    let scale = scale_of(&inst.coeffs);

                    let res = decomp::extract(mode, &f, n, &inst.a, &inst.b, cfg.tol)?;
                    let err = res
                        .coefficients
                        .iter()
                        .zip(&inst.coeffs)
                        .map(|(x, y)| x.max_coeff_diff(y))
                        .fold(0.0, f64::max);
                    round_trip.record(err, label);

                    let (ea, eb) = match mode {
                        Mode::Poly => (BiPoly::zero(), BiPoly::zero()),
                        Mode::Meta => (inst.a.clone(), BiPoly::zero()),
                        Mode::Hoiv => (inst.a.clone(), inst.b.clone()),
                    };
                    let mut lk = f.clone();
                    let mut falling = vec![1.0; n];
                    let mut bpow = vec![BiPoly::constant(Bicomplex::ONE)];
                    for j in 1..n {
                        bpow.push(bpow[j - 1].mul(&basis)?);
                    }
                    for k in 0..=n {
                        if k == n {
                            if inst.exact {
                                nil_exact.record(lk.max_coeff_norm(), label);
                            } else {
                                let sup = probes.iter().map(|&z| lk.evaluate(z).norm()).fold(0.0, f64::max);
                                nil_numeric.record(sup, label);
                            }
                            break;
                        }
                        let mut expect = BiPoly::zero();
                        for j in k..n {
                            expect = expect.add(&bpow[j - k].mul(&inst.coeffs[j])?.scale_real(falling[j]));
                        }
                        expansion.record(lk.max_coeff_diff(&expect) / scale, || format!("{} k={k}", label()));
                        // falling[j] = j!/(j−k−1)! for the next k
                        for (j, fj) in falling.iter_mut().enumerate() {
                            *fj *= j.saturating_sub(k) as f64;
                        }
                        lk = decomp::iterate_op(&lk, &ea, &eb, 1)?;
                    }

                    let k = (case % 4) as usize;
                    let phi = &inst.coeffs[0];
                    let lhs_in = basis.pow(k as u32 + 1)?.mul(phi)?.scale_real(1.0 / (k + 1) as f64);
                    let lhs = decomp::iterate_op(&lhs_in, &ea, &eb, 1)?;
                    let rhs = basis.pow(k as u32)?.mul(phi)?;
                    leibniz.record(lhs.max_coeff_diff(&rhs) / scale, || format!("{} k={k}", label()));
                    Ok(())
                })();
                if let Err(e) = outcome {
                    round_trip.record_error(&e, label);
                }
            }
        }
    }
    vec![round_trip, nil_exact, nil_numeric, expansion, leibniz]
}

// ------------------------------------------------------------------ hardy

pub fn component_sandwich(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "component_sandwich",
        "∫|f±|^p ≤ 2^{p/2}∫‖f‖^p and ∫‖f‖^p ≤ 2^{−p/2}∫(|f⁺|+|f⁻|)^p on one grid; metric is the largest lhs/rhs",
        1.0 + ROUNDING,
    );
    for case in 0..30u64 {
        let mut rng = rng_for(seed, 40, case);
        let f = random::bipoly(&mut rng, 3, 3, 1.0);
        let r = rng.random_range(0.1..0.99);
        for p in [0.5, 1.0, 2.0, 3.0] {
            let (ip, im, isum, inorm) = hardy::component_integrals(&f, r, p, 512);
            let c = 2f64.powf(p / 2.0);
            let m = (ip.max(im) / (c * inorm)).max(inorm / (isum / c));
            rep.record(m, || format!("case {case}, r={r:.4}, p={p}"));
        }
    }
    rep
}

pub fn poisson_consistency(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "poisson_consistency",
        "Poisson extension of the extrapolated distributional boundary value reproduces a B-holomorphic polynomial",
        1e-6,
    );
    let radii = hardy::radii_schedule(10);
    let probes = spiral_probes(10, 0.8);
    for case in 0..10u64 {
        let mut rng = rng_for(seed, 41, case);
        let f = random::holomorphic(&mut rng, 4, 1.0);
        let metric = (|| {
            let trace = hardy::boundary_fourier(&f, 4, &radii)?;
            let mut worst: f64 = 0.0;
            for &z in &probes {
                let v = calculus::poisson_extend(&trace, z.norm(), z.arg())?;
                worst = worst.max((v - f.evaluate(z)).norm());
            }
            Ok(worst)
        })();
        rep.record_result(metric, || format!("case {case}"));
    }
    rep
}

pub fn growth_implies_pairing() -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "growth_implies_pairing",
        "finite growth exponent ⇒ pairings with cos kθ, sin kθ (k ≤ 8) converge; metric is the fitted exponent",
        f64::MAX,
    );
    let radii = hardy::radii_schedule(10);
    for beta in [0.5, 1.0, 2.0] {
        let f = ClosureFn::pow_one_minus_z(beta);
        let alpha = match hardy::growth_fit(&f, &hardy::radii_schedule(12)) {
            Ok(g) => g.alpha,
            Err(e) => {
                rep.record_error(&e, || format!("beta={beta}"));
                continue;
            }
        };
        let mut tests = vec![("1".to_string(), TrigPoly::constant(1.0))];
        for k in 1..=8 {
            tests.push((format!("cos {k}θ"), TrigPoly::cos_k(k)));
            tests.push((format!("sin {k}θ"), TrigPoly::sin_k(k)));
        }
        for (name, t) in tests {
            match hardy::dist_pair(&f, &t, &radii) {
                Ok(_) => rep.record(alpha, || format!("beta={beta}, {name}")),
                Err(e) => rep.record_error(&e, || format!("beta={beta}, {name}")),
            }
        }
    }
    rep
}

pub fn boundary_gap_decay(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "boundary_gap_decay",
        "gap(r) ≤ C(1−r)^{min(p,1)} with C fitted on r ≤ 0.99, and gap nonincreasing for r ≥ 0.9; metric is the worst ratio to the bound",
        1.0,
    );
    let fit_radii: Vec<f64> = (0..10).map(|k| 0.9 + 0.01 * k as f64).collect();
    let check_radii: Vec<f64> = fit_radii.iter().copied().chain((7..=12).map(|k| 1.0 - 0.5f64.powi(k))).collect();
    for case in 0..10u64 {
        let mut rng = rng_for(seed, 42, case);
        let f = random::bipoly(&mut rng, 2, 2, 1.0);
        for p in [0.5, 1.0, 2.0] {
            let q: f64 = f64::min(p, 1.0);
            let gaps: Result<Vec<f64>> = check_radii.iter().map(|&r| hardy::boundary_gap(&f, p, r, 1024)).collect();
            let gaps = match gaps {
                Ok(g) => g,
                Err(e) => {
                    rep.record_error(&e, || format!("case {case}, p={p}"));
                    continue;
                }
            };
            let c = fit_radii
                .iter()
                .zip(&gaps)
                .map(|(r, g)| g / (1.0 - r).powf(q))
                .fold(0.0, f64::max);
            // 10% headroom over the fitted constant
            let mut worst: f64 = 0.0;
            for (r, g) in check_radii.iter().zip(&gaps) {
                let bound = 1.1 * c * (1.0 - r).powf(q);
                worst = worst.max(if bound > 0.0 { g / bound } else { 0.0 });
            }
            let monotone = gaps.windows(2).all(|w| w[1] <= w[0] * (1.0 + ROUNDING));
            rep.record(if monotone { worst } else { f64::INFINITY }, || format!("case {case}, p={p}"));
        }
    }
    rep
}

pub fn stolz_apertures(seed: u64) -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "stolz_aperture_independence",
        "nontangential limits along cones of aperture π/6 and π/3 agree",
        1e-8,
    );
    for case in 0..10u64 {
        let mut rng = rng_for(seed, 43, case);
        let f = random::bipoly(&mut rng, 3, 3, 1.0);
        let theta0 = rng.random_range(0.0..TAU);
        let metric = (|| {
            let a = hardy::stolz_probe(&f, &StolzPath::geometric(theta0, PI / 6.0, 0.5, 14))?;
            let b = hardy::stolz_probe(&f, &StolzPath::geometric(theta0, PI / 3.0, 0.5, 14))?;
            Ok((a.limit - b.limit).norm())
        })();
        rep.record_result(metric, || format!("case {case}, θ0={theta0:.4}"));
    }
    rep
}

pub fn monomial_profile() -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "monomial_profile",
        "zᵏ: (2π − sup)/2π ≤ kp·2⁻¹²·1.1 on r = 1 − 2⁻ᵏ, k ≤ 12; metric is gap/bound",
        1.0,
    );
    let radii = hardy::radii_schedule(hardy::DEFAULT_SCHEDULE_LEN);
    for k in 1..=4usize {
        for p in [0.5, 1.0, 2.0] {
            let f = BiPoly::embed(&CPoly::monomial(k, 0, Complex64::new(1.0, 0.0)));
            let m = hardy::hardy_profile(&f, p, &radii, 256).map(|prof| {
                let gap = (TAU - prof.sup) / TAU;
                let bound = k as f64 * p * 2f64.powi(-12) * 1.1;
                if gap >= -ROUNDING && prof.bounded {
                    gap / bound
                } else {
                    f64::INFINITY
                }
            });
            rep.record_result(m, || format!("k={k}, p={p}"));
        }
    }
    rep
}

pub fn unbounded_flag() -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "unbounded_profile_flag",
        "1/(1−z) has unbounded H² profile; metric is 0 when flagged correctly",
        0.0,
    );
    let radii = hardy::radii_schedule(hardy::DEFAULT_SCHEDULE_LEN);
    let m = hardy::hardy_profile(&ClosureFn::pow_one_minus_z(1.0), 2.0, &radii, hardy::DEFAULT_N_THETA)
        .map(|p| if p.bounded { 1.0 } else { 0.0 });
    rep.record_result(m, || "1/(1-z), p=2".into());
    rep
}

pub fn boundary_gap_slope() -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "boundary_gap_slope",
        "z-embed: log-log slope of gap against 1−r equals p; metric is relative slope error",
        0.01,
    );
    let radii = hardy::radii_schedule(hardy::DEFAULT_SCHEDULE_LEN);
    for p in [0.5, 1.0, 2.0] {
        let gaps: Result<Vec<f64>> = radii
            .iter()
            .map(|&r| hardy::boundary_gap(&BiPoly::z_embed(), p, r, 256))
            .collect();
        let m = gaps.map(|g| {
            let x: Vec<f64> = radii.iter().map(|r| (1.0 - r).ln()).collect();
            let y: Vec<f64> = g.iter().map(|v| v.ln()).collect();
            (least_squares_slope(&x, &y) - p).abs() / p
        });
        rep.record_result(m, || format!("p={p}"));
    }
    rep
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn growth_recovery() -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "growth_exponent_recovery",
        "growth fit of 1/(1−z)^β recovers β, and a polynomial gives 0; metric is |α − β|",
        0.05,
    );
    let radii = hardy::radii_schedule(hardy::DEFAULT_SCHEDULE_LEN);
    for beta in [0.5, 1.0, 2.0] {
        let m = hardy::growth_fit(&ClosureFn::pow_one_minus_z(beta), &radii).map(|g| (g.alpha - beta).abs());
        rep.record_result(m, || format!("beta={beta}"));
    }
    let poly = BiPoly::z_embed().add(&BiPoly::hat_zbar().mul_unchecked(&BiPoly::hat_zbar()));
    let m = hardy::growth_fit(&poly, &radii).map(|g| g.alpha);
    rep.record_result(m, || "polynomial".into());
    rep
}

pub fn pairing_values() -> InvariantReport {
    let mut rep = InvariantReport::upper(
        "pairing_values",
        "⟨z, cos θ⟩ = π, ⟨z, 1⟩ = 0, ⟨c, 1⟩ = 2πc on the boundary",
        1e-8,
    );
    let radii = hardy::radii_schedule(10);
    let c = Bicomplex::new(0.5, -1.0, 2.0, 0.25);
    let cases = [
        ("z, cos θ", BiPoly::z_embed(), TrigPoly::cos_k(1), Bicomplex::real(PI)),
        ("z, 1", BiPoly::z_embed(), TrigPoly::constant(1.0), Bicomplex::ZERO),
        ("c, 1", BiPoly::constant(c), TrigPoly::constant(1.0), c * TAU),
    ];
    for (name, f, t, expect) in cases {
        let m = hardy::dist_pair(&f, &t, &radii).map(|v| (v.limit - expect).norm());
        rep.record_result(m, || name.into());
    }
    rep
}

pub fn hardy_suite(seed: u64) -> Vec<InvariantReport> {
    vec![
        component_sandwich(seed),
        poisson_consistency(seed),
        growth_implies_pairing(),
        boundary_gap_decay(seed),
        stolz_apertures(seed),
        monomial_profile(),
        unbounded_flag(),
        boundary_gap_slope(),
        growth_recovery(),
        pairing_values(),
    ]
}

// ----------------------------------------------------------------- runner

fn prefixed(prefix: &str, list: Vec<InvariantReport>) -> Vec<InvariantReport> {
    list.into_iter()
        .map(|mut r| {
            r.name = format!("{prefix}.{}", r.name);
            r
        })
        .collect()
}

pub fn run_suite(name: SuiteName, seed: u64, cfg: &SuiteConfig) -> SuiteReport {
    let invariants = match name {
        SuiteName::Algebra => algebra_suite(seed),
        SuiteName::Toperator => toperator_suite(seed, cfg),
        SuiteName::Vekua => vekua_suite(seed, cfg),
        SuiteName::Decomp => decomp_suite(seed, cfg),
        SuiteName::Hardy => hardy_suite(seed),
        SuiteName::All => {
            let mut all = prefixed("algebra", algebra_suite(seed));
            all.extend(prefixed("toperator", toperator_suite(seed, cfg)));
            all.extend(prefixed("vekua", vekua_suite(seed, cfg)));
            all.extend(prefixed("decomp", decomp_suite(seed, cfg)));
            all.extend(prefixed("hardy", hardy_suite(seed)));
            all
        }
    };
    let cases = invariants.iter().map(|i| i.cases).sum();
    let passed = invariants.iter().map(|i| i.passed).sum();
    let failed = invariants.iter().map(|i| i.failed).sum();
    SuiteReport {
        suite: name,
        seed,
        config: *cfg,
        cases,
        passed,
        failed,
        invariants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in ["algebra", "toperator", "vekua", "decomp", "hardy", "all"] {
            assert_eq!(s.parse::<SuiteName>().unwrap().name(), s);
        }
        assert!("calculus".parse::<SuiteName>().is_err());
    }

    #[test]
    fn recording_rules() {
        let mut r = InvariantReport::upper("x", "", 1.0);
        r.record(0.5, || "a".into());
        r.record(2.0, || "b".into());
        r.record(f64::NAN, || "c".into());
        assert_eq!((r.cases, r.passed, r.failed), (3, 1, 2));
        assert_eq!(r.worst, Some(2.0));
        assert_eq!(r.failures, vec!["b", "c"]);
        let mut l = InvariantReport::lower("y", "", 1.0);
        l.record(3.0, || "a".into());
        l.record(0.5, || "b".into());
        assert_eq!((l.failed, l.worst), (1, Some(0.5)));
    }

    #[test]
    fn literal_kernel_fails_on_zbar() {
        let cfg = SuiteConfig { tb: TbMode::Literal, ..Default::default() };
        let r = right_inverse(1, &cfg);
        assert!(r.failed > 0);
        assert_eq!(r.failures[0], "zbar_embed");
        let ok = right_inverse(1, &SuiteConfig::default());
        assert_eq!(ok.failed, 0, "{:?}", ok.failures);
    }

    #[test]
    fn decoupling_skips_other_conventions() {
        let cfg = SuiteConfig { conj: ConjKind::BarJ, ..Default::default() };
        let r = decoupling(1, &cfg);
        assert!(r.skipped.is_some());
        assert_eq!(r.cases, 0);
    }
}
