//! Differential and integral operators on the unit disk.
//!
//! `∂̄ = p⁺ ∂/∂z + p⁻ ∂/∂z*` and `∂ = p⁺ ∂/∂z* + p⁻ ∂/∂z` act componentwise on
//! [`BiPoly`]. The complex Theodorescu transform
//! `T(g)(z) = −(1/π) ∬_D g(ζ)/(ζ − z) dA(ζ)` has an exact closed form on
//! monomials `ζ^m ζ*^n`, obtained by expanding the Cauchy kernel in the
//! annuli `|ζ| > |z|` and `|ζ| < |z|` and keeping the surviving angular
//! harmonic:
//!
//! ```text
//! T(ζ^m ζ*^n)(z) = (z^m z*^(n+1) − [m > n] z^(m−n−1)) / (n + 1)
//! ```
//!
//! The quadrature route is independent of that derivation: it integrates in
//! polar coordinates centred at the evaluation point, where the Cauchy kernel
//! cancels against the area element, with Gauss–Legendre nodes along each ray
//! and an offset periodic trapezoid rule in the ray angle.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bicomplex::Bicomplex;
use crate::error::{Error, Result};
use crate::funcrep::{BiPoly, CPoly, DiskFunction};

/// `∂̄f`: parts `(∂f⁺/∂z, ∂f⁻/∂z*)`.
pub fn dbar(f: &BiPoly) -> BiPoly {
    BiPoly::from_parts(f.plus.d_dz(), f.minus.d_dzbar())
}

/// `∂f`: parts `(∂f⁺/∂z*, ∂f⁻/∂z)`.
pub fn d(f: &BiPoly) -> BiPoly {
    BiPoly::from_parts(f.plus.d_dzbar(), f.minus.d_dz())
}

/// Closed-form complex transform `T(g)` of a polynomial, as a polynomial.
pub fn t_complex_poly(g: &CPoly) -> CPoly {
    let mut out = CPoly::zero();
    for ((m, n), c) in g.terms() {
        let k = c / (n as f64 + 1.0);
        out.add_term(m, n + 1, k);
        if m > n {
            out.add_term(m - n - 1, 0, -k);
        }
    }
    out
}

/// Conjugate-kernel transform `T*(g) = (T(g*))* = −(1/π) ∬ g(ζ)/(ζ* − z*) dA`.
pub fn t_star_poly(g: &CPoly) -> CPoly {
    t_complex_poly(&g.conj()).conj()
}

/// Which bicomplex Theodorescu operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TbMode {
    /// `(T_B f)⁺ = T*(f⁺)`, `(T_B f)⁻ = T(f⁻)`; a right inverse of `∂̄`.
    #[default]
    ComponentMatched,
    /// Both kernels applied to the full function: `T(f) + T*(f)`.
    Literal,
}

/// Closed-form `T_B(f)` as a polynomial.
pub fn t_bicomplex_poly(f: &BiPoly, mode: TbMode) -> BiPoly {
    match mode {
        TbMode::ComponentMatched => {
            BiPoly::from_parts(t_star_poly(&f.plus), t_complex_poly(&f.minus))
        }
        TbMode::Literal => BiPoly::from_parts(
            t_complex_poly(&f.plus).add(&t_star_poly(&f.plus)),
            t_complex_poly(&f.minus).add(&t_star_poly(&f.minus)),
        ),
    }
}

/// Polar product rule centred at the evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    pub n_r: usize,
    pub n_theta: usize,
    /// Angular offset as a fraction of one cell.
    pub offset: f64,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        QuadratureGrid {
            n_r: 256,
            n_theta: 512,
            offset: 0.5,
        }
    }
}

impl QuadratureGrid {
    pub fn new(n_r: usize, n_theta: usize) -> Result<Self> {
        let g = QuadratureGrid {
            n_r,
            n_theta,
            offset: 0.5,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_r < 8 || self.n_theta < 16 || self.n_theta % 2 != 0 {
            return Err(Error::Precondition(format!(
                "grid {}x{} needs n_r >= 8 and even n_theta >= 16",
                self.n_r, self.n_theta
            )));
        }
        Ok(())
    }

    /// Parse `NRxNT`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::Schema(format!("grid {s:?} is not NRxNT")))?;
        let n_r = a.trim().parse().map_err(|_| Error::Schema(format!("bad n_r in {s:?}")))?;
        let n_t = b.trim().parse().map_err(|_| Error::Schema(format!("bad n_theta in {s:?}")))?;
        QuadratureGrid::new(n_r, n_t)
    }

    pub fn refined(&self) -> Self {
        QuadratureGrid {
            n_r: self.n_r * 2,
            n_theta: self.n_theta * 2,
            offset: self.offset,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on `P_n`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (t * pn - pm) / (t * t - 1.0);
            let step = pn / dp;
            t -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Distance from `z0` to the unit circle along direction `e^{iφ}`.
fn ray_length(z0: Complex64, dir: Complex64) -> f64 {
    let b = (z0.conj() * dir).re;
    let c = 1.0 - z0.norm_sqr();
    // stable root of ρ² + 2bρ − c = 0
    if b <= 0.0 {
        -b + (b * b + c).sqrt()
    } else {
        c / (b + (b * b + c).sqrt())
    }
}

fn check_interior(z0: Complex64) -> Result<()> {
    if z0.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("|z0| = {} is not < 1", z0.norm())))
    }
}

/// `−(1/π) ∬_D g(ζ)/(ζ − z0) dA` (or with the conjugate kernel `1/(ζ* − z0*)`)
/// for a vector of integrands evaluated jointly at each node.
fn cauchy_quadrature_many<G>(g: G, width: usize, z0: Complex64, grid: &QuadratureGrid, conj_kernel: &[bool]) -> Vec<Complex64>
where
    G: Fn(Complex64, &mut [Complex64]) + Sync,
{
    let (xs, ws) = gauss_legendre(grid.n_r);
    let dphi = 2.0 * PI / grid.n_theta as f64;
    let rows: Vec<Vec<Complex64>> = (0..grid.n_theta)
        .into_par_iter()
        .map(|k| {
            let phi = (k as f64 + grid.offset) * dphi;
            let dir = Complex64::from_polar(1.0, phi);
            let len = ray_length(z0, dir);
            let mut vals = vec![Complex64::new(0.0, 0.0); width];
            let mut acc = vec![Complex64::new(0.0, 0.0); width];
            for (x, w) in xs.iter().zip(&ws) {
                let rho = 0.5 * len * (1.0 + x);
                g(z0 + dir * rho, &mut vals);
                for (a, v) in acc.iter_mut().zip(&vals) {
                    *a += v * (0.5 * len * w);
                }
            }
            // dA / (ζ − z0) = e^{−iφ} dρ dφ ; dA / (ζ* − z0*) = e^{iφ} dρ dφ
            acc.iter()
                .zip(conj_kernel)
                .map(|(a, &cj)| if cj { a * dir } else { a * dir.conj() })
                .collect()
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); width];
    for row in &rows {
        for (o, v) in out.iter_mut().zip(row) {
            *o += v;
        }
    }
    out.into_iter().map(|v| v * (-dphi / PI)).collect()
}

/// Quadrature `T(g)(z0)` for an arbitrary integrand.
pub fn t_complex_quadrature<F>(g: F, z0: Complex64, grid: &QuadratureGrid) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    check_interior(z0)?;
    grid.validate()?;
    Ok(cauchy_quadrature_many(|z, out| out[0] = g(z), 1, z0, grid, &[false])[0])
}

/// Quadrature `T*(g)(z0)` for an arbitrary integrand.
pub fn t_star_quadrature<F>(g: F, z0: Complex64, grid: &QuadratureGrid) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    check_interior(z0)?;
    grid.validate()?;
    Ok(cauchy_quadrature_many(|z, out| out[0] = g(z), 1, z0, grid, &[true])[0])
}

/// Quadrature `T(ζ^m ζ*^n)(z0)` for every `m, n ≤ max_deg` in one sweep;
/// entry `[m * (max_deg + 1) + n]`.
pub fn t_complex_monomials_quadrature(max_deg: usize, z0: Complex64, grid: &QuadratureGrid) -> Result<Vec<Complex64>> {
    check_interior(z0)?;
    grid.validate()?;
    let k = max_deg + 1;
    let kinds = vec![false; k * k];
    Ok(cauchy_quadrature_many(
        |z, out| {
            let zc = z.conj();
            let mut zm = Complex64::new(1.0, 0.0);
            for m in 0..k {
                let mut v = zm;
                for n in 0..k {
                    out[m * k + n] = v;
                    v *= zc;
                }
                zm *= z;
            }
        },
        k * k,
        z0,
        grid,
        &kinds,
    ))
}

/// Evaluation route for the transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalMode {
    ClosedForm,
    Quadrature(QuadratureGrid),
}

/// `T(g)(z0)`.
pub fn t_complex(g: &CPoly, z0: Complex64, mode: EvalMode) -> Result<Complex64> {
    check_interior(z0)?;
    match mode {
        EvalMode::ClosedForm => Ok(t_complex_poly(g).eval(z0)),
        EvalMode::Quadrature(grid) => t_complex_quadrature(|z| g.eval(z), z0, &grid),
    }
}

/// `T(g)(z0)` by quadrature, doubling the grid until successive estimates
/// differ by less than `tol`.
pub fn t_complex_adaptive<F>(g: F, z0: Complex64, start: QuadratureGrid, tol: f64, max_doublings: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let mut grid = start;
    let mut prev = t_complex_quadrature(&g, z0, &grid)?;
    let mut change = f64::INFINITY;
    for _ in 0..max_doublings {
        grid = grid.refined();
        let next = t_complex_quadrature(&g, z0, &grid)?;
        change = (next - prev).norm();
        if change < tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureDivergence { tol, change })
}

/// `T_B(f)(z0)` for a polynomial.
pub fn t_bicomplex(f: &BiPoly, z0: Complex64, mode: EvalMode, tb: TbMode) -> Result<Bicomplex> {
    check_interior(z0)?;
    match mode {
        EvalMode::ClosedForm => Ok(t_bicomplex_poly(f, tb).evaluate(z0)),
        EvalMode::Quadrature(grid) => t_bicomplex_quadrature(f, z0, &grid, tb),
    }
}

/// `T_B(f)(z0)` by quadrature for any evaluable function.
pub fn t_bicomplex_quadrature(f: &dyn DiskFunction, z0: Complex64, grid: &QuadratureGrid, tb: TbMode) -> Result<Bicomplex> {
    check_interior(z0)?;
    grid.validate()?;
    let parts = |z: Complex64, out: &mut [Complex64]| {
        let (p, m) = f.eval(z).split();
        out.copy_from_slice(&[p, m, p, m]);
    };
    // [T(f⁺), T(f⁻), T*(f⁺), T*(f⁻)]
    let v = cauchy_quadrature_many(parts, 4, z0, grid, &[false, false, true, true]);
    Ok(match tb {
        TbMode::ComponentMatched => Bicomplex::join(v[2], v[1]),
        TbMode::Literal => Bicomplex::join(v[0] + v[2], v[1] + v[3]),
    })
}

/// `P_r(θ) = (1 − r²) / (1 − 2r cos θ + r²)`.
pub fn poisson_kernel(r: f64, theta: f64) -> f64 {
    (1.0 - r * r) / (1.0 - 2.0 * r * theta.cos() + r * r)
}

/// Boundary data for [`poisson_extend`].
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryTrace {
    /// Values at `θ_k = 2πk/N`, `k = 0..N`.
    Samples(Vec<Bicomplex>),
    /// Bicomplex coefficients `c_k` of `e^{ikθ}`.
    Fourier(Vec<(i64, Bicomplex)>),
}

impl BoundaryTrace {
    pub fn sample<F: DiskFunction + ?Sized>(f: &F, n: usize) -> Self {
        BoundaryTrace::Samples(
            (0..n)
                .map(|k| f.eval(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)))
                .collect(),
        )
    }
}

/// Poisson extension of per-component boundary data to `re^{iθ}`.
///
/// The plus component is paired through its complex conjugate,
/// `p⁺((1/2π)⟨(f⁺)*, P_r(θ−·)⟩)* + p⁻(1/2π)⟨f⁻, P_r(θ−·)⟩`.
pub fn poisson_extend(trace: &BoundaryTrace, r: f64, theta: f64) -> Result<Bicomplex> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Precondition(format!("radius {r} is not in [0, 1)")));
    }
    match trace {
        BoundaryTrace::Samples(vals) => {
            let n = vals.len();
            if n == 0 {
                return Err(Error::Precondition("empty boundary trace".into()));
            }
            let mut plus = Complex64::new(0.0, 0.0);
            let mut minus = Complex64::new(0.0, 0.0);
            for (k, v) in vals.iter().enumerate() {
                let t = 2.0 * PI * k as f64 / n as f64;
                let kern = poisson_kernel(r, theta - t);
                let (p, m) = v.split();
                plus += p.conj() * kern;
                minus += m * kern;
            }
            let s = 1.0 / n as f64;
            Ok(Bicomplex::join((plus * s).conj(), minus * s))
        }
        BoundaryTrace::Fourier(coeffs) => Ok(coeffs
            .iter()
            .map(|&(k, c)| c * Complex64::from_polar(r.powi(k.unsigned_abs() as i32), k as f64 * theta))
            .sum()),
    }
}

/// Which first-order operator [`fd_apply`] realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wirtinger {
    Dbar,
    D,
}

/// Centered finite-difference stencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdStencil {
    pub order: usize,
    pub h: f64,
}

impl Default for FdStencil {
    fn default() -> Self {
        FdStencil { order: 6, h: 1e-3 }
    }
}

impl FdStencil {
    pub fn new(order: usize, h: f64) -> Result<Self> {
        if !matches!(order, 2 | 4 | 6) || !(h > 0.0) {
            return Err(Error::Precondition(format!(
                "stencil order {order} must be 2, 4 or 6 and h {h} positive"
            )));
        }
        Ok(FdStencil { order, h })
    }

    /// Weights for offsets `1..=order/2` (antisymmetric).
    fn weights(&self) -> &'static [f64] {
        match self.order {
            2 => &[0.5],
            4 => &[2.0 / 3.0, -1.0 / 12.0],
            _ => &[0.75, -0.15, 1.0 / 60.0],
        }
    }

    fn fits(&self, z0: Complex64) -> bool {
        let reach = self.h * (self.order / 2) as f64;
        let i = Complex64::new(0.0, 1.0);
        [z0 + reach, z0 - reach, z0 + i * reach, z0 - i * reach]
            .iter()
            .all(|p| p.norm() < 1.0)
    }
}

/// `½(∂x ± j∂y)f` at `z0` by centered differences.
pub fn fd_apply<F: DiskFunction + ?Sized>(f: &F, which: Wirtinger, z0: Complex64, stencil: FdStencil) -> Result<Bicomplex> {
    if !stencil.fits(z0) {
        return Err(Error::StencilOutOfDomain(format!(
            "z0 = {z0}, order {}, h = {}",
            stencil.order, stencil.h
        )));
    }
    let h = stencil.h;
    let mut fx = Bicomplex::ZERO;
    let mut fy = Bicomplex::ZERO;
    for (k, &w) in stencil.weights().iter().enumerate() {
        let s = (k + 1) as f64 * h;
        fx += (f.eval(z0 + s) - f.eval(z0 - s)) * w;
        fy += (f.eval(z0 + Complex64::new(0.0, s)) - f.eval(z0 - Complex64::new(0.0, s))) * w;
    }
    let fx = fx / h;
    let fy = fy / h;
    Ok(match which {
        Wirtinger::Dbar => (fx + Bicomplex::J * fy) * 0.5,
        Wirtinger::D => (fx - Bicomplex::J * fy) * 0.5,
    })
}

/// [`fd_apply`], halving `h` until the stencil fits and then combining the
/// last two step sizes by Richardson extrapolation.
pub fn fd_apply_auto<F: DiskFunction + ?Sized>(f: &F, which: Wirtinger, z0: Complex64, stencil: FdStencil) -> Result<Bicomplex> {
    if stencil.fits(z0) {
        return fd_apply(f, which, z0, stencil);
    }
    let mut s = stencil;
    for _ in 0..40 {
        s.h *= 0.5;
        if s.fits(z0) {
            let coarse = fd_apply(f, which, z0, s)?;
            let fine = fd_apply(f, which, z0, FdStencil { h: s.h * 0.5, ..s })?;
            let gain = 2f64.powi(s.order as i32);
            return Ok((fine * gain - coarse) / (gain - 1.0));
        }
    }
    Err(Error::StencilOutOfDomain(format!("z0 = {z0} is on the boundary")))
}
