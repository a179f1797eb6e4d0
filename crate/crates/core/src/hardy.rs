//! Circle integrals and boundary behaviour of functions `D → B`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bicomplex::Bicomplex;
use crate::calculus::BoundaryTrace;
use crate::error::{Error, Result};
use crate::funcrep::DiskFunction;

pub const DEFAULT_SCHEDULE_LEN: usize = 12;
pub const DEFAULT_N_THETA: usize = 4096;
/// Growth slope of `log ∫‖f‖^p` against `log 1/(1−r)` above which a profile
/// is flagged unbounded.
pub const UNBOUNDED_SLOPE: f64 = 0.25;

/// `r_k = 1 − 2^{−k}`, `k = 1..=len`.
pub fn radii_schedule(len: usize) -> Vec<f64> {
    (1..=len).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
}

fn circle_values<F: DiskFunction + ?Sized>(f: &F, r: f64, n: usize) -> Vec<Bicomplex> {
    (0..n)
        .into_par_iter()
        .map(|k| f.eval(Complex64::from_polar(r, TAU * k as f64 / n as f64)))
        .collect()
}

/// Trapezoid estimate of `∫₀^{2π} ‖f(re^{iθ})‖_B^p dθ`.
pub fn circle_lp<F: DiskFunction + ?Sized>(f: &F, r: f64, p: f64, n_theta: usize) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) || n_theta < 64 || !(p > 0.0) {
        return Err(Error::Precondition(format!(
            "circle_lp needs 0 < r < 1, n_theta >= 64, p > 0 (got r={r}, n={n_theta}, p={p})"
        )));
    }
    let vals = circle_values(f, r, n_theta);
    Ok(vals.iter().map(|v| v.norm().powf(p)).sum::<f64>() * TAU / n_theta as f64)
}

/// `(∫|f⁺|^p, ∫|f⁻|^p, ∫(|f⁺| + |f⁻|)^p, ∫‖f‖_B^p)` on one grid.
pub fn component_integrals<F: DiskFunction + ?Sized>(f: &F, r: f64, p: f64, n_theta: usize) -> (f64, f64, f64, f64) {
    let vals = circle_values(f, r, n_theta);
    let w = TAU / n_theta as f64;
    let mut out = (0.0, 0.0, 0.0, 0.0);
    for v in vals {
        let (a, b) = v.split();
        out.0 += a.norm().powf(p) * w;
        out.1 += b.norm().powf(p) * w;
        out.2 += (a.norm() + b.norm()).powf(p) * w;
        out.3 += v.norm().powf(p) * w;
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct HardyProfile {
    pub p: f64,
    pub radii: Vec<f64>,
    pub circle_values: Vec<f64>,
    pub sup: f64,
    pub bounded: bool,
    pub growth_slope: f64,
}

/// Least-squares slope and intercept of `y` against `x`.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

fn log_growth_slope(radii: &[f64], vals: &[f64]) -> f64 {
    let tail = radii.len().div_ceil(2).max(3).min(radii.len());
    let start = radii.len() - tail;
    if tail < 2 || vals[start..].iter().all(|&v| v == 0.0) {
        return 0.0;
    }
    let x: Vec<f64> = radii[start..].iter().map(|r| (1.0 / (1.0 - r)).ln()).collect();
    let y: Vec<f64> = vals[start..].iter().map(|v| v.max(f64::MIN_POSITIVE).ln()).collect();
    linear_fit(&x, &y).0
}

/// Circle integrals along `radii`; unbounded when they grow like a power of
/// `1/(1 − r)` with exponent above [`UNBOUNDED_SLOPE`] over the outer half.
pub fn hardy_profile<F: DiskFunction + ?Sized>(f: &F, p: f64, radii: &[f64], n_theta: usize) -> Result<HardyProfile> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("radii must be a nonempty increasing list".into()));
    }
    let circle_values = radii
        .iter()
        .map(|&r| circle_lp(f, r, p, n_theta))
        .collect::<Result<Vec<_>>>()?;
    let sup = circle_values.iter().copied().fold(0.0, f64::max);
    let growth_slope = log_growth_slope(radii, &circle_values);
    Ok(HardyProfile {
        p,
        radii: radii.to_vec(),
        circle_values,
        sup,
        bounded: growth_slope <= UNBOUNDED_SLOPE,
        growth_slope,
    })
}

/// `∫₀^{2π} ‖f(e^{iθ}) − f(re^{iθ})‖_B^p dθ`.
pub fn boundary_gap<F: DiskFunction + ?Sized>(f: &F, p: f64, r: f64, n_theta: usize) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) || n_theta < 64 || !(p > 0.0) {
        return Err(Error::Precondition(format!("boundary_gap needs 0 < r < 1, got {r}")));
    }
    let s: f64 = (0..n_theta)
        .into_par_iter()
        .map(|k| {
            let t = TAU * k as f64 / n_theta as f64;
            (f.eval(Complex64::from_polar(1.0, t)) - f.eval(Complex64::from_polar(r, t)))
                .norm()
                .powf(p)
        })
        .collect::<Vec<_>>()
        .iter()
        .sum();
    Ok(s * TAU / n_theta as f64)
}

/// `∫₀^{2π} ‖f(e^{iθ})‖_B^s dθ`, for functions regular up to the boundary.
pub fn boundary_lp<F: DiskFunction + ?Sized>(f: &F, s: f64, n_theta: usize) -> f64 {
    let vals = circle_values(f, 1.0, n_theta);
    vals.iter().map(|v| v.norm().powf(s)).sum::<f64>() * TAU / n_theta as f64
}

/// Points approaching `e^{iθ₀}` inside a cone of half-angle `aperture`.
#[derive(Debug, Clone, PartialEq)]
pub struct StolzPath {
    pub theta0: f64,
    pub aperture: f64,
    pub points: Vec<Complex64>,
}

impl StolzPath {
    /// `z_k = e^{iθ₀}(1 − s_k e^{i·tilt})` with `s_k = 1 − t_k`.
    pub fn tilted(theta0: f64, aperture: f64, tilt: f64, params: &[f64]) -> Self {
        let v = Complex64::from_polar(1.0, theta0);
        let dir = Complex64::from_polar(1.0, tilt);
        StolzPath {
            theta0,
            aperture,
            points: params.iter().map(|&t| v * (1.0 - dir * (1.0 - t))).collect(),
        }
    }

    /// Geometric approach `s_k = s0·2^{−k}`, `k = 0..len`, at half the aperture.
    pub fn geometric(theta0: f64, aperture: f64, s0: f64, len: usize) -> Self {
        let params: Vec<f64> = (0..len).map(|k| 1.0 - s0 * 0.5f64.powi(k as i32)).collect();
        StolzPath::tilted(theta0, aperture, 0.5 * aperture, &params)
    }

    fn vertex(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta0)
    }

    /// Distances `|e^{iθ₀} − z_k|`.
    pub fn distances(&self) -> Vec<f64> {
        let v = self.vertex();
        self.points.iter().map(|z| (v - z).norm()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.aperture > 0.0 && self.aperture < PI / 2.0) {
            return Err(Error::PathInvalid(format!("aperture {} not in (0, π/2)", self.aperture)));
        }
        if self.points.len() < 3 {
            return Err(Error::PathInvalid("need at least three points".into()));
        }
        let v = self.vertex();
        for (k, z) in self.points.iter().enumerate() {
            if z.norm() >= 1.0 {
                return Err(Error::PathInvalid(format!("point {k} = {z} is not in the open disk")));
            }
            // angle between the chord to the vertex and the inward radius
            let angle = ((v - z) / v).arg().abs();
            if angle >= self.aperture {
                return Err(Error::PathInvalid(format!(
                    "point {k} = {z} is {angle:.4} rad off the radius, outside the cone"
                )));
            }
        }
        if self.distances().windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::PathInvalid("points must approach the vertex".into()));
        }
        Ok(())
    }
}

/// Neville extrapolation to `s = 0` of samples `vals[k] ≈ F(s[k])`, using at
/// most `order` previous points per estimate. Returns one extrapolant per
/// sample from index `order` on.
fn neville_to_zero(s: &[f64], vals: &[Bicomplex], order: usize) -> Vec<Bicomplex> {
    let n = vals.len();
    let mut out = Vec::new();
    for i in order..n {
        let lo = i - order;
        let mut t: Vec<Bicomplex> = vals[lo..=i].to_vec();
        for level in 1..=order {
            for j in (level..=order).rev() {
                let sj = s[lo + j];
                let sjl = s[lo + j - level];
                t[j] = t[j] + (t[j] - t[j - 1]) * (sj / (sjl - sj));
            }
        }
        out.push(t[order]);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StolzProbe {
    pub limit: Bicomplex,
    pub oscillation: f64,
}

pub const STOLZ_ORDER: usize = 3;

/// Nontangential limit estimate along a Stolz path.
pub fn stolz_probe<F: DiskFunction + ?Sized>(f: &F, path: &StolzPath) -> Result<StolzProbe> {
    path.validate()?;
    if path.points.len() < STOLZ_ORDER + 3 {
        return Err(Error::PathInvalid(format!("need at least {} points", STOLZ_ORDER + 3)));
    }
    let s = path.distances();
    let vals: Vec<Bicomplex> = path.points.iter().map(|&z| f.eval(z)).collect();
    let ext = neville_to_zero(&s, &vals, STOLZ_ORDER);
    let last = &ext[ext.len() - 3..];
    let mut osc: f64 = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            osc = osc.max((last[i] - last[j]).norm());
        }
    }
    Ok(StolzProbe {
        limit: last[2],
        oscillation: osc,
    })
}

/// Real trigonometric polynomial `a0 + Σ a_k cos kθ + b_k sin kθ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPoly {
    pub a0: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPoly {
    pub fn constant(c: f64) -> Self {
        TrigPoly { a0: c, ..Default::default() }
    }

    pub fn cos_k(k: usize) -> Self {
        if k == 0 {
            return TrigPoly::constant(1.0);
        }
        let mut cos = vec![0.0; k];
        cos[k - 1] = 1.0;
        TrigPoly { a0: 0.0, cos, sin: vec![] }
    }

    pub fn sin_k(k: usize) -> Self {
        let mut sin = vec![0.0; k.max(1)];
        if k > 0 {
            sin[k - 1] = 1.0;
        }
        TrigPoly { a0: 0.0, cos: vec![], sin }
    }

    pub fn degree(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut v = self.a0;
        for (k, c) in self.cos.iter().enumerate() {
            v += c * ((k + 1) as f64 * t).cos();
        }
        for (k, s) in self.sin.iter().enumerate() {
            v += s * ((k + 1) as f64 * t).sin();
        }
        v
    }
}

/// Enough nodes to resolve features at distance `1 − r` from the circle.
fn pairing_nodes(r: f64, degree: usize) -> usize {
    let want = (64.0 / (1.0 - r)).max(16.0 * (degree as f64 + 1.0)).max(256.0);
    (want.min((1 << 22) as f64) as usize).next_power_of_two()
}

/// `∫₀^{2π} f(re^{iθ}) φ(θ) dθ`.
pub fn circle_pairing<F: DiskFunction + ?Sized>(f: &F, test: &TrigPoly, r: f64) -> Bicomplex {
    let n = pairing_nodes(r, test.degree());
    let terms: Vec<Bicomplex> = (0..n)
        .into_par_iter()
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            f.eval(Complex64::from_polar(r, t)) * test.eval(t)
        })
        .collect();
    terms.into_iter().sum::<Bicomplex>() * (TAU / n as f64)
}

pub const PAIRING_ORDER: usize = 2;

#[derive(Debug, Clone, Serialize)]
pub struct Pairing {
    pub limit: Bicomplex,
    pub radii: Vec<f64>,
    pub values: Vec<Bicomplex>,
    pub extrapolants: Vec<Bicomplex>,
}

/// Limit of the circle pairings as `r ↗ 1`, extrapolated to second order in `1 − r`.
pub fn dist_pair<F: DiskFunction + ?Sized>(f: &F, test: &TrigPoly, radii: &[f64]) -> Result<Pairing> {
    if radii.len() < PAIRING_ORDER + 3 || radii.windows(2).any(|w| w[0] >= w[1]) || radii[radii.len() - 1] >= 1.0 {
        return Err(Error::Precondition(format!(
            "dist_pair needs at least {} increasing radii below 1",
            PAIRING_ORDER + 3
        )));
    }
    let values: Vec<Bicomplex> = radii.iter().map(|&r| circle_pairing(f, test, r)).collect();
    let s: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
    let ext = neville_to_zero(&s, &values, PAIRING_ORDER);
    let k = ext.len();
    let d_last = (ext[k - 1] - ext[k - 2]).norm();
    let d_prev = (ext[k - 2] - ext[k - 3]).norm();
    let scale = 1.0 + ext[k - 1].norm();
    if d_last > 1e-6 * scale && d_last > 0.5 * d_prev {
        return Err(Error::ExtrapolationUnstable(d_prev, d_last));
    }
    Ok(Pairing {
        limit: ext[k - 1],
        radii: radii.to_vec(),
        values,
        extrapolants: ext,
    })
}

/// Fourier coefficients `c_k`, `|k| ≤ max_k`, of the distributional boundary
/// value, assembled from pairings with the real tests `cos kθ`, `sin kθ`.
pub fn boundary_fourier<F: DiskFunction + ?Sized>(f: &F, max_k: usize, radii: &[f64]) -> Result<BoundaryTrace> {
    let i = Complex64::new(0.0, 1.0);
    let mut coeffs = vec![(0, dist_pair(f, &TrigPoly::constant(1.0), radii)?.limit / TAU)];
    for k in 1..=max_k {
        let c = dist_pair(f, &TrigPoly::cos_k(k), radii)?.limit;
        let s = dist_pair(f, &TrigPoly::sin_k(k), radii)?.limit;
        coeffs.push((k as i64, (c - s * i) / TAU));
        coeffs.push((-(k as i64), (c + s * i) / TAU));
    }
    Ok(BoundaryTrace::Fourier(coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    pub c: f64,
    pub alpha: f64,
}

pub const GROWTH_N_THETA: usize = 4096;
pub const GROWTH_TAIL: usize = 8;

/// `sup_θ ‖f(re^{iθ})‖_B` on a uniform grid.
pub fn circle_sup<F: DiskFunction + ?Sized>(f: &F, r: f64, n_theta: usize) -> f64 {
    circle_values(f, r, n_theta).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Fit `sup_θ ‖f(re^{iθ})‖_B ≈ C/(1 − r)^α` over the last eight radii.
pub fn growth_fit<F: DiskFunction + ?Sized>(f: &F, radii: &[f64]) -> Result<GrowthFit> {
    if radii.len() < 2 || radii.iter().any(|&r| !(0.0..1.0).contains(&r)) {
        return Err(Error::Precondition("growth_fit needs at least two radii in [0, 1)".into()));
    }
    let tail = &radii[radii.len().saturating_sub(GROWTH_TAIL)..];
    let x: Vec<f64> = tail.iter().map(|r| (1.0 / (1.0 - r)).ln()).collect();
    let y: Vec<f64> = tail
        .iter()
        .map(|&r| circle_sup(f, r, GROWTH_N_THETA).max(f64::MIN_POSITIVE).ln())
        .collect();
    let (slope, intercept) = linear_fit(&x, &y);
    Ok(GrowthFit {
        c: intercept.exp(),
        alpha: slope.max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcrep::{BiPoly, CPoly, ClosureFn};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn circle_lp_examples() {
        let z = BiPoly::z_embed();
        for p in [0.5, 1.0, 2.0, 3.0] {
            for r in [0.2, 0.7, 0.95] {
                let v = circle_lp(&z, r, p, 256).unwrap();
                assert!((v - TAU * r.powf(p)).abs() < 1e-12);
            }
        }
        let cst = Bicomplex::new(0.3, -1.0, 0.2, 0.5);
        let v = circle_lp(&BiPoly::constant(cst), 0.5, 1.5, 128).unwrap();
        assert!((v - TAU * cst.norm().powf(1.5)).abs() < 1e-12);
        let f = BiPoly::from_parts(
            CPoly::monomial(0, 3, c(1.0, 0.0)),
            CPoly::monomial(2, 0, c(1.0, 0.0)),
        );
        let r: f64 = 0.8;
        let v = circle_lp(&f, r, 2.0, 256).unwrap();
        assert!((v - PI * (r.powi(6) + r.powi(4))).abs() < 1e-12);
        assert!(circle_lp(&f, 1.0, 2.0, 256).is_err());
        assert!(circle_lp(&f, 0.5, 2.0, 32).is_err());
    }

    #[test]
    fn profile_examples() {
        let radii = radii_schedule(12);
        let (k, p) = (3usize, 2.0);
        let f = BiPoly::embed(&CPoly::monomial(k, 0, c(1.0, 0.0)));
        let prof = hardy_profile(&f, p, &radii, 256).unwrap();
        assert!(prof.bounded);
        let gap = (TAU - prof.sup) / TAU;
        assert!(gap >= 0.0 && gap <= k as f64 * p * 2f64.powi(-12) * 1.1);

        let pole = ClosureFn::pow_one_minus_z(1.0);
        let prof = hardy_profile(&pole, 2.0, &radii, DEFAULT_N_THETA).unwrap();
        assert!(!prof.bounded, "slope {}", prof.growth_slope);

        let prof = hardy_profile(&BiPoly::zero(), 1.0, &radii, 128).unwrap();
        assert_eq!(prof.sup, 0.0);
        assert!(prof.bounded);
        assert!(hardy_profile(&BiPoly::zero(), 1.0, &[0.5, 0.4], 128).is_err());
    }

    #[test]
    fn boundary_gap_examples() {
        let z = BiPoly::z_embed();
        for p in [0.5, 1.0, 2.0] {
            let g = boundary_gap(&z, p, 0.9, 128).unwrap();
            assert!((g - TAU * 0.1f64.powf(p)).abs() < 1e-12);
        }
        assert_eq!(boundary_gap(&BiPoly::constant(Bicomplex::J), 1.0, 0.5, 128).unwrap(), 0.0);
    }

    #[test]
    fn stolz_examples() {
        let path = StolzPath::geometric(0.0, PI / 4.0, 0.5, 14);
        let p = stolz_probe(&BiPoly::z_embed(), &path).unwrap();
        assert!((p.limit - Bicomplex::ONE).norm() < 1e-12);
        assert!(p.oscillation <= 1e-12);

        let th = 2.1;
        let path = StolzPath::geometric(th, PI / 3.0, 0.5, 14);
        let p = stolz_probe(&BiPoly::hat_zbar(), &path).unwrap();
        assert!((p.limit - Bicomplex::hat(Complex64::from_polar(1.0, -th))).norm() < 1e-12);

        let outside = StolzPath::tilted(0.0, PI / 6.0, PI / 4.0, &[0.5, 0.75, 0.875, 0.9, 0.95, 0.99]);
        assert!(matches!(stolz_probe(&BiPoly::z_embed(), &outside), Err(Error::PathInvalid(_))));
        let mut bad = StolzPath::geometric(0.0, PI / 4.0, 0.5, 8);
        bad.points[3] = c(1.2, 0.0);
        assert!(matches!(bad.validate(), Err(Error::PathInvalid(_))));
    }

    #[test]
    fn pairing_examples() {
        let radii = radii_schedule(10);
        let cst = Bicomplex::new(1.0, -2.0, 0.5, 0.25);
        let v = dist_pair(&BiPoly::constant(cst), &TrigPoly::constant(1.0), &radii).unwrap();
        assert!((v.limit - cst * TAU).norm() < 1e-10);
        let v = dist_pair(&BiPoly::z_embed(), &TrigPoly::cos_k(1), &radii).unwrap();
        assert!((v.limit - Bicomplex::real(PI)).norm() < 1e-8);
        let v = dist_pair(&BiPoly::z_embed(), &TrigPoly::constant(1.0), &radii).unwrap();
        assert!(v.limit.norm() < 1e-12);
    }

    #[test]
    fn pairing_of_pole_has_finite_limit() {
        // (1 − z)^{−1} = Σ z^n, so ⟨f_b, cos kθ⟩ = π for k ≥ 1
        let f = ClosureFn::pow_one_minus_z(1.0);
        let v = dist_pair(&f, &TrigPoly::cos_k(3), &radii_schedule(12)).unwrap();
        assert!((v.limit - Bicomplex::real(PI)).norm() < 1e-7, "{}", v.limit);
    }

    #[test]
    fn unstable_extrapolation_is_reported() {
        // circle means grow like 1/(1 − r)
        let f = ClosureFn::new("blowup", |z: Complex64| Bicomplex::real(1.0 / (1.0 - z.norm())));
        let err = dist_pair(&f, &TrigPoly::constant(1.0), &radii_schedule(10));
        assert!(matches!(err, Err(Error::ExtrapolationUnstable(..))), "{err:?}");
    }

    #[test]
    fn growth_examples() {
        let radii = radii_schedule(12);
        for beta in [0.5, 1.0, 2.0] {
            let g = growth_fit(&ClosureFn::pow_one_minus_z(beta), &radii).unwrap();
            assert!((g.alpha - beta).abs() <= 0.05, "beta {beta}: {g:?}");
        }
        let poly = BiPoly::z_embed().add(&BiPoly::hat_zbar().pow(3).unwrap());
        let g = growth_fit(&poly, &radii).unwrap();
        assert!(g.alpha <= 0.05);
    }

    #[test]
    fn trig_poly_eval() {
        let t = TrigPoly { a0: 0.5, cos: vec![1.0, 0.0, 2.0], sin: vec![0.0, -1.0] };
        let x: f64 = 0.7;
        let expect = 0.5 + x.cos() + 2.0 * (3.0 * x).cos() - (2.0 * x).sin();
        assert!((t.eval(x) - expect).abs() < 1e-15);
        assert_eq!(t.degree(), 3);
    }
}
