//! Seeded generators for randomized checks.
//!
//! Every case draws from its own ChaCha8 stream: the seed selects the key and
//! the case index selects the stream, so a single failing case can be replayed
//! with `case_rng(seed, index)` without rerunning the ones before it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicomplex::Bicomplex;
use crate::funcrep::{BiPoly, CPoly};

pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

pub fn uniform(rng: &mut impl Rng, scale: f64) -> f64 {
    rng.random_range(-scale..=scale)
}

pub fn complex(rng: &mut impl Rng, scale: f64) -> Complex64 {
    Complex64::new(uniform(rng, scale), uniform(rng, scale))
}

pub fn bicomplex(rng: &mut impl Rng, scale: f64) -> Bicomplex {
    Bicomplex::new(
        uniform(rng, scale),
        uniform(rng, scale),
        uniform(rng, scale),
        uniform(rng, scale),
    )
}

/// Uniform point in the disk of radius `rmax`.
pub fn disk_point(rng: &mut impl Rng, rmax: f64) -> Complex64 {
    let r = rmax * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

/// Dense random polynomial with `m ≤ max_m`, `n ≤ max_n`; the coefficient
/// of `z^m z*^n` is uniform in a box of half-width `scale / (1 + m + n)`.
pub fn bipoly(rng: &mut impl Rng, max_m: usize, max_n: usize, scale: f64) -> BiPoly {
    let mut f = BiPoly::zero();
    for m in 0..=max_m {
        for n in 0..=max_n {
            let s = scale / (1 + m + n) as f64;
            f = f.add(&BiPoly::monomial(m, n, bicomplex(rng, s)));
        }
    }
    f
}

/// Random `B`-holomorphic polynomial: plus part in `z*`, minus part in `z`.
pub fn holomorphic(rng: &mut impl Rng, deg: usize, scale: f64) -> BiPoly {
    let mut plus = CPoly::zero();
    let mut minus = CPoly::zero();
    for k in 0..=deg {
        let s = scale / (1 + k) as f64;
        plus.add_term(0, k, complex(rng, s));
        minus.add_term(k, 0, complex(rng, s));
    }
    BiPoly::from_parts(plus, minus)
}

/// Deterministic probe set: a sunflower spiral filling `|z| ≤ rmax`.
pub fn spiral_probes(n: usize, rmax: f64) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let r = rmax * ((k as f64 + 0.5) / n as f64).sqrt();
            Complex64::from_polar(r, golden * k as f64)
        })
        .collect()
}
