//! Bicomplex numbers `a + i·b + j·c + ij·d` with `i² = j² = −1` and `ij = ji`.
//!
//! Values are stored in the four-real form. The idempotent pair
//! `(w⁺, w⁻)` with `w = p⁺w⁺ + p⁻w⁻`, `p± = ½(1 ± ij)` is computed on demand
//! by [`Bicomplex::split`]; multiplication, the `bar_ij` conjugation and the
//! exponential all act componentwise on that pair.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which bicomplex conjugation to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjKind {
    /// `z1 − j·z2`: swaps the idempotent components.
    BarJ,
    /// `z1* + j·z2*`: swaps and complex-conjugates the components.
    BarI,
    /// `z1* − j·z2*`: complex-conjugates each component in place.
    BarIj,
}

impl ConjKind {
    pub fn name(self) -> &'static str {
        match self {
            ConjKind::BarJ => "bar_j",
            ConjKind::BarI => "bar_i",
            ConjKind::BarIj => "bar_ij",
        }
    }
}

impl std::str::FromStr for ConjKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bar_j" => Ok(ConjKind::BarJ),
            "bar_i" => Ok(ConjKind::BarI),
            "bar_ij" => Ok(ConjKind::BarIj),
            other => Err(Error::Schema(format!("unknown conjugation {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Bicomplex {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Bicomplex = Bicomplex::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Bicomplex = Bicomplex::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Bicomplex = Bicomplex::new(0.0, 0.0, 1.0, 0.0);
    pub const IJ: Bicomplex = Bicomplex::new(0.0, 0.0, 0.0, 1.0);
    /// The idempotent `p⁺ = ½(1 + ij)`.
    pub const P_PLUS: Bicomplex = Bicomplex::new(0.5, 0.0, 0.0, 0.5);
    /// The idempotent `p⁻ = ½(1 − ij)`.
    pub const P_MINUS: Bicomplex = Bicomplex::new(0.5, 0.0, 0.0, -0.5);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Bicomplex { a, b, c, d }
    }

    pub const fn real(x: f64) -> Self {
        Bicomplex::new(x, 0.0, 0.0, 0.0)
    }

    /// Build `z1 + j·z2`.
    pub fn from_sc_vec(z1: Complex64, z2: Complex64) -> Self {
        Bicomplex::new(z1.re, z1.im, z2.re, z2.im)
    }

    /// Embed an `i`-complex number (`plus == minus`).
    pub fn from_complex(z: Complex64) -> Self {
        Bicomplex::new(z.re, z.im, 0.0, 0.0)
    }

    /// Bicomplexification `x + iy ↦ x + jy`.
    pub fn hat(u: Complex64) -> Self {
        Bicomplex::new(u.re, 0.0, u.im, 0.0)
    }

    /// Scalar part `z1`.
    pub fn sc(self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    /// Vector part `z2`.
    pub fn vec(self) -> Complex64 {
        Complex64::new(self.c, self.d)
    }

    /// Idempotent components `(w⁺, w⁻) = (Sc w − i Vec w, Sc w + i Vec w)`.
    pub fn split(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.a + self.d, self.b - self.c),
            Complex64::new(self.a - self.d, self.b + self.c),
        )
    }

    pub fn plus(self) -> Complex64 {
        self.split().0
    }

    pub fn minus(self) -> Complex64 {
        self.split().1
    }

    /// Inverse of [`Bicomplex::split`]: `p⁺·plus + p⁻·minus`.
    pub fn join(plus: Complex64, minus: Complex64) -> Self {
        Bicomplex::new(
            0.5 * (plus.re + minus.re),
            0.5 * (plus.im + minus.im),
            0.5 * (minus.im - plus.im),
            0.5 * (plus.re - minus.re),
        )
    }

    pub fn conj(self, kind: ConjKind) -> Self {
        let Bicomplex { a, b, c, d } = self;
        match kind {
            ConjKind::BarJ => Bicomplex::new(a, b, -c, -d),
            ConjKind::BarI => Bicomplex::new(a, -b, c, -d),
            ConjKind::BarIj => Bicomplex::new(a, -b, -c, d),
        }
    }

    /// `‖w‖_B = sqrt((|w⁺|² + |w⁻|²) / 2)`.
    pub fn norm(self) -> f64 {
        let (p, m) = self.split();
        (0.5 * (p.norm_sqr() + m.norm_sqr())).sqrt()
    }

    /// Euclidean norm of the four real coordinates; equals [`Bicomplex::norm`].
    pub fn euclidean_norm(self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.c == 0.0 && self.d == 0.0
    }

    /// Nonzero with exactly one vanishing idempotent component (exact comparison).
    pub fn is_zero_divisor(self) -> bool {
        let (p, m) = self.split();
        let pz = p.re == 0.0 && p.im == 0.0;
        let mz = m.re == 0.0 && m.im == 0.0;
        pz != mz
    }

    pub fn inverse(self) -> Result<Self> {
        let (p, m) = self.split();
        let pz = p.re == 0.0 && p.im == 0.0;
        let mz = m.re == 0.0 && m.im == 0.0;
        match (pz, mz) {
            (true, true) => Err(Error::Zero),
            (true, false) | (false, true) => Err(Error::ZeroDivisor),
            (false, false) => Ok(Bicomplex::join(p.inv(), m.inv())),
        }
    }

    pub fn exp(self) -> Self {
        let (p, m) = self.split();
        Bicomplex::join(p.exp(), m.exp())
    }

    pub fn powi(self, k: u32) -> Self {
        let (p, m) = self.split();
        Bicomplex::join(p.powu(k), m.powu(k))
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Bicomplex::new(v[0], v[1], v[2], v[3])
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}ij", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Bicomplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bicomplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Bicomplex::from_array)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::new(-self.a, -self.b, -self.c, -self.d)
    }
}

// (z1 + j z2)(u1 + j u2) = (z1 u1 − z2 u2) + j (z1 u2 + z2 u1)
impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, o: Bicomplex) -> Bicomplex {
        let (z1, z2) = (self.sc(), self.vec());
        let (u1, u2) = (o.sc(), o.vec());
        Bicomplex::from_sc_vec(z1 * u1 - z2 * u2, z1 * u2 + z2 * u1)
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, s: f64) -> Bicomplex {
        Bicomplex::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

/// Multiplication by an `i`-complex scalar.
impl Mul<Complex64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, s: Complex64) -> Bicomplex {
        Bicomplex::from_sc_vec(self.sc() * s, self.vec() * s)
    }
}

impl Div<f64> for Bicomplex {
    type Output = Bicomplex;
    fn div(self, s: f64) -> Bicomplex {
        self * (1.0 / s)
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, o: Bicomplex) {
        *self = *self + o;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, o: Bicomplex) {
        *self = *self - o;
    }
}

impl MulAssign for Bicomplex {
    fn mul_assign(&mut self, o: Bicomplex) {
        *self = *self * o;
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<I: Iterator<Item = Bicomplex>>(iter: I) -> Bicomplex {
        iter.fold(Bicomplex::ZERO, |acc, x| acc + x)
    }
}
