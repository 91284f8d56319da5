//! Quaternion arithmetic over `f64`.
//!
//! A quaternion `x = x0 + x1 i + x2 j + x3 k` is stored as a scalar part and a
//! 3-vector part. The same type doubles as a point of Euclidean 4-space, with
//! components ordered scalar first.
//!
//! Besides the algebra, this module holds the two charts on unit quaternions
//! used elsewhere in the crate: the polar form `cos α + p sin α` and the Gibbs
//! vector `p tan α`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tol;

/// A vector of Euclidean 3-space, the vector part of a quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Vec3 {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const I: Self = Self::new(1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    /// Checked constructor for untrusted input.
    pub fn try_new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        if x1.is_finite() && x2.is_finite() && x3.is_finite() {
            Ok(Self::new(x1, x2, x3))
        } else {
            Err(Error::NonFinite)
        }
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.x2 * other.x3 - self.x3 * other.x2,
            self.x3 * other.x1 - self.x1 * other.x3,
            self.x1 * other.x2 - self.x2 * other.x1,
        )
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector in the same direction, or `None` for (near) zero vectors.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > tol::EPS_AXIS).then(|| self / n)
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.x1 - other.x1)
            .abs()
            .max((self.x2 - other.x2).abs())
            .max((self.x3 - other.x3).abs())
    }

    #[inline]
    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

impl Add for Vec3 {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Vec3 {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Vec3 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::new(self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

impl Div<f64> for Vec3 {
    type Output = Self;
    #[inline]
    fn div(self, k: f64) -> Self {
        Self::new(self.x1 / k, self.x2 / k, self.x3 / k)
    }
}

/// A real quaternion `s + v`, equivalently a point of Euclidean 4-space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub s: f64,
    pub v: Vec3,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(s: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self {
            s,
            v: Vec3::new(x1, x2, x3),
        }
    }

    #[inline]
    pub const fn from_parts(s: f64, v: Vec3) -> Self {
        Self { s, v }
    }

    #[inline]
    pub const fn pure(v: Vec3) -> Self {
        Self { s: 0.0, v }
    }

    #[inline]
    pub const fn real(s: f64) -> Self {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    /// Components in `[s, x1, x2, x3]` order.
    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn try_from_array(c: [f64; 4]) -> Result<Self> {
        if c.iter().all(|x| x.is_finite()) {
            Ok(Self::from_array(c))
        } else {
            Err(Error::NonFinite)
        }
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.s, self.v.x1, self.v.x2, self.v.x3]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::from_parts(self.s, -self.v)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.s * self.s + self.v.norm_sq()
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Euclidean inner product of the two quaternions viewed as 4-vectors.
    #[inline]
    pub fn dot4(self, other: Self) -> f64 {
        self.s * other.s + self.v.dot(other.v)
    }

    /// `self / |self|`, or `None` when the norm is below `EPS_AXIS`.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > tol::EPS_AXIS).then(|| self * (1.0 / n))
    }

    pub fn is_unit(self) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol::EPS_UNIT
    }

    /// Err with `NotUnit` unless the norm is within `EPS_UNIT` of one.
    pub fn ensure_unit(self) -> Result<Self> {
        if !self.to_array().iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.is_unit() {
            Ok(self)
        } else {
            Err(Error::NotUnit {
                norm_sq: self.norm_sq(),
            })
        }
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.s - other.s).abs().max(self.v.max_abs_diff(other.v))
    }

    /// Distance to `other` modulo the global sign ambiguity `x ~ -x`.
    pub fn max_abs_diff_up_to_sign(self, other: Self) -> f64 {
        self.max_abs_diff(other).min(self.max_abs_diff(-other))
    }
}

/// Quaternion product `xy = SxSy - Vx·Vy + Sx Vy + Sy Vx + Vx × Vy`.
#[inline]
pub fn mul(x: Quaternion, y: Quaternion) -> Quaternion {
    Quaternion::from_parts(
        x.s * y.s - x.v.dot(y.v),
        y.v * x.s + x.v * y.s + x.v.cross(y.v),
    )
}

#[inline]
pub fn conj(x: Quaternion) -> Quaternion {
    x.conj()
}

#[inline]
pub fn norm_sq(x: Quaternion) -> f64 {
    x.norm_sq()
}

#[inline]
pub fn dot4(x: Quaternion, y: Quaternion) -> f64 {
    x.dot4(y)
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        mul(self, rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::from_parts(self.s * k, self.v * k)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::from_parts(self.s + o.s, self.v + o.v)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::from_parts(self.s - o.s, self.v - o.v)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::from_parts(-self.s, -self.v)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(6);
        write!(
            f,
            "{:.p$} {:+.p$}i {:+.p$}j {:+.p$}k",
            self.s,
            self.v.x1,
            self.v.x2,
            self.v.x3,
            p = p
        )
    }
}

/// Polar form `cos(half_angle) + axis sin(half_angle)` of a unit quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    /// In `[0, π]`.
    pub half_angle: f64,
    /// Unit pure quaternion; `Vec3::I` when `axis_degenerate`.
    pub axis: Vec3,
    /// Set for `a = ±1`, where the axis is arbitrary and must not be used.
    pub axis_degenerate: bool,
}

impl PolarForm {
    pub fn to_quaternion(&self) -> Quaternion {
        let (sin, cos) = self.half_angle.sin_cos();
        Quaternion::from_parts(cos, self.axis * sin)
    }
}

/// Polar decomposition of a unit quaternion.
///
/// For `a = ±1` the half angle is `0` or `π` and the axis is reported as `i`
/// with `axis_degenerate` set.
pub fn polar(a: Quaternion) -> Result<PolarForm> {
    let a = a.ensure_unit()?;
    let vn = a.v.norm();
    let half_angle = vn.atan2(a.s);
    if vn <= tol::EPS_AXIS {
        return Ok(PolarForm {
            half_angle: if a.s >= 0.0 {
                0.0
            } else {
                std::f64::consts::PI
            },
            axis: Vec3::I,
            axis_degenerate: true,
        });
    }
    Ok(PolarForm {
        half_angle,
        axis: a.v / vn,
        axis_degenerate: false,
    })
}

/// Gibbs vector `Va / Sa` of a unit quaternion.
pub fn gibbs_from_unit(a: Quaternion) -> Result<Vec3> {
    let a = a.ensure_unit()?;
    if a.s.abs() <= tol::EPS_GIBBS {
        return Err(Error::GibbsSingular { denominator: a.s });
    }
    Ok(a.v / a.s)
}

/// Unit quaternion `(1 + g) / sqrt(1 + |g|²)`; the scalar part is positive.
pub fn unit_from_gibbs(g: Vec3) -> Quaternion {
    let c = 1.0 / (1.0 + g.norm_sq()).sqrt();
    Quaternion::from_parts(c, g * c)
}

/// Gibbs vector of the 3D rotation `g1` followed by `g2`:
/// `(g2 + g1 + g2 × g1) / (1 - g2·g1)`.
pub fn rodrigues_compose(g1: Vec3, g2: Vec3) -> Result<Vec3> {
    let denominator = 1.0 - g2.dot(g1);
    if denominator.abs() <= tol::EPS_GIBBS {
        return Err(Error::GibbsSingular { denominator });
    }
    Ok((g2 + g1 + g2.cross(g1)) / denominator)
}
