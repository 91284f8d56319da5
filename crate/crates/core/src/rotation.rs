//! Rotations `x ↦ a x b` of 4-space given by a pair of unit quaternions.
//!
//! Every rotation of 4-space has this form, and the pair is unique up to the
//! simultaneous sign flip `(a, b) ~ (-a, -b)`. Writing the factors in polar
//! form `a = cos α + p sin α`, `b = cos β + q sin β`, the rotation turns the
//! plane `Sp{p+q, 1-pq}` through `α+β` and the orthogonal plane
//! `Sp{p-q, 1+pq}` through `α-β`. When `p = ±q` those spans collapse and the
//! planes are `Sp{1, p}` and its orthogonal complement instead.
//!
//! From the angles follows the taxonomy used by [`classify`]:
//! `Sa = Sb` gives a simple rotation (one plane fixed pointwise), `a = ±1` or
//! `b = ±1` gives an isoclinic rotation (a Clifford translation, every vector
//! turns through the same angle), and anything else is a double rotation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::oracle::{left_mult_matrix, right_mult_matrix, symmetric_eigen4};
use crate::plane::Plane;
use crate::quat::{conj, mul, polar, Quaternion, Vec3};
use crate::tol;

/// The rotation `x ↦ a x b`.
///
/// Always stored in canonical form: the first component of `a` whose magnitude
/// exceeds `EPS_AXIS` is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation4 {
    a: Quaternion,
    b: Quaternion,
}

impl Rotation4 {
    pub const IDENTITY: Self = Self {
        a: Quaternion::ONE,
        b: Quaternion::ONE,
    };

    /// Both factors must be unit to within `EPS_UNIT`.
    pub fn new(a: Quaternion, b: Quaternion) -> Result<Self> {
        Ok(Self::from_unit_factors(a.ensure_unit()?, b.ensure_unit()?))
    }

    /// Rescales both factors to unit norm first.
    pub fn new_normalized(a: Quaternion, b: Quaternion) -> Result<Self> {
        let unit = |x: Quaternion| {
            x.ensure_unit().or_else(|_| {
                x.normalized().ok_or(Error::NotUnit {
                    norm_sq: x.norm_sq(),
                })
            })
        };
        Self::new(unit(a)?, unit(b)?)
    }

    /// Canonicalizes without checking norms. Callers guarantee unit factors.
    pub(crate) fn from_unit_factors(a: Quaternion, b: Quaternion) -> Self {
        let lead = a
            .to_array()
            .into_iter()
            .find(|c| c.abs() > tol::EPS_AXIS)
            .unwrap_or(1.0);
        if lead < 0.0 {
            Self { a: -a, b: -b }
        } else {
            Self { a, b }
        }
    }

    /// `x ↦ a x`.
    pub fn left_translation(a: Quaternion) -> Result<Self> {
        Self::new(a, Quaternion::ONE)
    }

    /// `x ↦ x b`.
    pub fn right_translation(b: Quaternion) -> Result<Self> {
        Self::new(Quaternion::ONE, b)
    }

    /// `(cos α + p sin α) x (cos β + q sin β)` for unit axes `p`, `q`.
    pub fn from_polar(alpha: f64, p: Vec3, beta: f64, q: Vec3) -> Result<Self> {
        let (sa, ca) = alpha.sin_cos();
        let (sb, cb) = beta.sin_cos();
        Self::new(
            Quaternion::from_parts(ca, p * sa),
            Quaternion::from_parts(cb, q * sb),
        )
    }

    #[inline]
    pub fn a(&self) -> Quaternion {
        self.a
    }

    #[inline]
    pub fn b(&self) -> Quaternion {
        self.b
    }

    pub fn apply(&self, x: Quaternion) -> Quaternion {
        apply(self, x)
    }

    pub fn inverse(&self) -> Self {
        Self::from_unit_factors(conj(self.a), conj(self.b))
    }

    pub fn to_matrix(&self) -> Matrix4 {
        to_matrix(self)
    }

    pub fn classify(&self, eps: f64) -> RotationKind {
        classify(self, eps)
    }

    /// Max componentwise distance between factor pairs, modulo the joint sign.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let same = self
            .a
            .max_abs_diff(other.a)
            .max(self.b.max_abs_diff(other.b));
        let flipped = self
            .a
            .max_abs_diff(-other.a)
            .max(self.b.max_abs_diff(-other.b));
        same.min(flipped)
    }
}

/// Unit normal of a reflection hyperplane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionNormal(Quaternion);

impl ReflectionNormal {
    pub fn new(y: Quaternion) -> Result<Self> {
        Ok(Self(y.ensure_unit()?))
    }

    #[inline]
    pub fn get(&self) -> Quaternion {
        self.0
    }

    pub fn reflect(&self, x: Quaternion) -> Quaternion {
        reflect(self, x)
    }
}

/// Classification of a rotation with its angles and planes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationKind {
    Identity,
    /// One plane fixed pointwise, the orthogonal one turned through `angle`.
    Simple {
        angle: f64,
        fixed_plane: Plane,
        rotation_plane: Plane,
    },
    /// `x ↦ a x`; every vector turns through `angle`.
    LeftIsoclinic {
        angle: f64,
    },
    /// `x ↦ x b`; every vector turns through `angle`.
    RightIsoclinic {
        angle: f64,
    },
    /// `plane1` turns through `angle1` (from `α+β`), `plane2` through `angle2`
    /// (from `α-β`).
    Double {
        plane1: Plane,
        angle1: f64,
        plane2: Plane,
        angle2: f64,
    },
}

impl RotationKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Identity => "Identity",
            Self::Simple { .. } => "Simple",
            Self::LeftIsoclinic { .. } => "LeftIsoclinic",
            Self::RightIsoclinic { .. } => "RightIsoclinic",
            Self::Double { .. } => "Double",
        }
    }

    pub fn is_simple_or_identity(&self) -> bool {
        matches!(self, Self::Identity | Self::Simple { .. })
    }

    /// Turning angles of the two invariant planes, as far as they are defined.
    pub fn angles(&self) -> Vec<f64> {
        match *self {
            Self::Identity => vec![0.0, 0.0],
            Self::Simple { angle, .. } => vec![angle, 0.0],
            Self::LeftIsoclinic { angle } | Self::RightIsoclinic { angle } => vec![angle, angle],
            Self::Double { angle1, angle2, .. } => vec![angle1, angle2],
        }
    }

    /// Invariant planes; empty for identity and isoclinic rotations, where
    /// they are not unique.
    pub fn planes(&self) -> Vec<Plane> {
        match *self {
            Self::Simple {
                fixed_plane,
                rotation_plane,
                ..
            } => vec![rotation_plane, fixed_plane],
            Self::Double { plane1, plane2, .. } => vec![plane1, plane2],
            _ => Vec::new(),
        }
    }
}

/// Which branch of the plane construction applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneCase {
    /// `p ≠ ±q`: `first = Sp{p-q, 1+pq}`, `second = Sp{p+q, 1-pq}`.
    Generic,
    /// `q = p`: `first = Sp{1, p}`, `second` its orthogonal complement.
    Aligned,
    /// `q = -p`: `first = Sp{1, p}`, `second` its orthogonal complement.
    Opposite,
}

/// The pair of orthogonal invariant planes determined by the axes `p`, `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantPlanes {
    pub first: Plane,
    pub second: Plane,
    pub case: PlaneCase,
}

impl InvariantPlanes {
    /// The plane turned through `α+β`.
    pub fn sum_plane(&self) -> Plane {
        match self.case {
            PlaneCase::Aligned => self.first,
            PlaneCase::Generic | PlaneCase::Opposite => self.second,
        }
    }

    /// The plane turned through `α-β`.
    pub fn diff_plane(&self) -> Plane {
        match self.case {
            PlaneCase::Aligned => self.second,
            PlaneCase::Generic | PlaneCase::Opposite => self.first,
        }
    }
}

pub fn apply(r: &Rotation4, x: Quaternion) -> Quaternion {
    mul(mul(r.a, x), r.b)
}

/// Reflection in the hyperplane with normal `y`: `x ↦ -y x̄ y`.
pub fn reflect(y: &ReflectionNormal, x: Quaternion) -> Quaternion {
    -mul(mul(y.0, conj(x)), y.0)
}

/// The simple rotation `R_z ∘ R_y`, i.e. `x ↦ (z ȳ) x (ȳ z)`.
pub fn from_reflections(y: &ReflectionNormal, z: &ReflectionNormal) -> Rotation4 {
    let yb = conj(y.0);
    Rotation4::from_unit_factors(mul(z.0, yb), mul(yb, z.0))
}

/// Matrix of the rotation in the basis `1, i, j, k`.
pub fn to_matrix(r: &Rotation4) -> Matrix4 {
    left_mult_matrix(r.a) * right_mult_matrix(r.b)
}

/// Reduces an angle to `[0, π]`, identifying `θ` with `-θ` and `θ + 2π`.
pub fn reduce_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        2.0 * PI - t
    } else {
        t
    }
}

/// Unit vector orthogonal to the unit vector `p`, built from the coordinate
/// axis least aligned with it.
fn orthogonal_unit(p: Vec3) -> Vec3 {
    let c = p.to_array().map(f64::abs);
    let axis = if c[0] <= c[1] && c[0] <= c[2] {
        Vec3::I
    } else if c[1] <= c[2] {
        Vec3::J
    } else {
        Vec3::K
    };
    let v = p.cross(axis);
    v / v.norm()
}

/// Invariant planes of `(cos α + p sin α) x (cos β + q sin β)`; they depend on
/// the unit axes only.
pub fn invariant_planes(p: Vec3, q: Vec3) -> InvariantPlanes {
    let pq = mul(Quaternion::pure(p), Quaternion::pure(q));
    let case = if (p - q).norm() <= tol::EPS_AXIS {
        PlaneCase::Aligned
    } else if (p + q).norm() <= tol::EPS_AXIS {
        PlaneCase::Opposite
    } else {
        PlaneCase::Generic
    };

    let spans = match case {
        PlaneCase::Generic => {
            Plane::span(Quaternion::pure(p - q), Quaternion::ONE + pq).and_then(|first| {
                Plane::span(Quaternion::pure(p + q), Quaternion::ONE - pq)
                    .map(|second| (first, second))
            })
        }
        PlaneCase::Aligned | PlaneCase::Opposite => {
            let v = orthogonal_unit(p);
            Ok((
                Plane {
                    u: Quaternion::ONE,
                    w: Quaternion::pure(p),
                },
                Plane {
                    u: Quaternion::pure(v),
                    w: Quaternion::pure(p.cross(v)),
                },
            ))
        }
    };
    // p ± q exceed EPS_AXIS in the generic branch and |1 ± pq| = |p ∓ q|.
    let (first, second) = spans.expect("generic spans have full rank");
    InvariantPlanes {
        first,
        second,
        case,
    }
}

/// Orients `plane` so that `r` turns `u` towards `w`.
pub(crate) fn orient(r: &Rotation4, plane: Plane) -> Plane {
    if plane.w.dot4(apply(r, plane.u)) < 0.0 {
        plane.flipped()
    } else {
        plane
    }
}

/// Classifies `r` as identity, simple, isoclinic or double.
///
/// A factor counts as `±1` when its vector part is at most `EPS_AXIS`; the
/// rotation is simple when `|Sa - Sb| <= eps`. The central inversion
/// `x ↦ -x` is reported as `LeftIsoclinic` with angle `π`.
pub fn classify(r: &Rotation4, eps: f64) -> RotationKind {
    let (a, b) = (r.a, r.b);
    let a_real = a.v.norm() <= tol::EPS_AXIS;
    let b_real = b.v.norm() <= tol::EPS_AXIS;
    match (a_real, b_real) {
        (true, true) => {
            return if a.s * b.s > 0.0 {
                RotationKind::Identity
            } else {
                RotationKind::LeftIsoclinic { angle: PI }
            };
        }
        (true, false) => {
            let b = b * a.s.signum();
            return RotationKind::RightIsoclinic {
                angle: b.v.norm().atan2(b.s),
            };
        }
        (false, true) => {
            let a = a * b.s.signum();
            return RotationKind::LeftIsoclinic {
                angle: a.v.norm().atan2(a.s),
            };
        }
        (false, false) => {}
    }

    // Factors are unit and not real, so the polar axes are well defined.
    let pa = polar(a).expect("canonical factors are unit");
    let pb = polar(b).expect("canonical factors are unit");
    let planes = invariant_planes(pa.axis, pb.axis);
    let sum_angle = reduce_angle(pa.half_angle + pb.half_angle);
    let diff_angle = reduce_angle(pa.half_angle - pb.half_angle);

    if (a.s - b.s).abs() <= eps {
        RotationKind::Simple {
            angle: sum_angle,
            fixed_plane: planes.diff_plane(),
            rotation_plane: orient(r, planes.sum_plane()),
        }
    } else {
        RotationKind::Double {
            plane1: orient(r, planes.sum_plane()),
            angle1: sum_angle,
            plane2: orient(r, planes.diff_plane()),
            angle2: diff_angle,
        }
    }
}

/// Solves `a y = y b` for a unit `y`.
///
/// Gaussian elimination on `L(a) - R(b)` gives the kernel; among its basis
/// vectors the one with the largest component is returned. If rounding leaves
/// the matrix at full rank, the eigenvector of `Kᵀ K` with the smallest
/// eigenvalue is used instead.
fn intertwining_vector(a: Quaternion, b: Quaternion) -> Quaternion {
    let k = {
        let l = left_mult_matrix(a).entries;
        let r = right_mult_matrix(b).entries;
        let mut d = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                d[i][j] = l[i][j] - r[i][j];
            }
        }
        Matrix4::from_rows(d)
    };
    let largest = |x: &Quaternion| x.to_array().into_iter().map(f64::abs).fold(0.0, f64::max);
    let best = k.kernel().into_iter().reduce(|best, x| {
        if largest(&x) > largest(&best) {
            x
        } else {
            best
        }
    });
    if let Some(y) = best.and_then(Quaternion::normalized) {
        return y;
    }
    let gram = k.transpose() * k;
    symmetric_eigen4(&gram)
        .ok()
        .and_then(|e| e.vector(3).normalized())
        .unwrap_or(Quaternion::ONE)
}

/// Splits a simple rotation into two reflections: returns `(y, z)` with
/// `a = z ȳ` and `b = ȳ z`, so that `r = R_z ∘ R_y`.
pub fn simple_to_reflections(
    r: &Rotation4,
    eps: f64,
) -> Result<(ReflectionNormal, ReflectionNormal)> {
    let residual = (r.a.s - r.b.s).abs();
    if residual > eps {
        return Err(Error::NotSimple { residual });
    }
    let y = intertwining_vector(r.a, r.b);
    let z = mul(r.a, y);
    Ok((ReflectionNormal(y), ReflectionNormal(z)))
}
