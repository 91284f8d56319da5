//! Composition of rotations and propagation of their geometric parameters.
//!
//! `g ∘ f` means "`f` followed by `g`". With `f: x ↦ a x b` and
//! `g: x ↦ c x d`, the composite is `x ↦ (c a) x (b d)`.
//!
//! For two simple rotations the composite is simple exactly when
//! `Vc·Va - Vb·Vd = 0`. Splitting each factor into reflections
//! (`a = z ȳ`, `b = ȳ z`, `c = w ū`, `d = ū w`) that residual equals
//! `2 det[y, z, u, w]` (columns in `[s, x1, x2, x3]` order), so the composite
//! is simple iff the four reflection normals are linearly dependent, iff the
//! two fixed planes meet in a nonzero vector. [`is_composition_simple`] evaluates all three forms.
//!
//! In the Gibbs chart `a = cos α (1 + p̃)`, `b = cos β (1 + q̃)` the composite
//! parameters follow rational rules of the Rodrigues type, see
//! [`compose_gibbs`].

use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::plane::Plane;
use crate::quat::{mul, polar, Quaternion, Vec3};
use crate::rotation::{invariant_planes, orient, reduce_angle, simple_to_reflections, Rotation4};
use crate::tol;

/// `g ∘ f`: `f` first, then `g`.
pub fn compose(g: &Rotation4, f: &Rotation4) -> Rotation4 {
    Rotation4::from_unit_factors(mul(g.a(), f.a()), mul(f.b(), g.b()))
}

/// Gibbs representation `x ↦ cos α (1 + p̃) x (1 + q̃) cos β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsPair {
    pub p_tilde: Vec3,
    pub q_tilde: Vec3,
    pub cos_alpha: f64,
    pub cos_beta: f64,
}

fn check_gibbs_scale(g: Vec3, cos: f64) -> Result<()> {
    if !cos.is_finite() || cos.abs() <= tol::EPS_GIBBS {
        return Err(Error::GibbsSingular { denominator: cos });
    }
    let norm_sq = cos * cos * (1.0 + g.norm_sq());
    if (norm_sq - 1.0).abs() > tol::EPS_UNIT {
        return Err(Error::NotUnit { norm_sq });
    }
    Ok(())
}

impl GibbsPair {
    /// Checks that both `cos·(1 + g)` are unit quaternions.
    pub fn new(p_tilde: Vec3, q_tilde: Vec3, cos_alpha: f64, cos_beta: f64) -> Result<Self> {
        check_gibbs_scale(p_tilde, cos_alpha)?;
        check_gibbs_scale(q_tilde, cos_beta)?;
        Ok(Self {
            p_tilde,
            q_tilde,
            cos_alpha,
            cos_beta,
        })
    }

    /// Pair with positive cosines determined by the Gibbs vectors.
    pub fn from_gibbs(p_tilde: Vec3, q_tilde: Vec3) -> Self {
        Self {
            p_tilde,
            q_tilde,
            cos_alpha: 1.0 / (1.0 + p_tilde.norm_sq()).sqrt(),
            cos_beta: 1.0 / (1.0 + q_tilde.norm_sq()).sqrt(),
        }
    }

    /// Reads the parameters off the factors as given, without canonical sign.
    pub fn from_factors(a: Quaternion, b: Quaternion) -> Result<Self> {
        for s in [a.s, b.s] {
            if s.abs() <= tol::EPS_GIBBS {
                return Err(Error::GibbsSingular { denominator: s });
            }
        }
        Ok(Self {
            p_tilde: a.v / a.s,
            q_tilde: b.v / b.s,
            cos_alpha: a.s,
            cos_beta: b.s,
        })
    }

    pub fn from_rotation(r: &Rotation4) -> Result<Self> {
        Self::from_factors(r.a(), r.b())
    }

    pub fn left_factor(&self) -> Quaternion {
        Quaternion::from_parts(self.cos_alpha, self.p_tilde * self.cos_alpha)
    }

    pub fn right_factor(&self) -> Quaternion {
        Quaternion::from_parts(self.cos_beta, self.q_tilde * self.cos_beta)
    }

    pub fn to_rotation(&self) -> Result<Rotation4> {
        Rotation4::new(self.left_factor(), self.right_factor())
    }

    /// Same rotation with both cosines negated.
    pub fn negated(&self) -> Self {
        Self {
            cos_alpha: -self.cos_alpha,
            cos_beta: -self.cos_beta,
            ..*self
        }
    }

    /// Largest componentwise difference over all eight parameters.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.p_tilde
            .max_abs_diff(other.p_tilde)
            .max(self.q_tilde.max_abs_diff(other.q_tilde))
            .max((self.cos_alpha - other.cos_alpha).abs())
            .max((self.cos_beta - other.cos_beta).abs())
    }
}

/// Parameters of `g ∘ f` from those of `f` and `g`:
///
/// ```text
/// cos α = cos α₁ cos α₂ (1 - p̃₁·p̃₂)    p̃ = (p̃₂ + p̃₁ + p̃₂ × p̃₁) / (1 - p̃₂·p̃₁)
/// cos β = cos β₁ cos β₂ (1 - q̃₁·q̃₂)    q̃ = (q̃₁ + q̃₂ + q̃₁ × q̃₂) / (1 - q̃₁·q̃₂)
/// ```
///
/// The left rule crosses `p̃₂ × p̃₁`, the right rule `q̃₁ × q̃₂`. A vanishing
/// denominator means the composite has `cos α = 0` or `cos β = 0`, which the
/// Gibbs chart cannot represent; use [`compose`] in that case.
pub fn compose_gibbs(f: &GibbsPair, g: &GibbsPair) -> Result<GibbsPair> {
    let left_den = 1.0 - g.p_tilde.dot(f.p_tilde);
    let right_den = 1.0 - f.q_tilde.dot(g.q_tilde);
    for denominator in [left_den, right_den] {
        if denominator.abs() <= tol::EPS_GIBBS {
            return Err(Error::GibbsSingular { denominator });
        }
    }
    Ok(GibbsPair {
        p_tilde: (g.p_tilde + f.p_tilde + g.p_tilde.cross(f.p_tilde)) / left_den,
        q_tilde: (f.q_tilde + g.q_tilde + f.q_tilde.cross(g.q_tilde)) / right_den,
        cos_alpha: f.cos_alpha * g.cos_alpha * left_den,
        cos_beta: f.cos_beta * g.cos_beta * right_den,
    })
}

/// Left Clifford translation by `cos1 (1 + g1)` followed by `cos2 (1 + g2)`.
/// Returns the Gibbs vector and cosine of the composite `x ↦ (b a) x`.
pub fn compose_left_clifford(g1: Vec3, cos1: f64, g2: Vec3, cos2: f64) -> Result<(Vec3, f64)> {
    let denominator = 1.0 - g1.dot(g2);
    if denominator.abs() <= tol::EPS_GIBBS {
        return Err(Error::GibbsSingular { denominator });
    }
    Ok((
        (g1 + g2 + g2.cross(g1)) / denominator,
        cos1 * cos2 * denominator,
    ))
}

/// Invariant planes of a rotation given in Gibbs form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComposedPlanes {
    /// Turned through `angle1 = α+β` (reduced to `[0, π]`).
    pub plane1: Plane,
    pub angle1: f64,
    /// Turned through `angle2 = α-β` (reduced to `[0, π]`).
    pub plane2: Plane,
    pub angle2: f64,
}

/// Planes and angles of the rotation with parameters `h`, typically the
/// output of [`compose_gibbs`].
///
/// The unit axes are `p̃/|p̃|` and `q̃/|q̃|` (sign-corrected by the cosines);
/// the planes are then those of [`invariant_planes`].
pub fn composed_planes_from_gibbs(h: &GibbsPair) -> Result<ComposedPlanes> {
    for g in [h.p_tilde, h.q_tilde] {
        let vector_norm = g.norm();
        if vector_norm <= tol::EPS_AXIS {
            return Err(Error::DegenerateAxis { vector_norm });
        }
    }
    let r = h.to_rotation()?;
    let pa = polar(h.left_factor())?;
    let pb = polar(h.right_factor())?;
    let planes = invariant_planes(pa.axis, pb.axis);
    Ok(ComposedPlanes {
        plane1: orient(&r, planes.sum_plane()),
        angle1: reduce_angle(pa.half_angle + pb.half_angle),
        plane2: orient(&r, planes.diff_plane()),
        angle2: reduce_angle(pa.half_angle - pb.half_angle),
    })
}

/// `Vc·Va - Vb·Vd` for `f: x ↦ a x b` and `g: x ↦ c x d`.
pub fn s_condition(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> f64 {
    c.v.dot(a.v) - b.v.dot(d.v)
}

/// The three equivalent simplicity tests for `g ∘ f` with `f`, `g` simple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplicityReport {
    /// `Vc·Va - Vb·Vd`.
    pub s_condition: f64,
    /// `det[y, z, u, w]` of the reflection normals of `f` and `g`; equals
    /// `s_condition / 2`.
    pub det_normals: f64,
    /// `dim(Π_f ∩ Π_g)`, i.e. `4 - rank[y, z, u, w]`.
    pub intersection_dim: usize,
    pub is_simple: bool,
    /// Verdict of each test: residual, determinant, intersection.
    pub verdicts: [bool; 3],
}

impl SimplicityReport {
    pub fn tests_agree(&self) -> bool {
        self.verdicts.iter().all(|&v| v == self.verdicts[0])
    }
}

/// Decides whether `g ∘ f` is simple, for simple `f` and `g`.
///
/// Fails with `NotSimple` when either input has `|Sa - Sb| > eps`.
pub fn is_composition_simple(f: &Rotation4, g: &Rotation4, eps: f64) -> Result<SimplicityReport> {
    let (y, z) = simple_to_reflections(f, eps)?;
    let (u, w) = simple_to_reflections(g, eps)?;
    let normals = [y.get(), z.get(), u.get(), w.get()];

    let s = s_condition(f.a(), f.b(), g.a(), g.b());
    let det_normals = Matrix4::from_column_vectors(normals).det();
    let intersection_dim = 4 - Matrix4::from_row_vectors(normals).rank();

    let verdicts = [
        s.abs() <= eps,
        (2.0 * det_normals).abs() <= eps,
        intersection_dim >= 1,
    ];
    Ok(SimplicityReport {
        s_condition: s,
        det_normals,
        intersection_dim,
        is_simple: verdicts[0],
        verdicts,
    })
}
