//! Rotations of four-dimensional Euclidean space written as `x ↦ a x b` with
//! unit quaternions `a`, `b`.
//!
//! The crate classifies such rotations (simple, isoclinic, double), extracts
//! their invariant planes and angles in closed form, composes them while
//! propagating Gibbs-vector parameters, and decides when the composite of two
//! simple rotations is again simple. The [`oracle`] module recomputes planes
//! and angles from the 4×4 matrix alone so both routes can be checked against
//! each other.
//!
//! ```
//! use quat4d::{compose, Quaternion, Rotation4, RotationKind};
//!
//! let h = std::f64::consts::FRAC_1_SQRT_2;
//! let f = Rotation4::new(Quaternion::new(h, h, 0.0, 0.0), Quaternion::new(h, 0.0, h, 0.0)).unwrap();
//! let g = Rotation4::new(Quaternion::new(h, 0.0, h, 0.0), Quaternion::new(h, 0.0, 0.0, h)).unwrap();
//! let gf = compose(&g, &f);
//! assert!(matches!(gf.classify(1e-8), RotationKind::Simple { .. }));
//! ```

pub mod cli;
pub mod compose;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod plane;
pub mod quat;
pub mod rotation;
pub mod sample;

pub use compose::{
    compose, compose_gibbs, compose_left_clifford, composed_planes_from_gibbs,
    is_composition_simple, ComposedPlanes, GibbsPair, SimplicityReport,
};
pub use error::{Error, Result};
pub use matrix::Matrix4;
pub use oracle::{planes_from_matrix, OraclePlanes};
pub use plane::Plane;
pub use quat::{PolarForm, Quaternion, Vec3};
pub use rotation::{
    classify, from_reflections, invariant_planes, simple_to_reflections, ReflectionNormal,
    Rotation4, RotationKind,
};

/// Numerical tolerances shared across the crate.
pub mod tol {
    /// Identities that hold exactly up to rounding.
    pub const EPS_ALG: f64 = 1e-12;
    /// Admission of user-supplied unit quaternions.
    pub const EPS_UNIT: f64 = 1e-9;
    /// A vector part at most this long counts as zero (`a = ±1`, `p = ±q`).
    pub const EPS_AXIS: f64 = 1e-9;
    /// Smallest admissible Gibbs denominator.
    pub const EPS_GIBBS: f64 = 1e-9;
    /// Projector distance below which two planes are the same.
    pub const EPS_PLANE: f64 = 1e-8;
    /// Pointwise agreement of rotated vectors.
    pub const EPS_APPLY: f64 = 1e-9;
    /// Default threshold for `|Sa - Sb|` and the simplicity residual.
    pub const DEFAULT_EPS: f64 = 1e-8;
}
