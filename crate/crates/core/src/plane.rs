//! Two-dimensional subspaces of Euclidean 4-space.

use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::quat::Quaternion;
use crate::tol;

/// Oriented plane through the origin, stored as an orthonormal pair `(u, w)`.
///
/// Two planes are the same subspace iff their projectors `u uᵀ + w wᵀ` agree;
/// compare with [`Plane::distance`], not with `==`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub u: Quaternion,
    pub w: Quaternion,
}

impl Plane {
    /// Gram–Schmidt on `(first, second)`, keeping `first`'s direction.
    ///
    /// Fails with `DegenerateAxis` when the pair does not span a plane.
    pub fn span(first: Quaternion, second: Quaternion) -> Result<Self> {
        let u = first.normalized().ok_or(Error::DegenerateAxis {
            vector_norm: first.norm(),
        })?;
        let rest = second - u * u.dot4(second);
        let w = rest.normalized().ok_or(Error::DegenerateAxis {
            vector_norm: rest.norm(),
        })?;
        Ok(Self { u, w })
    }

    /// Swaps the orientation of the basis.
    pub fn flipped(self) -> Self {
        Self {
            u: self.u,
            w: -self.w,
        }
    }

    /// Orthogonal projector onto the plane, `u uᵀ + w wᵀ`.
    pub fn projector(&self) -> Matrix4 {
        let u = self.u.to_array();
        let w = self.w.to_array();
        let mut p = [[0.0; 4]; 4];
        for (i, row) in p.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = u[i] * u[j] + w[i] * w[j];
            }
        }
        Matrix4::from_rows(p)
    }

    pub fn project(&self, x: Quaternion) -> Quaternion {
        self.u * self.u.dot4(x) + self.w * self.w.dot4(x)
    }

    /// Norm of the component of `x` orthogonal to the plane.
    pub fn residual(&self, x: Quaternion) -> f64 {
        (x - self.project(x)).norm()
    }

    /// Max-abs entry of the difference of the two projectors.
    pub fn distance(&self, other: &Plane) -> f64 {
        self.projector().max_abs_diff(&other.projector())
    }

    pub fn same_as(&self, other: &Plane, eps: f64) -> bool {
        self.distance(other) <= eps
    }

    /// Largest absolute inner product between a basis vector of `self` and one
    /// of `other`; zero for orthogonal planes.
    pub fn max_cross_dot(&self, other: &Plane) -> f64 {
        [self.u, self.w]
            .iter()
            .flat_map(|a| [other.u, other.w].map(|b| a.dot4(b).abs()))
            .fold(0.0, f64::max)
    }

    pub fn is_orthogonal_to(&self, other: &Plane) -> bool {
        self.max_cross_dot(other) <= tol::EPS_PLANE
    }
}
