//! Matrix-based ground truth for rotations of 4-space.
//!
//! Everything here works from the 4×4 orthogonal matrix alone. The invariant
//! planes come from the eigenspaces of the symmetric part `M + Mᵀ`, which acts
//! as `2 cos θ` on a plane turned through `θ`. None of the closed-form plane
//! formulas in [`crate::rotation`] are used, so the two sides can check each
//! other.

use crate::error::{Error, Result};
use crate::matrix::Matrix4;
use crate::plane::Plane;
use crate::quat::Quaternion;

/// Off-diagonal Frobenius norm (relative to `‖S‖`) at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 30;

/// Matrix of `x ↦ a x` in the basis `1, i, j, k`.
pub fn left_mult_matrix(a: Quaternion) -> Matrix4 {
    let [a0, a1, a2, a3] = a.to_array();
    Matrix4::from_rows([
        [a0, -a1, -a2, -a3],
        [a1, a0, -a3, a2],
        [a2, a3, a0, -a1],
        [a3, -a2, a1, a0],
    ])
}

/// Matrix of `x ↦ x b` in the basis `1, i, j, k`.
pub fn right_mult_matrix(b: Quaternion) -> Matrix4 {
    let [b0, b1, b2, b3] = b.to_array();
    Matrix4::from_rows([
        [b0, -b1, -b2, -b3],
        [b1, b0, b3, -b2],
        [b2, -b3, b0, b1],
        [b3, b2, -b1, b0],
    ])
}

/// Eigen-decomposition of a symmetric 4×4 matrix.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricEigen {
    /// Descending.
    pub values: [f64; 4],
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix4,
}

impl SymmetricEigen {
    pub fn vector(&self, i: usize) -> Quaternion {
        self.vectors.column(i)
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> Matrix4 {
        self.vectors * Matrix4::diagonal(self.values) * self.vectors.transpose()
    }
}

fn off_diagonal_norm(a: &[[f64; 4]; 4]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                sum += x * x;
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi eigen-solver.
pub fn symmetric_eigen4(s: &Matrix4) -> Result<SymmetricEigen> {
    let mut a = s.entries;
    let mut v = Matrix4::IDENTITY.entries;
    let scale = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_TOLERANCE * scale.max(f64::MIN_POSITIVE);

    let mut converged = off_diagonal_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;

                // A ← Jᵀ A J
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;

                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - sn * vq;
                    row[q] = sn * vp + c * vq;
                }
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }

    let mut order = [0, 1, 2, 3];
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.map(|i| a[i][i]);
    let columns = order.map(|i| Quaternion::new(v[0][i], v[1][i], v[2][i], v[3][i]));
    Ok(SymmetricEigen {
        values,
        vectors: Matrix4::from_column_vectors(columns),
    })
}

/// Invariant planes and unsigned angles recovered from a rotation matrix.
#[derive(Debug, Clone, Copy)]
pub struct OraclePlanes {
    pub plane1: Plane,
    /// In `[0, π]`; `angle1 <= angle2`.
    pub angle1: f64,
    pub plane2: Plane,
    pub angle2: f64,
    /// Both angles agree within tolerance; the planes are then one arbitrary
    /// choice out of infinitely many.
    pub isoclinic: bool,
}

impl OraclePlanes {
    /// Angle of whichever oracle plane is closest to `plane`, with the
    /// projector distance to it.
    pub fn match_plane(&self, plane: &Plane) -> (f64, f64) {
        let d1 = self.plane1.distance(plane);
        let d2 = self.plane2.distance(plane);
        if d1 <= d2 {
            (self.angle1, d1)
        } else {
            (self.angle2, d2)
        }
    }
}

/// Unsigned turning angle of `m` restricted to the invariant plane `p`.
fn angle_in_plane(m: &Matrix4, p: &Plane) -> f64 {
    let mu = m.mul_vec(p.u);
    let mw = m.mul_vec(p.w);
    let cos = 0.5 * (p.u.dot4(mu) + p.w.dot4(mw));
    let sin = 0.5 * (p.w.dot4(mu).abs() + p.u.dot4(mw).abs());
    sin.atan2(cos)
}

fn scaled(m: &Matrix4, k: f64) -> Matrix4 {
    Matrix4::from_rows(m.entries.map(|row| row.map(|x| k * x)))
}

fn frobenius(m: &Matrix4) -> f64 {
    m.entries
        .iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

/// Invariant planes of a rotation matrix via the eigenspaces of `M + Mᵀ`.
///
/// Eigenvalues are sorted descending and paired `(λ1, λ2)`, `(λ3, λ4)`; both
/// pairs must agree within `eps`.
pub fn planes_from_matrix(m: &Matrix4, eps: f64) -> Result<OraclePlanes> {
    let s = m.add(&m.transpose());
    let eig = symmetric_eigen4(&s)?;
    let l = eig.values;
    if (l[0] - l[1]).abs() > eps || (l[2] - l[3]).abs() > eps {
        return Err(Error::PairingFailure { eigenvalues: l });
    }
    let isoclinic = (l[0] - l[3]).abs() <= eps;
    let mut plane1 = Plane {
        u: eig.vector(0),
        w: eig.vector(1),
    };
    let mut plane2 = Plane {
        u: eig.vector(2),
        w: eig.vector(3),
    };
    if isoclinic {
        // every direction is an eigenvector; pick planes of the form Sp{v, Mv}
        let cos = 0.25 * (0..4).map(|i| m.get(i, i)).sum::<f64>();
        let skew = m.max_abs_diff(&m.transpose());
        let sin = 0.25 * frobenius(&m.add(&scaled(&m.transpose(), -1.0)));
        let angle = sin.atan2(cos);
        if skew > eps {
            let v = eig.vector(0);
            if let Ok(p1) = Plane::span(v, m.mul_vec(v)) {
                let v2 = (0..4)
                    .map(|i| eig.vector(i) - p1.project(eig.vector(i)))
                    .max_by(|x, y| x.norm_sq().total_cmp(&y.norm_sq()))
                    .unwrap_or(Quaternion::ONE);
                if let Ok(p2) = Plane::span(v2, m.mul_vec(v2)) {
                    plane1 = p1;
                    plane2 = p2;
                }
            }
        }
        return Ok(OraclePlanes {
            plane1,
            angle1: angle,
            plane2,
            angle2: angle,
            isoclinic,
        });
    }
    Ok(OraclePlanes {
        angle1: angle_in_plane(m, &plane1),
        angle2: angle_in_plane(m, &plane2),
        plane1,
        plane2,
        isoclinic,
    })
}
