//! Dense 4×4 real matrices and the small amount of linear algebra the crate
//! needs on them: products, determinant, rank and kernel.

use std::ops::Mul;

use crate::quat::Quaternion;

/// Pivot threshold for rank and kernel computations, relative to the largest
/// row norm.
pub const PIVOT_THRESHOLD: f64 = 1e-10;

/// Row-major 4×4 matrix. Vectors are quaternions in `[s, x1, x2, x3]` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4 {
    pub entries: [[f64; 4]; 4],
}

impl Matrix4 {
    pub const IDENTITY: Self = Self {
        entries: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    };

    pub const fn from_rows(entries: [[f64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn from_row_vectors(rows: [Quaternion; 4]) -> Self {
        Self::from_rows(rows.map(Quaternion::to_array))
    }

    pub fn from_column_vectors(cols: [Quaternion; 4]) -> Self {
        Self::from_row_vectors(cols).transpose()
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::from_rows([[0.0; 4]; 4]);
        for (i, x) in d.into_iter().enumerate() {
            m.entries[i][i] = x;
        }
        m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Quaternion {
        let e = &self.entries;
        Quaternion::new(e[0][col], e[1][col], e[2][col], e[3][col])
    }

    pub fn row(&self, row: usize) -> Quaternion {
        Quaternion::from_array(self.entries[row])
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0.0; 4]; 4];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                t[j][i] = x;
            }
        }
        Self::from_rows(t)
    }

    pub fn mul_vec(&self, x: Quaternion) -> Quaternion {
        let x = x.to_array();
        Quaternion::from_array(
            self.entries
                .map(|row| row.iter().zip(x.iter()).map(|(a, b)| a * b).sum()),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.entries;
        for (o, r) in out.iter_mut().zip(other.entries.iter()) {
            for (x, y) in o.iter_mut().zip(r.iter()) {
                *x += y;
            }
        }
        Self::from_rows(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = &self.entries;
        let minor = |skip: usize| -> f64 {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let e = |r: usize, c: usize| m[r][cols[c]];
            e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1))
                - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
                + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
        };
        (0..4)
            .map(|c| {
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * minor(c)
            })
            .sum()
    }

    /// Rank by full-pivot Gaussian elimination.
    pub fn rank(&self) -> usize {
        RowEchelon::new(self).rank()
    }

    /// Basis of the null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Quaternion> {
        RowEchelon::new(self).kernel()
    }
}

impl Mul for Matrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        Self::from_rows(out)
    }
}

/// Reduced row echelon form produced by full pivoting.
struct RowEchelon {
    reduced: [[f64; 4]; 4],
    /// `pivot_cols[r]` is the column of the pivot in row `r`.
    pivot_cols: Vec<usize>,
}

impl RowEchelon {
    fn new(m: &Matrix4) -> Self {
        let mut a = m.entries;
        let scale = a
            .iter()
            .map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        let threshold = PIVOT_THRESHOLD * scale;
        let mut pivot_cols = Vec::new();
        let mut free_cols: Vec<usize> = (0..4).collect();

        for r in 0..4 {
            // largest remaining entry over rows r.. and unused columns
            let mut best = (0.0, r, usize::MAX);
            for (i, row) in a.iter().enumerate().skip(r) {
                for &c in &free_cols {
                    if row[c].abs() > best.0 {
                        best = (row[c].abs(), i, c);
                    }
                }
            }
            let (mag, pr, pc) = best;
            if scale == 0.0 || mag <= threshold {
                break;
            }
            a.swap(r, pr);
            let p = a[r][pc];
            for x in a[r].iter_mut() {
                *x /= p;
            }
            for i in 0..4 {
                if i != r {
                    let f = a[i][pc];
                    if f != 0.0 {
                        for c in 0..4 {
                            a[i][c] -= f * a[r][c];
                        }
                    }
                }
            }
            pivot_cols.push(pc);
            free_cols.retain(|&c| c != pc);
        }
        Self {
            reduced: a,
            pivot_cols,
        }
    }

    fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    fn kernel(&self) -> Vec<Quaternion> {
        (0..4)
            .filter(|c| !self.pivot_cols.contains(c))
            .map(|free| {
                let mut x = [0.0; 4];
                x[free] = 1.0;
                for (r, &pc) in self.pivot_cols.iter().enumerate() {
                    x[pc] = -self.reduced[r][free];
                }
                Quaternion::from_array(x)
            })
            .collect()
    }
}
