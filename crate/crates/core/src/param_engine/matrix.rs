use std::f64::consts::PI;

use serde::Serialize;

use super::forms::{self, Entries};

/// A symmetric 3×3 matrix of reals.
///
/// Only the upper triangle is stored; `entry(i, j)` and `entry(j, i)` read the
/// same slot, so symmetry holds by construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymMatrix3 {
    m11: f64,
    m12: f64,
    m13: f64,
    m22: f64,
    m23: f64,
    m33: f64,
}

impl SymMatrix3 {
    pub const fn new(m11: f64, m12: f64, m13: f64, m22: f64, m23: f64, m33: f64) -> Self {
        Self { m11, m12, m13, m22, m23, m33 }
    }

    /// Reads the upper triangle of `entries`; the lower triangle is ignored.
    pub fn from_upper(entries: &Entries<f64>) -> Self {
        Self::new(
            entries[0][0],
            entries[0][1],
            entries[0][2],
            entries[1][1],
            entries[1][2],
            entries[2][2],
        )
    }

    /// Zero-based element access.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 0) => self.m11,
            (0, 1) => self.m12,
            (0, 2) => self.m13,
            (1, 1) => self.m22,
            (1, 2) => self.m23,
            (2, 2) => self.m33,
            _ => panic!("index ({i}, {j}) out of range for a 3x3 matrix"),
        }
    }

    pub fn to_array(&self) -> Entries<f64> {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.entry(i, j);
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22 + self.m33
    }

    pub fn determinant(&self) -> f64 {
        forms::cofactor_det(&self.to_array())
    }

    /// Sum of the 2×2 principal minors (the second elementary symmetric function).
    pub fn sigma2(&self) -> f64 {
        forms::principal_minor_sum(&self.to_array())
    }

    /// Eigenvalues in ascending order from the trigonometric solution of the
    /// characteristic cubic.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let off = self.m12 * self.m12 + self.m13 * self.m13 + self.m23 * self.m23;
        if off == 0.0 {
            let mut d = [self.m11, self.m22, self.m33];
            d.sort_by(f64::total_cmp);
            return d;
        }
        let q = self.trace() / 3.0;
        let d11 = self.m11 - q;
        let d22 = self.m22 - q;
        let d33 = self.m33 - q;
        let p2 = d11 * d11 + d22 * d22 + d33 * d33 + 2.0 * off;
        let scale = (p2 / 6.0).sqrt();
        let b = SymMatrix3::new(
            d11 / scale,
            self.m12 / scale,
            self.m13 / scale,
            d22 / scale,
            self.m23 / scale,
            d33 / scale,
        );
        let r = (b.determinant() / 2.0).clamp(-1.0, 1.0);
        let angle = r.acos() / 3.0;
        let largest = q + 2.0 * scale * angle.cos();
        let smallest = q + 2.0 * scale * (angle + 2.0 * PI / 3.0).cos();
        let middle = 3.0 * q - largest - smallest;
        let mut out = [smallest, middle, largest];
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Positive semidefinite up to `tol` on the smallest eigenvalue.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_access() {
        let m = SymMatrix3::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entry(i, j), m.entry(j, i));
            }
        }
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let m = SymMatrix3::new(3.0, 0.0, 0.0, -1.0, 0.0, 2.0);
        assert_eq!(m.eigenvalues(), [-1.0, 2.0, 3.0]);
    }

    #[test]
    fn repeated_eigenvalue() {
        // ones-matrix: eigenvalues {0, 0, 3}
        let m = SymMatrix3::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        let e = m.eigenvalues();
        assert!(e[0].abs() < 1e-14 && e[1].abs() < 1e-14);
        assert!((e[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn reference_matrix_spectrum() {
        // λ(λ² − (7/4)λ + 13/24)
        let m = SymMatrix3::new(2.0 / 3.0, 1.0 / 12.0, -2.0 / 3.0, 5.0 / 12.0, -1.0 / 12.0, 2.0 / 3.0);
        let disc: f64 = (7.0_f64 / 4.0).powi(2) - 4.0 * 13.0 / 24.0;
        let lo = (7.0 / 4.0 - disc.sqrt()) / 2.0;
        let hi = (7.0 / 4.0 + disc.sqrt()) / 2.0;
        let e = m.eigenvalues();
        assert!(e[0].abs() < 1e-12);
        assert!((e[1] - lo).abs() < 1e-12);
        assert!((e[2] - hi).abs() < 1e-12);
        assert!((e[1] - 0.401758).abs() < 1e-5);
        assert!((e[2] - 1.348242).abs() < 1e-5);
        assert!(m.is_psd(1e-10));
    }
}
