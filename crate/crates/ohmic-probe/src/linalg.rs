//! Dense complex matrices of small fixed dimension (2 or 4 here) and a
//! cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = CMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Largest |A_ij - conj(A_ji)| over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi with complex rotations. Intended for the small Hermitian
/// matrices of this crate; converges quadratically once the off-diagonal
/// norm is small.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen> {
    let n = a.dim();
    if a.hermiticity_defect() > 1e-9 {
        return Err(Error::Numerical(format!(
            "matrix is not Hermitian (defect {:.3e})",
            a.hermiticity_defect()
        )));
    }
    // Work on the exactly Hermitian part so diagonals stay real.
    let mut w = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            w[(i, j)] = 0.5 * (a[(i, j)] + a[(j, i)].conj());
        }
    }
    let mut v = CMatrix::identity(n);

    let scale: f64 = (0..n)
        .map(|i| w[(i, i)].re.abs())
        .fold(1e-300, f64::max);
    let stop = 1e-15 * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| w[(p, q)].norm())
            .fold(0.0, f64::max);
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let r = w[(p, q)].norm();
                if r <= stop * 1e-2 {
                    continue;
                }
                let phase = w[(p, q)] / r;
                let tau = (w[(q, q)].re - w[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c);

                // Unitary rotation in the (p, q) plane: columns p, q mix.
                let mut u = CMatrix::identity(n);
                u[(p, p)] = Complex64::new(c, 0.0);
                u[(p, q)] = s;
                u[(q, p)] = -s.conj();
                u[(q, q)] = Complex64::new(c, 0.0);

                w = u.adjoint().matmul(&w).matmul(&u);
                v = v.matmul(&u);
            }
        }
    }
    if !converged {
        // Final check after the last sweep.
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| w[(p, q)].norm())
            .fold(0.0, f64::max);
        if off > 1e-12 * scale {
            return Err(Error::Numerical(format!(
                "Jacobi sweep limit reached with off-diagonal {off:.3e}"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.partial_cmp(&w[(j, j)].re).unwrap());

    let mut values = Vec::with_capacity(n);
    let mut vectors = CMatrix::zeros(n);
    for (slot, &src) in order.iter().enumerate() {
        values.push(w[(src, src)].re);
        let col = v.column(src);
        for i in 0..n {
            vectors[(i, slot)] = col[i];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(a: &CMatrix, e: &HermitianEigen) -> f64 {
        // max |A v_k - λ_k v_k|
        let n = a.dim();
        let mut worst = 0.0f64;
        for k in 0..n {
            for i in 0..n {
                let mut av = c(0.0, 0.0);
                for j in 0..n {
                    av += a[(i, j)] * e.vectors[(j, k)];
                }
                worst = worst.max((av - e.values[k] * e.vectors[(i, k)]).norm());
            }
        }
        worst
    }

    #[test]
    fn two_by_two_analytic() {
        // [[1, k],[k, 1]]/2 has eigenvalues (1 ± k)/2.
        let k = 0.37;
        let a = CMatrix::from_rows(&[
            &[c(0.5, 0.0), c(0.5 * k, 0.0)],
            &[c(0.5 * k, 0.0), c(0.5, 0.0)],
        ]);
        let e = hermitian_eigen(&a).unwrap();
        assert_relative_eq!(e.values[0], 0.5 * (1.0 - k), max_relative = 1e-14);
        assert_relative_eq!(e.values[1], 0.5 * (1.0 + k), max_relative = 1e-14);
        assert!(residual(&a, &e) < 1e-14);
    }

    #[test]
    fn complex_hermitian_known_spectrum() {
        // [[2, i],[-i, 2]] has eigenvalues 1 and 3.
        let a = CMatrix::from_rows(&[&[c(2.0, 0.0), c(0.0, 1.0)], &[c(0.0, -1.0), c(2.0, 0.0)]]);
        let e = hermitian_eigen(&a).unwrap();
        assert_relative_eq!(e.values[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(e.values[1], 3.0, max_relative = 1e-14);
        assert!(residual(&a, &e) < 1e-14);
    }

    #[test]
    fn four_by_four_constructed_spectrum() {
        // U diag(λ) U† with a hand-built unitary from two plane rotations.
        let lam = [-1.0, 0.25, 0.8, 2.0];
        let mut d = CMatrix::zeros(4);
        for i in 0..4 {
            d[(i, i)] = c(lam[i], 0.0);
        }
        let mut u = CMatrix::identity(4);
        let (cs, sn) = (0.6, 0.8);
        let mut r1 = CMatrix::identity(4);
        r1[(0, 0)] = c(cs, 0.0);
        r1[(0, 2)] = c(0.0, sn);
        r1[(2, 0)] = c(0.0, sn);
        r1[(2, 2)] = c(cs, 0.0);
        let mut r2 = CMatrix::identity(4);
        r2[(1, 1)] = c(0.28, 0.0);
        r2[(1, 3)] = c(-0.96, 0.0);
        r2[(3, 1)] = c(0.96, 0.0);
        r2[(3, 3)] = c(0.28, 0.0);
        u = u.matmul(&r1).matmul(&r2);
        let a = u.matmul(&d).matmul(&u.adjoint());
        let e = hermitian_eigen(&a).unwrap();
        for (got, want) in e.values.iter().zip(lam.iter()) {
            assert_relative_eq!(got, want, max_relative = 1e-13);
        }
        assert!(residual(&a, &e) < 1e-13);
    }

    #[test]
    fn degenerate_eigenvalues() {
        // diag(0.5, 0.5, 0, 0) with an off-diagonal coupling in the first
        // block only; the degenerate zero pair must not break convergence.
        let a = CMatrix::from_rows(&[
            &[c(0.5, 0.0), c(0.2, 0.1), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.2, -0.1), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        let e = hermitian_eigen(&a).unwrap();
        let sum: f64 = e.values.iter().sum();
        assert_relative_eq!(sum, 1.0, max_relative = 1e-13);
        assert!(residual(&a, &e) < 1e-13);
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let a = CMatrix::from_rows(&[
            &[c(1.0, 0.0), c(0.3, 0.2), c(0.1, -0.4), c(0.0, 0.1)],
            &[c(0.3, -0.2), c(-0.5, 0.0), c(0.0, 0.0), c(0.2, 0.0)],
            &[c(0.1, 0.4), c(0.0, 0.0), c(0.7, 0.0), c(-0.1, 0.3)],
            &[c(0.0, -0.1), c(0.2, 0.0), c(-0.1, -0.3), c(0.2, 0.0)],
        ]);
        let e = hermitian_eigen(&a).unwrap();
        let gram = e.vectors.adjoint().matmul(&e.vectors);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - c(want, 0.0)).norm() < 1e-13);
            }
        }
        assert!(residual(&a, &e) < 1e-13);
    }

    #[test]
    fn non_hermitian_rejected() {
        let a = CMatrix::from_rows(&[&[c(1.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]]);
        assert!(matches!(hermitian_eigen(&a), Err(Error::Numerical(_))));
    }
}
