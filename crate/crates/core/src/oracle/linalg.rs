//! Dense complex matrices of order 2-4 with a cyclic Jacobi eigensolver for
//! Hermitian input and a principal square root for positive-semidefinite
//! input. Self-contained so the oracle layer shares no numerics with the
//! closed forms it checks.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Row-major dense complex matrix, square, small.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "rows must form a square matrix");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> CMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.conj();
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the strictly off-diagonal part.
    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).max_abs()
    }

    /// (A + A†)/2.
    pub fn symmetrized(&self) -> CMatrix {
        let adj = self.adjoint();
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&adj.data) {
            *a = (*a + *b) * 0.5;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in descending
/// order and the matching orthonormal eigenvectors as columns of a unitary.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// V diag(f(λ)) V†.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.vectors.dim();
        let mut out = CMatrix::zeros(n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.vectors[(i, k)];
                for j in 0..n {
                    out[(i, j)] += vi * self.vectors[(j, k)].conj() * w;
                }
            }
        }
        out
    }
}

/// Cyclic complex Jacobi iteration. Input must be Hermitian within
/// `hermiticity_tol`; it is symmetrized before the sweeps. Converges
/// quadratically for the matrix orders used here.
pub fn eig_hermitian(m: &CMatrix, hermiticity_tol: f64) -> Result<HermitianEigen> {
    if m.hermiticity_defect() > hermiticity_tol {
        return Err(Error::domain(format!(
            "matrix is not Hermitian within {hermiticity_tol}"
        )));
    }
    let n = m.dim();
    let mut a = m.symmetrized();
    let mut v = CMatrix::identity(n);
    let scale = a.max_abs().max(1.0);

    for _sweep in 0..100 {
        if a.off_diagonal_norm() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                let abs_beta = beta.norm();
                if abs_beta <= 1e-300 {
                    continue;
                }
                // Unitary 2x2 rotation zeroing a_pq: phase w = beta/|beta|,
                // angle from tau = (a_pp - a_qq) / (2|beta|).
                let w = beta / abs_beta;
                let alpha = a[(p, p)].re;
                let delta = a[(q, q)].re;
                let tau = (alpha - delta) / (2.0 * abs_beta);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- U† A U with U[[c, -s w],[s w̄, c]] on rows/cols (p, q)
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * (s * w.conj());
                    a[(k, q)] = akq * c - akp * (s * w);
                    a[(p, k)] = a[(k, p)].conj();
                    a[(q, k)] = a[(k, q)].conj();
                }
                let app = c * c * alpha + 2.0 * c * s * abs_beta + s * s * delta;
                let aqq = c * c * delta - 2.0 * c * s * abs_beta + s * s * alpha;
                a[(p, p)] = Complex64::new(app, 0.0);
                a[(q, q)] = Complex64::new(aqq, 0.0);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * (s * w.conj());
                    v[(k, q)] = vkq * c - vkp * (s * w);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Principal square root of a PSD Hermitian matrix via U √D U†. Eigenvalues
/// below `-negativity_tol` are rejected. Eigenvalues within 1e-14 of zero
/// (relative to the spectral radius) are truncated rather than rooted:
/// √ε turns roundoff ε ~ 1e-17 into 1e-8.5, which would dominate the error
/// budget of everything built on the root.
pub fn sqrt_psd(m: &CMatrix, negativity_tol: f64) -> Result<CMatrix> {
    let eig = eig_hermitian(m, 1e-12)?;
    if let Some(&worst) = eig.values.iter().find(|v| **v < -negativity_tol) {
        return Err(Error::domain(format!(
            "matrix is not positive semidefinite: eigenvalue {worst}"
        )));
    }
    let cutoff = 1e-14 * eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    Ok(eig.apply(|lam| if lam <= cutoff { 0.0 } else { lam.sqrt() }))
}
