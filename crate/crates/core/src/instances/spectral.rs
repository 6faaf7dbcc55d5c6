//! The positive-semidefinite matrix cone with trace charge.
//!
//! Real symmetric matrices under the PSD order form a measure cone whose
//! minimal decompositions are the spectral positive/negative parts and whose
//! base norm is the trace norm. Eigenvalues are irrational in general, so
//! this instance lives outside the exact-rational core: scalars are `f64`
//! and every claim carries the cone's tolerance.
//!
//! The eigensolver is a cyclic Jacobi iteration, plain and robust at the
//! matrix sizes used here (d ≤ 16).

use crate::error::{Error, Result};

/// Dense square `f64` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    d: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            data: vec![0.0; d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        Ok(Self {
            d,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.d + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.d + c] = v;
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.d, other.d);
        let d = self.d;
        let mut out = SquareMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.set(i, j, out.get(i, j) + a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SquareMatrix {
        let mut out = SquareMatrix::zeros(self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.d, other.d);
        SquareMatrix {
            d: self.d,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.d, other.d);
        SquareMatrix {
            d: self.d,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, f: f64) -> SquareMatrix {
        SquareMatrix {
            d: self.d,
            data: self.data.iter().map(|a| a * f).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.d).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest asymmetry `|aᵢⱼ − aⱼᵢ|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.d {
            for j in (i + 1)..self.d {
                defect = defect.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        defect
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.d {
            for j in 0..self.d {
                if i != j {
                    s += self.get(i, j) * self.get(i, j);
                }
            }
        }
        s.sqrt()
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix: returns
/// `(eigenvalues, v)` with `a ≈ v · diag(eigenvalues) · vᵀ` and the
/// eigenvectors in the columns of `v`. Sweeps until the off-diagonal norm
/// drops below `tol`.
pub fn jacobi_eigen(a: &SquareMatrix, tol: f64) -> Result<(Vec<f64>, SquareMatrix)> {
    const MAX_SWEEPS: usize = 64;
    if a.symmetry_defect() > tol {
        return Err(Error::NotSymmetric);
    }
    let d = a.d();
    // work on the symmetrized copy so the iteration sees an exactly
    // symmetric matrix
    let mut w = a.add(&a.transpose()).scale(0.5);
    let mut v = SquareMatrix::identity(d);

    for _ in 0..MAX_SWEEPS {
        if w.off_diagonal_norm() <= tol {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = w.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (w.get(q, q) - w.get(p, p)) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // W ← Jᵀ W J with the Givens rotation J in the (p, q) plane
                for k in 0..d {
                    let wkp = w.get(k, p);
                    let wkq = w.get(k, q);
                    w.set(k, p, c * wkp - s * wkq);
                    w.set(k, q, s * wkp + c * wkq);
                }
                for k in 0..d {
                    let wpk = w.get(p, k);
                    let wqk = w.get(q, k);
                    w.set(p, k, c * wpk - s * wqk);
                    w.set(q, k, s * wpk + c * wqk);
                }
                for k in 0..d {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let eigenvalues = (0..d).map(|i| w.get(i, i)).collect();
    Ok((eigenvalues, v))
}

/// Spectral positive/negative parts of a symmetric matrix together with the
/// projections onto their ranges.
#[derive(Debug, Clone)]
pub struct SpectralParts {
    pub plus: SquareMatrix,
    pub minus: SquareMatrix,
    pub proj_plus: SquareMatrix,
    pub proj_minus: SquareMatrix,
}

/// The cone of positive-semidefinite `d×d` real symmetric matrices with the
/// trace as charge. As a vector space its dimension is `d(d+1)/2`.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricMatrixCone {
    pub d: usize,
    pub tol: f64,
}

impl SymmetricMatrixCone {
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(d: usize) -> Self {
        Self {
            d,
            tol: Self::DEFAULT_TOL,
        }
    }

    pub fn with_tol(d: usize, tol: f64) -> Self {
        Self { d, tol }
    }

    /// Dimension of the ambient vector space of symmetric matrices.
    pub fn vector_dimension(&self) -> usize {
        self.d * (self.d + 1) / 2
    }

    fn check_shape(&self, z: &SquareMatrix) -> Result<()> {
        if z.d() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                actual: z.d(),
            });
        }
        Ok(())
    }

    fn eigen(&self, z: &SquareMatrix) -> Result<(Vec<f64>, SquareMatrix)> {
        self.check_shape(z)?;
        jacobi_eigen(z, self.tol)
    }

    /// `Σ |λᵢ|`, the trace norm.
    pub fn trace_norm(&self, z: &SquareMatrix) -> Result<f64> {
        let (vals, _) = self.eigen(z)?;
        Ok(vals.iter().map(|l| l.abs()).sum())
    }

    /// Splits `z` into its spectral positive and negative parts,
    /// `z = plus − minus`, with the range projections of both parts.
    /// Eigenvalues within `tol` of zero contribute to neither side.
    pub fn spectral_minimal_decomposition(&self, z: &SquareMatrix) -> Result<SpectralParts> {
        let (vals, v) = self.eigen(z)?;
        let d = self.d;
        let column = |j: usize| -> Vec<f64> { (0..d).map(|i| v.get(i, j)).collect() };
        let mut plus = SquareMatrix::zeros(d);
        let mut minus = SquareMatrix::zeros(d);
        let mut proj_plus = SquareMatrix::zeros(d);
        let mut proj_minus = SquareMatrix::zeros(d);
        for (j, &lambda) in vals.iter().enumerate() {
            if lambda.abs() <= self.tol {
                continue;
            }
            let col = column(j);
            for r in 0..d {
                for c in 0..d {
                    let outer = col[r] * col[c];
                    if lambda > 0.0 {
                        plus.set(r, c, plus.get(r, c) + lambda * outer);
                        proj_plus.set(r, c, proj_plus.get(r, c) + outer);
                    } else {
                        minus.set(r, c, minus.get(r, c) - lambda * outer);
                        proj_minus.set(r, c, proj_minus.get(r, c) + outer);
                    }
                }
            }
        }
        Ok(SpectralParts {
            plus,
            minus,
            proj_plus,
            proj_minus,
        })
    }

    fn is_psd(&self, x: &SquareMatrix) -> Result<bool> {
        let (vals, _) = self.eigen(x)?;
        Ok(vals.iter().all(|&l| l >= -self.tol))
    }

    /// Projection onto the range of a PSD matrix.
    pub fn range_projection(&self, x: &SquareMatrix) -> Result<SquareMatrix> {
        let (vals, v) = self.eigen(x)?;
        if vals.iter().any(|&l| l < -self.tol) {
            return Err(Error::NotPositiveSemidefinite);
        }
        let d = self.d;
        let mut proj = SquareMatrix::zeros(d);
        for (j, &lambda) in vals.iter().enumerate() {
            if lambda <= self.tol {
                continue;
            }
            for r in 0..d {
                for c in 0..d {
                    proj.set(r, c, proj.get(r, c) + v.get(r, j) * v.get(c, j));
                }
            }
        }
        Ok(proj)
    }

    /// Largest singular value, via the top eigenvalue of `MᵀM`.
    pub fn spectral_norm(&self, m: &SquareMatrix) -> Result<f64> {
        self.check_shape(m)?;
        let gram = m.transpose().mul(m);
        let (vals, _) = jacobi_eigen(&gram, self.tol)?;
        Ok(vals.iter().fold(0.0f64, |a, &b| a.max(b)).max(0.0).sqrt())
    }

    /// Trace-norm orthogonality of two nonzero PSD matrices: the projections
    /// onto their ranges must annihilate each other, `‖P_X P_Y‖ ≤ tol`.
    pub fn quantum_orthogonal(&self, x: &SquareMatrix, y: &SquareMatrix) -> Result<bool> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        if !self.is_psd(x)? || !self.is_psd(y)? {
            return Err(Error::NotPositiveSemidefinite);
        }
        if x.trace() <= self.tol || y.trace() <= self.tol {
            return Err(Error::ZeroVector);
        }
        let px = self.range_projection(x)?;
        let py = self.range_projection(y)?;
        Ok(self.spectral_norm(&px.mul(&py))? <= self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn jacobi_diagonalizes_a_fixed_matrix() {
        let a = SquareMatrix::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, -0.25],
            vec![0.5, -0.25, 2.0],
        ])
        .unwrap();
        let (vals, v) = jacobi_eigen(&a, TOL).unwrap();
        // reconstruct A = V L Vᵀ
        let l = SquareMatrix::diag(&vals);
        let rebuilt = v.mul(&l).mul(&v.transpose());
        assert!(rebuilt.sub(&a).max_abs_entry() < 1e-8);
        // V orthogonal
        let gram = v.transpose().mul(&v);
        assert!(gram.sub(&SquareMatrix::identity(3)).max_abs_entry() < 1e-8);
    }

    #[test]
    fn jacobi_rejects_asymmetric_input() {
        let a = SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(jacobi_eigen(&a, TOL), Err(Error::NotSymmetric));
    }

    #[test]
    fn diagonal_split() {
        let cone = SymmetricMatrixCone::new(2);
        let parts = cone
            .spectral_minimal_decomposition(&SquareMatrix::diag(&[1.0, -1.0]))
            .unwrap();
        assert!(
            parts
                .plus
                .sub(&SquareMatrix::diag(&[1.0, 0.0]))
                .max_abs_entry()
                < TOL
        );
        assert!(
            parts
                .minus
                .sub(&SquareMatrix::diag(&[0.0, 1.0]))
                .max_abs_entry()
                < TOL
        );
        assert!((cone.trace_norm(&SquareMatrix::diag(&[1.0, -1.0])).unwrap() - 2.0).abs() < TOL);
        // supports annihilate each other
        assert!(parts.proj_plus.mul(&parts.proj_minus).max_abs_entry() < TOL);
    }

    #[test]
    fn zero_matrix_splits_to_zero() {
        let cone = SymmetricMatrixCone::new(3);
        let parts = cone
            .spectral_minimal_decomposition(&SquareMatrix::zeros(3))
            .unwrap();
        assert_eq!(parts.plus.max_abs_entry(), 0.0);
        assert_eq!(parts.minus.max_abs_entry(), 0.0);
    }

    #[test]
    fn orthogonality_examples() {
        let cone = SymmetricMatrixCone::new(2);
        let x = SquareMatrix::diag(&[1.0, 0.0]);
        let y = SquareMatrix::diag(&[0.0, 1.0]);
        assert!(cone.quantum_orthogonal(&x, &y).unwrap());
        // rank-1 projector onto (1,1)/√2 overlaps the first axis
        let overlap = SquareMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(!cone.quantum_orthogonal(&x, &overlap).unwrap());
        assert!(!cone.quantum_orthogonal(&x, &x).unwrap());
    }

    #[test]
    fn psd_and_zero_inputs_are_rejected() {
        let cone = SymmetricMatrixCone::new(2);
        let x = SquareMatrix::diag(&[1.0, 0.0]);
        let not_psd = SquareMatrix::diag(&[1.0, -1.0]);
        assert_eq!(
            cone.quantum_orthogonal(&x, &not_psd).unwrap_err(),
            Error::NotPositiveSemidefinite
        );
        assert_eq!(
            cone.quantum_orthogonal(&x, &SquareMatrix::zeros(2))
                .unwrap_err(),
            Error::ZeroVector
        );
    }
}
