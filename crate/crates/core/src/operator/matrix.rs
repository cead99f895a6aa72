use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Hermiticity tolerance for matrices supplied from outside, relative to
/// `max(1, ‖A‖_F)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Looser tolerance for results of internal arithmetic before they are
/// symmetrized.
pub const ARITH_HERMITIAN_TOL: f64 = 1e-9;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `‖A - A*‖_F`.
    pub fn skew_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    fn try_zip(&self, rhs: &Matrix, op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(*a, *b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.try_zip(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.try_zip(rhs, |a, b| a - b)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

// The operator impls panic on shape mismatch; fallible callers use `try_*`.
impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

/// A square complex matrix equal to its adjoint (within tolerance).
///
/// The stored entries are exactly Hermitian: construction symmetrizes.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    /// Validates at [`HERMITIAN_TOL`] and symmetrizes.
    pub fn new(m: Matrix) -> Result<Self> {
        Self::with_tolerance(m, HERMITIAN_TOL)
    }

    /// Symmetrizes the result of internal arithmetic, failing if the skew
    /// part exceeds [`ARITH_HERMITIAN_TOL`] relative to the norm.
    pub fn hermitize(m: Matrix) -> Result<Self> {
        Self::with_tolerance(m, ARITH_HERMITIAN_TOL)
    }

    fn with_tolerance(m: Matrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows, m.cols)));
        }
        if m.rows == 0 {
            return Err(domain("matrix dimension must be >= 1"));
        }
        if m.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("matrix has non-finite entries"));
        }
        let skew = m.skew_norm();
        let scale = m.frobenius_norm().max(1.0);
        if skew > tol * scale {
            return Err(domain(format!(
                "matrix is not Hermitian: ‖A - A*‖_F = {skew:e} exceeds {:e}",
                tol * scale
            )));
        }
        let n = m.rows;
        let sym = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            }
        });
        Ok(Self(sym))
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(domain("matrix dimension must be >= 1"));
        }
        if diag.iter().any(|d| !d.is_finite()) {
            return Err(domain("diagonal must be finite"));
        }
        Ok(Self(Matrix::from_real_diag(diag)))
    }

    /// Real symmetric matrix from row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        let data = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(Matrix::from_rows(n, n, data)?)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.rows
    }

    #[inline]
    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn scale(&self, c: f64) -> HermitianMatrix {
        Self(self.0.scale(c))
    }

    pub fn add(&self, rhs: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(Self(self.0.try_add(&rhs.0)?))
    }

    pub fn sub(&self, rhs: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(Self(self.0.try_sub(&rhs.0)?))
    }

    /// `self + c·I`.
    pub fn shift(&self, c: f64) -> HermitianMatrix {
        let mut m = self.0.clone();
        for i in 0..m.rows {
            m[(i, i)] += c;
        }
        Self(m)
    }

    /// `B* A B` for a (possibly rectangular) `B`.
    pub fn congruence(&self, b: &Matrix) -> Result<HermitianMatrix> {
        let inner = self.0.try_mul(b)?;
        Self::hermitize(b.adjoint().try_mul(&inner)?)
    }

    /// `⟨A x, x⟩` (real for Hermitian `A`).
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<f64> {
        let ax = self.0.mul_vec(x)?;
        Ok(x.iter().zip(&ax).map(|(xi, yi)| xi.conj() * yi).sum::<Complex64>().re)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dim: self.dim(),
            re: self.0.data.iter().map(|z| z.re).collect(),
            im: self.0.data.iter().map(|z| z.im).collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        let n = j.dim;
        if j.re.len() != n * n || j.im.len() != n * n {
            return Err(Error::Shape(format!(
                "dim {n} needs {} entries, got re {} / im {}",
                n * n,
                j.re.len(),
                j.im.len()
            )));
        }
        let data = j.re.iter().zip(&j.im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        Self::new(Matrix::from_rows(n, n, data)?)
    }
}

/// Exchange format: `{dim, re, im}` with row-major entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_adjoint() {
        let a = Matrix::from_rows(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0)])
            .unwrap();
        let p = &a * &Matrix::identity(2);
        assert_eq!(p, a);
        let aa = a.adjoint();
        assert_eq!(aa[(0, 1)], c(0.0, 1.0));
        assert!(a.try_mul(&Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn hermitian_validation_and_symmetrization() {
        let bad = Matrix::from_rows(2, 2, vec![c(1.0, 0.0), c(1.0, 1.0), c(1.0, 1.0), c(2.0, 0.0)])
            .unwrap();
        assert!(HermitianMatrix::new(bad).is_err());
        let near = Matrix::from_rows(
            2,
            2,
            vec![c(1.0, 1e-14), c(1.0, 1.0), c(1.0, -1.0 + 1e-14), c(2.0, 0.0)],
        )
        .unwrap();
        let h = HermitianMatrix::new(near).unwrap();
        assert_eq!(h.as_matrix().skew_norm(), 0.0);
        assert!(HermitianMatrix::new(Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = HermitianMatrix::new(
            Matrix::from_rows(2, 2, vec![c(1.0, 0.0), c(0.5, -0.25), c(0.5, 0.25), c(-2.0, 0.0)])
                .unwrap(),
        )
        .unwrap();
        let s = serde_json::to_string(&h.to_json()).unwrap();
        let back: MatrixJson = serde_json::from_str(&s).unwrap();
        assert_eq!(HermitianMatrix::from_json(&back).unwrap(), h);
        let short = MatrixJson { dim: 2, re: vec![1.0], im: vec![0.0] };
        assert!(HermitianMatrix::from_json(&short).is_err());
    }

    #[test]
    fn quadratic_form_is_real() {
        let h = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 3.0]).unwrap();
        let x = [c(1.0, 0.0), c(0.0, 1.0)];
        assert!((h.quadratic_form(&x).unwrap() - 5.0).abs() < 1e-15);
    }
}
