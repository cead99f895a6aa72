//! Random matrix ensembles used by the generators and the tests.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use super::entropy::DensityMatrix;
use super::matrix::{HermitianMatrix, Matrix};
use crate::error::Result;
use crate::function::Interval;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Unitary from modified Gram-Schmidt (applied twice) on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let g = complex_gaussian(rng, n, n);
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
        let mut ok = true;
        for j in 0..n {
            for _ in 0..2 {
                for k in 0..j {
                    let proj: Complex64 =
                        cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                    let (head, tail) = cols.split_at_mut(j);
                    for (x, y) in tail[0].iter_mut().zip(&head[k]) {
                        *x -= proj * y;
                    }
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for x in cols[j].iter_mut() {
                *x /= norm;
            }
        }
        if ok {
            return Matrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }
}

/// `U diag(λ) U*` for Haar-like `U`.
pub fn random_hermitian_with_spectrum<R: Rng + ?Sized>(
    rng: &mut R,
    spectrum: &[f64],
) -> Result<HermitianMatrix> {
    let u = random_unitary(rng, spectrum.len());
    HermitianMatrix::from_real_diag(spectrum)?.congruence(&u.adjoint())
}

/// Eigenvalues uniform on `[m, M]`.
pub fn uniform_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, iv: &Interval) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(iv.lo()..=iv.hi())).collect()
}

/// Hermitian matrix with eigenvalues drawn uniformly from `[m, M]`.
pub fn random_hermitian_in<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    iv: &Interval,
) -> Result<HermitianMatrix> {
    let spectrum = uniform_spectrum(rng, n, iv);
    random_hermitian_with_spectrum(rng, &spectrum)
}

/// `(G + G*)/2` for Gaussian `G`.
pub fn random_gue<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermitianMatrix {
    let g = complex_gaussian(rng, n, n);
    HermitianMatrix::hermitize((&g + &g.adjoint()).scale(0.5)).expect("G + G* is Hermitian")
}

/// Ginibre density matrix `G G* / Tr(G G*)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<DensityMatrix> {
    let g = complex_gaussian(rng, n, n);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(HermitianMatrix::hermitize(gg.scale(1.0 / tr))?)
}

/// Haar-distributed unit vector.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Positive weights summing to one (uniform on the open simplex).
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1) + 1e-3).collect();
    let total: f64 = draws.iter().sum();
    let mut w: Vec<f64> = draws.iter().map(|d| d / total).collect();
    let resid = 1.0 - w.iter().sum::<f64>();
    w[0] += resid;
    w
}
