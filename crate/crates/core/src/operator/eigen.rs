use num_complex::Complex64;

use super::matrix::{HermitianMatrix, Matrix};
use crate::error::{Error, Result};

/// Sweep cap of [`jacobi_eigh`].
pub const MAX_SWEEPS: usize = 100;
/// Relative off-diagonal Frobenius mass at which iteration stops.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// `A = U diag(λ) U*` with eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub unitary: Matrix,
}

impl EigenDecomposition {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `U diag(g(λ)) U*`.
    pub fn reassemble(&self, values: &[f64]) -> Result<HermitianMatrix> {
        let n = self.eigenvalues.len();
        if values.len() != n {
            return Err(Error::Shape(format!("{} values for dimension {n}", values.len())));
        }
        let u = &self.unitary;
        let mut out = Matrix::zeros(n, n);
        for (k, &v) in values.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            for i in 0..n {
                let uik = u[(i, k)] * v;
                for j in 0..n {
                    out[(i, j)] += uik * u[(j, k)].conj();
                }
            }
        }
        HermitianMatrix::hermitize(out)
    }

    pub fn reconstruct(&self) -> Result<HermitianMatrix> {
        self.reassemble(&self.eigenvalues)
    }

    /// `‖A - U diag(λ) U*‖_F`.
    pub fn reconstruction_residual(&self, a: &HermitianMatrix) -> Result<f64> {
        Ok(a.as_matrix().try_sub(self.reconstruct()?.as_matrix())?.frobenius_norm())
    }

    /// `‖U U* - I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.eigenvalues.len();
        let uu = &self.unitary * &self.unitary.adjoint();
        (&uu - &Matrix::identity(n)).frobenius_norm()
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic-by-row complex Jacobi eigensolver.
///
/// Each rotation is `J = D·R` where `D = diag(1, e^{-iφ})` makes the pivot
/// real and `R` is the real rotation that annihilates it; `A ← J*AJ` and
/// `V ← VJ`.
pub fn jacobi_eigh(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm();
    let target = OFF_DIAGONAL_TOL * scale;

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&m);
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let unitary = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(EigenDecomposition { eigenvalues, unitary })
}

fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = phase.conj();
    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = -e * s;
    let j_qq = e * c;

    let n = m.rows();
    for k in 0..n {
        let (akp, akq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = akp * j_pp + akq * j_qp;
        m[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        m[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(app - t * g, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::random::{random_gue, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_input_sorts_and_permutes() {
        let a = HermitianMatrix::from_real_diag(&[3.0, -1.0, 2.0]).unwrap();
        let e = jacobi_eigh(&a).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 2.0, 3.0]);
        assert_eq!(e.unitary[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(e.unitary[(2, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(e.unitary[(0, 2)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = jacobi_eigh(&HermitianMatrix::identity(5)).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| l == 1.0));
    }

    #[test]
    fn two_by_two_complex_closed_form() {
        // [[2, 1-i], [1+i, 3]] has eigenvalues (5 ± √9)/2 = 1, 4
        let a = HermitianMatrix::new(
            Matrix::from_rows(
                2,
                2,
                vec![
                    Complex64::new(2.0, 0.0),
                    Complex64::new(1.0, -1.0),
                    Complex64::new(1.0, 1.0),
                    Complex64::new(3.0, 0.0),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let e = jacobi_eigh(&a).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 4.0).abs() < 1e-14);
        assert!(e.reconstruction_residual(&a).unwrap() < 1e-14);
    }

    #[test]
    fn random_matrices_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1usize, 2, 3, 6, 16, 32] {
            for _ in 0..20 {
                let a = random_gue(&mut rng, n);
                let e = jacobi_eigh(&a).unwrap();
                let scale = a.frobenius_norm().max(1.0);
                assert!(e.reconstruction_residual(&a).unwrap() <= 1e-10 * scale);
                assert!(e.unitarity_residual() <= 1e-10);
                assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(&mut rng, 5);
        let d = HermitianMatrix::from_real_diag(&[1.0, 1.0, 1.0, 2.0, 2.0]).unwrap();
        let a = d.congruence(&u.adjoint()).unwrap();
        let e = jacobi_eigh(&a).unwrap();
        for (l, want) in e.eigenvalues.iter().zip([1.0, 1.0, 1.0, 2.0, 2.0]) {
            assert!((l - want).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_matrix() {
        let e = jacobi_eigh(&HermitianMatrix::zeros(4)).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| l == 0.0));
    }
}
