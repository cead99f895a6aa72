//! Functional calculus `f(A) = U diag(f(λ)) U*`.

use super::eigen::{jacobi_eigh, EigenDecomposition};
use super::matrix::HermitianMatrix;
use crate::error::{domain, Result};
use crate::function::{FunctionSpec, Interval};
use crate::scalar_bounds::ln_r;

/// Slack allowed when deciding whether a spectrum lies in an interval.
pub const SPECTRUM_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted where strict positivity is required.
pub const POSITIVE_FLOOR: f64 = 1e-12;

/// Applies `g` to every eigenvalue of `eig` and reassembles.
pub fn map_spectrum<G>(eig: &EigenDecomposition, g: G) -> Result<HermitianMatrix>
where
    G: Fn(f64) -> Result<f64>,
{
    let values = eig.eigenvalues.iter().map(|&l| g(l)).collect::<Result<Vec<_>>>()?;
    eig.reassemble(&values)
}

/// `f(A)`; the spectrum must lie in `f`'s interval up to [`SPECTRUM_TOL`].
pub fn apply_function(f: &FunctionSpec, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    apply_function_eig(f, &jacobi_eigh(a)?)
}

pub fn apply_function_eig(f: &FunctionSpec, eig: &EigenDecomposition) -> Result<HermitianMatrix> {
    let iv = f.domain();
    map_spectrum(eig, |l| {
        if !iv.contains(l, SPECTRUM_TOL * l.abs().max(1.0)) {
            return Err(domain(format!("eigenvalue {l} lies outside {iv} where {} is given", f.name())));
        }
        f.eval_spectral(l.clamp(iv.lo(), iv.hi()))
    })
}

pub fn spectrum_in(a: &HermitianMatrix, iv: &Interval) -> Result<bool> {
    let eig = jacobi_eigh(a)?;
    Ok(eig.min() >= iv.lo() - SPECTRUM_TOL && eig.max() <= iv.hi() + SPECTRUM_TOL)
}

pub fn lambda_min(a: &HermitianMatrix) -> Result<f64> {
    Ok(jacobi_eigh(a)?.min())
}

fn require_positive(eig: &EigenDecomposition) -> Result<()> {
    if eig.min() <= POSITIVE_FLOOR {
        return Err(domain(format!(
            "operator must be positive definite, smallest eigenvalue is {}",
            eig.min()
        )));
    }
    Ok(())
}

/// `A^r` for positive definite `A`.
pub fn power(a: &HermitianMatrix, r: f64) -> Result<HermitianMatrix> {
    let eig = jacobi_eigh(a)?;
    require_positive(&eig)?;
    map_spectrum(&eig, |l| Ok(l.powf(r)))
}

/// `ln_r(A)` for positive definite `A` (`log A` at `r = 0`).
pub fn ln_r_op(a: &HermitianMatrix, r: f64) -> Result<HermitianMatrix> {
    let eig = jacobi_eigh(a)?;
    require_positive(&eig)?;
    map_spectrum(&eig, |l| ln_r(r, l))
}

/// `A^{1/2}` and `A^{-1/2}` from one decomposition.
pub fn sqrt_and_inv_sqrt(a: &HermitianMatrix) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let eig = jacobi_eigh(a)?;
    require_positive(&eig)?;
    Ok((map_spectrum(&eig, |l| Ok(l.sqrt()))?, map_spectrum(&eig, |l| Ok(1.0 / l.sqrt()))?))
}
