//! Power means `X ♮_r Y` and the Tsallis relative operator entropy.

use super::calculus::{ln_r_op, power, sqrt_and_inv_sqrt};
use super::matrix::HermitianMatrix;
use crate::error::{Error, Result};

fn check_same_dim(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::Shape(format!("dimensions {} and {} differ", x.dim(), y.dim())));
    }
    Ok(())
}

/// `X^{1/2} g(X^{-1/2} Y X^{-1/2}) X^{1/2}`.
fn sandwich<G>(x: &HermitianMatrix, y: &HermitianMatrix, g: G) -> Result<HermitianMatrix>
where
    G: FnOnce(&HermitianMatrix) -> Result<HermitianMatrix>,
{
    check_same_dim(x, y)?;
    let (xs, xis) = sqrt_and_inv_sqrt(x)?;
    // validates positivity of Y as well
    sqrt_and_inv_sqrt(y)?;
    let middle = y.congruence(xis.as_matrix())?;
    g(&middle)?.congruence(xs.as_matrix())
}

/// `X ♮_r Y = X^{1/2} (X^{-1/2} Y X^{-1/2})^r X^{1/2}` for positive definite
/// `X`, `Y` and any real `r`.
pub fn natural_power_mean(x: &HermitianMatrix, y: &HermitianMatrix, r: f64) -> Result<HermitianMatrix> {
    sandwich(x, y, |m| power(m, r))
}

/// `S_r(X‖Y) = X^{1/2} ln_r(X^{-1/2} Y X^{-1/2}) X^{1/2}`, which equals
/// `(X ♮_r Y - X)/r` and reduces to the relative operator entropy at `r = 0`.
pub fn tsallis_relative_operator_entropy(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    r: f64,
) -> Result<HermitianMatrix> {
    sandwich(x, y, |m| ln_r_op(m, r))
}

/// `S_0(X‖Y) = X^{1/2} log(X^{-1/2} Y X^{-1/2}) X^{1/2}`.
pub fn relative_operator_entropy(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<HermitianMatrix> {
    tsallis_relative_operator_entropy(x, y, 0.0)
}
