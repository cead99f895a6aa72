//! Density matrices and their entropies.

use super::eigen::jacobi_eigh;
use super::matrix::HermitianMatrix;
use crate::error::{domain, Error, Result};
use crate::scalar_bounds::ln_r;

/// Slack on positivity and unit trace.
pub const DENSITY_TOL: f64 = 1e-12;

/// Positive semidefinite Hermitian matrix of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    base: HermitianMatrix,
    spectrum: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        let tr = base.trace();
        if (tr - 1.0).abs() > DENSITY_TOL {
            return Err(domain(format!("density matrix must have unit trace, got {tr}")));
        }
        let spectrum = jacobi_eigh(&base)?.eigenvalues;
        if spectrum[0] < -DENSITY_TOL {
            return Err(domain(format!(
                "density matrix must be positive semidefinite, smallest eigenvalue {}",
                spectrum[0]
            )));
        }
        Ok(Self { base, spectrum })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("dimension must be >= 1"));
        }
        Self::new(HermitianMatrix::identity(n).scale(1.0 / n as f64))
    }

    /// `|e_k⟩⟨e_k|`.
    pub fn basis_state(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(domain(format!("basis index {k} out of range for dimension {n}")));
        }
        let mut d = vec![0.0; n];
        d[k] = 1.0;
        Self::new(HermitianMatrix::from_real_diag(&d)?)
    }

    #[inline]
    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Ascending eigenvalues.
    #[inline]
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }
}

/// `-Tr[ρ log ρ]` with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    -rho.spectrum.iter().filter(|l| **l > 0.0).map(|l| l * l.ln()).sum::<f64>()
}

/// `(Tr ρ^{1-r} - 1)/r`, evaluated as `Σ λ ln_r(1/λ)` to avoid cancellation
/// for small `r`.
pub fn quantum_tsallis_entropy(rho: &DensityMatrix, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(domain(format!("Tsallis parameter must lie in (0, 1], got {r}")));
    }
    rho.spectrum
        .iter()
        .filter(|l| **l > 0.0)
        .try_fold(0.0, |acc, &l| Ok(acc + l * ln_r(r, 1.0 / l)?))
}

/// `Tr|A - B| = Σ |λ_i(A - B)|`.
pub fn trace_distance_l1(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!("dimensions {} and {} differ", a.dim(), b.dim())));
    }
    Ok(jacobi_eigh(&a.sub(b)?)?.eigenvalues.iter().map(|l| l.abs()).sum())
}
