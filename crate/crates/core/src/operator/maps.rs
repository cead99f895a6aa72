//! Families of positive linear maps with `Σ Φ_i(1) = 1`.

use super::matrix::{HermitianMatrix, Matrix};
use crate::error::{domain, precondition, Error, Result};

/// Frobenius tolerance on the unital-sum identity.
pub const UNITAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum PositiveMap {
    /// `A ↦ p U* A U`.
    WeightedConjugation { weight: f64, unitary: Matrix },
    /// `A ↦ Σ_k V_k* A V_k` with each `V_k` of shape `dim_in × dim_out`.
    Kraus { ops: Vec<Matrix> },
    /// `A ↦ p Tr(A)/dim` as a `1×1` matrix.
    NormalizedTrace { weight: f64 },
}

impl PositiveMap {
    /// `A ↦ p A`.
    pub fn scalar(weight: f64, dim: usize) -> Self {
        PositiveMap::WeightedConjugation { weight, unitary: Matrix::identity(dim) }
    }

    fn dims(&self, dim_in: usize) -> Result<usize> {
        match self {
            PositiveMap::WeightedConjugation { weight, unitary } => {
                if !(*weight > 0.0) || !weight.is_finite() {
                    return Err(domain(format!("conjugation weight must be positive, got {weight}")));
                }
                if unitary.rows() != dim_in || !unitary.is_square() {
                    return Err(Error::Shape(format!(
                        "unitary is {}x{}, input dimension is {dim_in}",
                        unitary.rows(),
                        unitary.cols()
                    )));
                }
                let uu = unitary * &unitary.adjoint();
                let resid = (&uu - &Matrix::identity(dim_in)).frobenius_norm();
                if resid > 1e-10 {
                    return Err(domain(format!("conjugation matrix is not unitary (residual {resid:e})")));
                }
                Ok(dim_in)
            }
            PositiveMap::Kraus { ops } => {
                let first = ops.first().ok_or_else(|| domain("Kraus map needs at least one operator"))?;
                let out = first.cols();
                for v in ops {
                    if v.rows() != dim_in || v.cols() != out {
                        return Err(Error::Shape(format!(
                            "Kraus operator is {}x{}, expected {dim_in}x{out}",
                            v.rows(),
                            v.cols()
                        )));
                    }
                }
                Ok(out)
            }
            PositiveMap::NormalizedTrace { weight } => {
                if !(*weight > 0.0) || !weight.is_finite() {
                    return Err(domain(format!("trace weight must be positive, got {weight}")));
                }
                Ok(1)
            }
        }
    }

    pub fn apply(&self, a: &HermitianMatrix) -> Result<HermitianMatrix> {
        match self {
            PositiveMap::WeightedConjugation { weight, unitary } => {
                Ok(a.congruence(unitary)?.scale(*weight))
            }
            PositiveMap::Kraus { ops } => {
                let mut acc = a.congruence(&ops[0])?;
                for v in &ops[1..] {
                    acc = acc.add(&a.congruence(v)?)?;
                }
                Ok(acc)
            }
            PositiveMap::NormalizedTrace { weight } => {
                HermitianMatrix::from_real_diag(&[weight * a.trace() / a.dim() as f64])
            }
        }
    }
}

/// `n` positive maps `B(H) → B(K)` whose values at the identity sum to the
/// identity.
#[derive(Debug, Clone, PartialEq)]
pub struct MapFamily {
    maps: Vec<PositiveMap>,
    dim_in: usize,
    dim_out: usize,
}

impl MapFamily {
    pub fn new(maps: Vec<PositiveMap>, dim_in: usize) -> Result<Self> {
        if maps.is_empty() {
            return Err(domain("map family must be non-empty"));
        }
        if dim_in == 0 {
            return Err(domain("input dimension must be >= 1"));
        }
        let dim_out = maps[0].dims(dim_in)?;
        for m in &maps[1..] {
            let d = m.dims(dim_in)?;
            if d != dim_out {
                return Err(Error::Shape(format!("maps have output dimensions {dim_out} and {d}")));
            }
        }
        let family = Self { maps, dim_in, dim_out };
        let resid = family.unital_residual()?;
        if resid > UNITAL_TOL {
            return Err(precondition(format!("Σ Φ_i(1) differs from 1 by {resid:e} (Frobenius)")));
        }
        Ok(family)
    }

    /// `Φ_i(A) = p_i A`.
    pub fn weighted(weights: &[f64], dim: usize) -> Result<Self> {
        Self::new(weights.iter().map(|&p| PositiveMap::scalar(p, dim)).collect(), dim)
    }

    /// `Φ_i(A) = p_i U_i* A U_i`.
    pub fn conjugations(weights: &[f64], unitaries: Vec<Matrix>) -> Result<Self> {
        let dim = unitaries.first().map(|u| u.rows()).unwrap_or(0);
        Self::new(
            weights
                .iter()
                .zip(unitaries)
                .map(|(&weight, unitary)| PositiveMap::WeightedConjugation { weight, unitary })
                .collect(),
            dim,
        )
    }

    /// `Φ_i(A) = p_i Tr(A)/dim`.
    pub fn normalized_trace(weights: &[f64], dim: usize) -> Result<Self> {
        Self::new(weights.iter().map(|&weight| PositiveMap::NormalizedTrace { weight }).collect(), dim)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    #[inline]
    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    #[inline]
    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn maps(&self) -> &[PositiveMap] {
        &self.maps
    }

    /// `‖Σ Φ_i(1) - 1‖_F`.
    pub fn unital_residual(&self) -> Result<f64> {
        let id = HermitianMatrix::identity(self.dim_in);
        let total = apply_map_family(self, &vec![id; self.maps.len()])?;
        Ok(total.shift(-1.0).frobenius_norm())
    }
}

/// `Σ_i Φ_i(A_i)`.
pub fn apply_map_family(family: &MapFamily, inputs: &[HermitianMatrix]) -> Result<HermitianMatrix> {
    if inputs.len() != family.maps.len() {
        return Err(Error::Shape(format!(
            "{} inputs for a family of {} maps",
            inputs.len(),
            family.maps.len()
        )));
    }
    let mut acc = HermitianMatrix::zeros(family.dim_out);
    for (m, a) in family.maps.iter().zip(inputs) {
        if a.dim() != family.dim_in {
            return Err(Error::Shape(format!(
                "input of dimension {} for maps on dimension {}",
                a.dim(),
                family.dim_in
            )));
        }
        acc = acc.add(&m.apply(a)?)?;
    }
    Ok(acc)
}

/// Unital Kraus family `V_ik = W_ik S^{-1/2}` with `S = Σ W_ik* W_ik`, from
/// arbitrary full-rank seeds `W_ik`.
pub fn normalize_kraus(seeds: Vec<Vec<Matrix>>, dim_in: usize) -> Result<MapFamily> {
    let dim_out = seeds
        .first()
        .and_then(|ops| ops.first())
        .map(|w| w.cols())
        .ok_or_else(|| domain("Kraus seeds must be non-empty"))?;
    let mut s = Matrix::zeros(dim_out, dim_out);
    for w in seeds.iter().flatten() {
        s = s.try_add(&w.adjoint().try_mul(w)?)?;
    }
    let s = HermitianMatrix::hermitize(s)?;
    let (_, s_inv_sqrt) = super::calculus::sqrt_and_inv_sqrt(&s)?;
    let maps = seeds
        .into_iter()
        .map(|ops| {
            let ops = ops
                .iter()
                .map(|w| w.try_mul(s_inv_sqrt.as_matrix()))
                .collect::<Result<Vec<_>>>()?;
            Ok(PositiveMap::Kraus { ops })
        })
        .collect::<Result<Vec<_>>>()?;
    MapFamily::new(maps, dim_in)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Interval;
    use crate::operator::calculus::lambda_min;
    use crate::operator::random::{complex_gaussian, random_density, random_hermitian_in};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_family_returns_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_hermitian_in(&mut rng, 3, &Interval::new(-1.0, 1.0).unwrap()).unwrap();
        let f = MapFamily::weighted(&[1.0], 3).unwrap();
        assert!(apply_map_family(&f, std::slice::from_ref(&a)).unwrap().sub(&a).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn normalized_trace_of_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random_density(&mut rng, 4).unwrap();
        let f = MapFamily::normalized_trace(&[1.0], 4).unwrap();
        let out = apply_map_family(&f, &[rho.as_hermitian().clone()]).unwrap();
        assert_eq!(out.dim(), 1);
        assert!((out.trace() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn trivial_conjugation_is_weighted_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let iv = Interval::new(0.0, 2.0).unwrap();
        let a: Vec<_> = (0..3).map(|_| random_hermitian_in(&mut rng, 2, &iv).unwrap()).collect();
        let p = [0.2, 0.3, 0.5];
        let f = MapFamily::conjugations(&p, vec![Matrix::identity(2); 3]).unwrap();
        let got = apply_map_family(&f, &a).unwrap();
        let mut want = HermitianMatrix::zeros(2);
        for (pi, ai) in p.iter().zip(&a) {
            want = want.add(&ai.scale(*pi)).unwrap();
        }
        assert!(got.sub(&want).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn rejects_non_unital_and_bad_shapes() {
        assert!(matches!(MapFamily::weighted(&[0.5, 0.4], 2), Err(Error::Precondition(_))));
        let err = MapFamily::conjugations(&[1.0], vec![Matrix::identity(2).scale(2.0)]);
        assert!(err.is_err());
        let f = MapFamily::weighted(&[1.0], 2).unwrap();
        assert!(matches!(
            apply_map_family(&f, &[HermitianMatrix::identity(3)]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn kraus_family_is_unital_and_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let seeds: Vec<Vec<Matrix>> =
            (0..3).map(|_| (0..2).map(|_| complex_gaussian(&mut rng, 4, 3)).collect()).collect();
        let f = normalize_kraus(seeds, 4).unwrap();
        assert_eq!(f.dim_out(), 3);
        assert!(f.unital_residual().unwrap() <= 1e-12);
        let iv = Interval::new(0.0, 1.0).unwrap();
        let a: Vec<_> = (0..3).map(|_| random_hermitian_in(&mut rng, 4, &iv).unwrap()).collect();
        assert!(lambda_min(&apply_map_family(&f, &a).unwrap()).unwrap() >= -1e-10);
    }
}
