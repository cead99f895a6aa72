//! Random instances that satisfy each theorem's hypotheses by construction.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::function::Interval;
use crate::majorization::{RealTuple, WeightVector};
use crate::operator::random::{
    complex_gaussian, random_hermitian_with_spectrum, random_unitary, random_weights,
    uniform_spectrum,
};
use crate::operator::{apply_map_family, DensityMatrix, HermitianMatrix, MapFamily, Matrix};

/// Redraw cap for rejection steps.
pub const MAX_REDRAWS: usize = 100_000;
/// Sinkhorn iterations always performed.
pub const SINKHORN_MIN_ITERS: usize = 200;
const SINKHORN_MAX_ITERS: usize = 10_000;
const SINKHORN_TOL: f64 = 1e-13;

/// Constructions of `(A_i, B_i, Φ)` with `Σ Φ_i(A_i) = Σ Φ_i(B_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Identical maps `X ↦ U*XU/n`, `B` a permutation of `A`.
    UniformPermutation,
    /// Identical maps `X ↦ U*XU/n`, `B_i = Σ_j s_ij A_j` with `S` doubly
    /// stochastic.
    DoublyStochasticMix,
    /// `X ↦ p_i Tr(X)/dim` with `Tr A_i = Tr B_i`.
    NormalizedTrace,
    /// `A_i` with eigenvalues at `m` or `M` in a common basis and every
    /// `B_i = Σ_j p_j A_j`; the near-extremal configuration for β.
    EndpointMix,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::UniformPermutation,
        FamilyKind::DoublyStochasticMix,
        FamilyKind::NormalizedTrace,
        FamilyKind::EndpointMix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::UniformPermutation => "uniform_permutation",
            FamilyKind::DoublyStochasticMix => "doubly_stochastic_mix",
            FamilyKind::NormalizedTrace => "normalized_trace",
            FamilyKind::EndpointMix => "endpoint_mix",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            domain(format!(
                "unknown family kind `{s}` (expected one of {})",
                Self::ALL.map(|k| k.name()).join(", ")
            ))
        })
    }
}

/// Equal weighted means `Σ p_i x_i = Σ p_i y_i` with entries in `[m, M]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarInstance {
    pub p: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl ScalarInstance {
    pub fn mean_gap(&self) -> f64 {
        let dot = |v: &[f64]| self.p.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
        dot(&self.x) - dot(&self.y)
    }
}

/// Draws `y` and all but one coordinate of `x` freely, then solves for the
/// remaining coordinate (the one with the largest weight); redraws while it
/// falls outside `[m, M]`.
pub fn gen_equal_weighted_mean_scalars<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    iv: &Interval,
) -> Result<ScalarInstance> {
    if n < 2 {
        return Err(domain("need n >= 2"));
    }
    let p = random_weights(rng, n);
    let k = (0..n).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap_or(0);
    for _ in 0..MAX_REDRAWS {
        let y = uniform_spectrum(rng, n, iv);
        let mut x = uniform_spectrum(rng, n, iv);
        let target: f64 = p.iter().zip(&y).map(|(a, b)| a * b).sum();
        let rest: f64 = (0..n).filter(|&j| j != k).map(|j| p[j] * x[j]).sum();
        let xk = (target - rest) / p[k];
        if iv.contains(xk, 0.0) {
            x[k] = xk;
            return Ok(ScalarInstance { p, x, y });
        }
    }
    Err(Error::GeneratorExhausted {
        attempts: MAX_REDRAWS,
        what: format!("equal weighted means with n = {n} on {iv}"),
    })
}

/// `y` at the endpoints of `[m, M]` and every `x_i = Σ p_j y_j`: the
/// reverse-Jensen special case, tight whenever the mean sits at the argmax.
pub fn gen_endpoint_scalars<R: Rng + ?Sized>(rng: &mut R, n: usize, iv: &Interval) -> ScalarInstance {
    let p = random_weights(rng, n);
    let y: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { iv.lo() } else { iv.hi() }).collect();
    let mean = p.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>().clamp(iv.lo(), iv.hi());
    ScalarInstance { x: vec![mean; n], p, y }
}

/// Row-stochastic `S` with `Σ_i p_i s_ij = p_j`, via Sinkhorn scaling of a
/// positive random matrix toward marginals `(p, p)`.
pub fn gen_weighted_stochastic<R: Rng + ?Sized>(rng: &mut R, p: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = p.len();
    let mut t: Vec<Vec<f64>> =
        (0..n).map(|_| (0..n).map(|_| rng.random_range(0.05..1.0)).collect()).collect();
    let mut iter = 0;
    loop {
        for (row, &pi) in t.iter_mut().zip(p) {
            let s: f64 = row.iter().sum();
            row.iter_mut().for_each(|v| *v *= pi / s);
        }
        for (j, &pj) in p.iter().enumerate() {
            let s: f64 = t.iter().map(|row| row[j]).sum();
            t.iter_mut().for_each(|row| row[j] *= pj / s);
        }
        iter += 1;
        let resid = t
            .iter()
            .zip(p)
            .map(|(row, &pi)| (row.iter().sum::<f64>() - pi).abs())
            .fold(0.0, f64::max);
        if iter >= SINKHORN_MIN_ITERS && resid < SINKHORN_TOL {
            break;
        }
        if iter >= SINKHORN_MAX_ITERS {
            return Err(Error::GeneratorExhausted {
                attempts: iter,
                what: format!("Sinkhorn scaling stalled at residual {resid:e}"),
            });
        }
    }
    Ok(t.into_iter()
        .zip(p)
        .map(|(row, &pi)| row.into_iter().map(|v| v / pi).collect())
        .collect())
}

/// `B_i = Σ_j s_ij A_j`.
pub fn mix(s: &[Vec<f64>], a: &[HermitianMatrix]) -> Result<Vec<HermitianMatrix>> {
    s.iter()
        .map(|row| {
            let mut acc = HermitianMatrix::zeros(a[0].dim());
            for (w, aj) in row.iter().zip(a) {
                acc = acc.add(&aj.scale(*w))?;
            }
            Ok(acc)
        })
        .collect()
}

/// Eigenvalues in `[m, M]` summing to `target`: a uniform draw shifted by
/// the bisection root of `c ↦ Σ clamp(λ_j + c, m, M) - target`.
pub fn equal_trace_spectrum<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    iv: &Interval,
    target: f64,
) -> Result<Vec<f64>> {
    let (m, big_m) = (iv.lo(), iv.hi());
    if target < n as f64 * m - 1e-12 || target > n as f64 * big_m + 1e-12 {
        return Err(domain(format!("trace {target} is unreachable with {n} eigenvalues in {iv}")));
    }
    let raw = uniform_spectrum(rng, n, iv);
    let total = |c: f64| raw.iter().map(|l| (l + c).clamp(m, big_m)).sum::<f64>();
    let (mut lo, mut hi) = (m - big_m, big_m - m);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = 0.5 * (lo + hi);
    let mut out: Vec<f64> = raw.iter().map(|l| (l + c).clamp(m, big_m)).collect();
    // spread the last rounding residual over an entry with room to move
    let resid = target - out.iter().sum::<f64>();
    if let Some(j) = (0..n).find(|&j| (out[j] + resid) >= m && (out[j] + resid) <= big_m) {
        out[j] += resid;
    }
    Ok(out)
}

/// Operators `A_i`, `B_i` with spectra in `[m, M]` and a unital map family
/// with equal map sums.
#[derive(Debug, Clone)]
pub struct MapSumInstance {
    pub kind: FamilyKind,
    pub family: MapFamily,
    pub a: Vec<HermitianMatrix>,
    pub b: Vec<HermitianMatrix>,
}

impl MapSumInstance {
    /// `‖Σ Φ_i(A_i) - Σ Φ_i(B_i)‖_F`.
    pub fn residual(&self) -> Result<f64> {
        let sa = apply_map_family(&self.family, &self.a)?;
        let sb = apply_map_family(&self.family, &self.b)?;
        Ok(sa.sub(&sb)?.frobenius_norm())
    }
}

fn random_in<R: Rng + ?Sized>(rng: &mut R, dim: usize, iv: &Interval) -> Result<HermitianMatrix> {
    let spectrum = uniform_spectrum(rng, dim, iv);
    random_hermitian_with_spectrum(rng, &spectrum)
}

pub fn gen_equal_map_sum_operators<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    dim: usize,
    iv: &Interval,
    kind: FamilyKind,
) -> Result<MapSumInstance> {
    if n == 0 || dim == 0 {
        return Err(domain("need n >= 1 and dim >= 1"));
    }
    let uniform = vec![1.0 / n as f64; n];
    let (family, a, b) = match kind {
        FamilyKind::UniformPermutation => {
            let u = random_unitary(rng, dim);
            let family = MapFamily::conjugations(&uniform, vec![u; n])?;
            let a = (0..n).map(|_| random_in(rng, dim, iv)).collect::<Result<Vec<_>>>()?;
            let mut b = a.clone();
            b.shuffle(rng);
            (family, a, b)
        }
        FamilyKind::DoublyStochasticMix => {
            let u = random_unitary(rng, dim);
            let family = MapFamily::conjugations(&uniform, vec![u; n])?;
            let a = (0..n).map(|_| random_in(rng, dim, iv)).collect::<Result<Vec<_>>>()?;
            let s = gen_weighted_stochastic(rng, &uniform)?;
            let b = mix(&s, &a)?;
            (family, a, b)
        }
        FamilyKind::NormalizedTrace => {
            let p = random_weights(rng, n);
            let family = MapFamily::normalized_trace(&p, dim)?;
            let mut a = Vec::with_capacity(n);
            let mut b = Vec::with_capacity(n);
            for _ in 0..n {
                let sa = uniform_spectrum(rng, dim, iv);
                let sb = equal_trace_spectrum(rng, dim, iv, sa.iter().sum())?;
                a.push(random_hermitian_with_spectrum(rng, &sa)?);
                b.push(random_hermitian_with_spectrum(rng, &sb)?);
            }
            (family, a, b)
        }
        FamilyKind::EndpointMix => {
            let p = random_weights(rng, n);
            let u = random_unitary(rng, dim);
            let family = MapFamily::conjugations(&p, vec![u; n])?;
            let basis = random_unitary(rng, dim).adjoint();
            let a = (0..n)
                .map(|_| {
                    let d: Vec<f64> = (0..dim)
                        .map(|_| if rng.random_bool(0.5) { iv.lo() } else { iv.hi() })
                        .collect();
                    HermitianMatrix::from_real_diag(&d)?.congruence(&basis)
                })
                .collect::<Result<Vec<_>>>()?;
            let s: Vec<Vec<f64>> = vec![p.clone(); n];
            let b = mix(&s, &a)?;
            (family, a, b)
        }
    };
    Ok(MapSumInstance { kind, family, a, b })
}

/// A random unital family of one of the three map kinds, for checks that
/// need no equal-sum pairing.
pub fn gen_unital_family<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize, which: usize) -> Result<MapFamily> {
    match which % 3 {
        0 => {
            let p = random_weights(rng, n);
            let us = (0..n).map(|_| random_unitary(rng, dim)).collect();
            MapFamily::conjugations(&p, us)
        }
        1 => {
            let out = rng.random_range(1..=dim);
            let seeds: Vec<Vec<Matrix>> = (0..n)
                .map(|_| {
                    let k = rng.random_range(1..=2);
                    (0..k).map(|_| complex_gaussian(rng, dim, out)).collect()
                })
                .collect();
            crate::operator::maps::normalize_kraus(seeds, dim)
        }
        _ => MapFamily::normalized_trace(&random_weights(rng, n), dim),
    }
}

/// Decreasing `y`, positive `p`, and `x` obtained from `y` by partial
/// transfers: an adjacent pair moves toward its `p`-weighted mean, which
/// keeps `x` decreasing, lowers one prefix sum and preserves the total.
pub fn gen_fuchs_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    iv: &Interval,
) -> Result<(RealTuple, RealTuple, WeightVector)> {
    if n == 0 {
        return Err(domain("need n >= 1"));
    }
    let mut y = uniform_spectrum(rng, n, iv);
    y.sort_by(|a, b| b.total_cmp(a));
    let p = random_weights(rng, n);
    let mut x = y.clone();
    if n > 1 {
        for _ in 0..rng.random_range(1..=3 * n) {
            let i = rng.random_range(0..n - 1);
            let (pi, pj) = (p[i], p[i + 1]);
            let mu = (pi * x[i] + pj * x[i + 1]) / (pi + pj);
            let lambda: f64 = rng.random();
            x[i] += lambda * (mu - x[i]);
            x[i + 1] += lambda * (mu - x[i + 1]);
            // rounding can invert the pair by an ulp
            if x[i] < x[i + 1] {
                x[i + 1] = x[i];
            }
        }
    }
    Ok((RealTuple::new(x)?, RealTuple::new(y)?, WeightVector::probability(p)?))
}

/// `Z > 0`, weights `p` and `A_i`, `B_i` with spectra in `[m, M]` and
/// `Σ p_i A_i = Σ p_i B_i`; `X_i = Z^{1/2} A_i Z^{1/2}` and likewise `Y_i`,
/// so that `mZ ≤ X_i, Y_i ≤ MZ`.
#[derive(Debug, Clone)]
pub struct MeanInstance {
    pub z: HermitianMatrix,
    pub p: Vec<f64>,
    pub a: Vec<HermitianMatrix>,
    pub b: Vec<HermitianMatrix>,
    pub x: Vec<HermitianMatrix>,
    pub y: Vec<HermitianMatrix>,
}

pub fn gen_mean_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    dim: usize,
    iv: &Interval,
    endpoint: bool,
) -> Result<MeanInstance> {
    if !(iv.lo() > 0.0) {
        return Err(domain(format!("operator means need m > 0, got {iv}")));
    }
    let z_iv = Interval::new(0.5, 2.0)?;
    let z = random_in(rng, dim, &z_iv)?;
    let (_, z_half) = {
        let (s, _) = crate::operator::calculus::sqrt_and_inv_sqrt(&z)?;
        ((), s)
    };
    let kind = if endpoint { FamilyKind::EndpointMix } else { FamilyKind::DoublyStochasticMix };
    let (p, a, b) = if endpoint {
        let inst = gen_equal_map_sum_operators(rng, n, dim, iv, kind)?;
        let p = inst
            .family
            .maps()
            .iter()
            .map(|m| match m {
                crate::operator::PositiveMap::WeightedConjugation { weight, .. } => *weight,
                _ => unreachable!("endpoint family uses conjugations"),
            })
            .collect();
        (p, inst.a, inst.b)
    } else {
        let p = random_weights(rng, n);
        let a = (0..n).map(|_| random_in(rng, dim, iv)).collect::<Result<Vec<_>>>()?;
        let s = gen_weighted_stochastic(rng, &p)?;
        let b = mix(&s, &a)?;
        (p, a, b)
    };
    let lift = |v: &[HermitianMatrix]| -> Result<Vec<HermitianMatrix>> {
        v.iter().map(|m| m.congruence(z_half.as_matrix())).collect()
    };
    let x = lift(&a)?;
    let y = lift(&b)?;
    Ok(MeanInstance { z, p, a, b, x, y })
}

/// Density matrix of the given rank (Ginibre with `rank` columns).
pub fn gen_density_of_rank<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<DensityMatrix> {
    let g = complex_gaussian(rng, dim, rank.clamp(1, dim));
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(HermitianMatrix::hermitize(gg.scale(1.0 / tr))?)
}

/// Unit vectors for the Jensen-type lemma: the standard basis followed by
/// `random` Haar vectors.
pub fn lemma_vectors<R: Rng + ?Sized>(rng: &mut R, dim: usize, random: usize) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = (0..dim)
        .map(|k| {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[k] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    out.extend((0..random).map(|_| crate::operator::random::random_unit_vector(rng, dim)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorization::is_p_majorized;
    use crate::operator::spectrum_in;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn weighted_means_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let iv = Interval::new(0.5, 3.0).unwrap();
        for n in 2..8 {
            for _ in 0..200 {
                let s = gen_equal_weighted_mean_scalars(&mut rng, n, &iv).unwrap();
                assert!(s.mean_gap().abs() <= 1e-12);
                assert!(s.x.iter().chain(&s.y).all(|v| iv.contains(*v, 0.0)));
            }
        }
    }

    #[test]
    fn sinkhorn_marginals() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = random_weights(&mut rng, 5);
        let s = gen_weighted_stochastic(&mut rng, &p).unwrap();
        for row in &s {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        for j in 0..5 {
            let col: f64 = (0..5).map(|i| p[i] * s[i][j]).sum();
            assert!((col - p[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_map_sums_for_every_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let iv = Interval::new(0.2, 4.0).unwrap();
        for kind in FamilyKind::ALL {
            for n in 1..4 {
                let inst = gen_equal_map_sum_operators(&mut rng, n, 4, &iv, kind).unwrap();
                assert!(inst.residual().unwrap() <= 1e-10, "{kind:?}");
                for m in inst.a.iter().chain(&inst.b) {
                    assert!(spectrum_in(m, &iv).unwrap());
                }
            }
        }
    }

    #[test]
    fn fuchs_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let iv = Interval::new(-2.0, 3.0).unwrap();
        for n in 1..8 {
            for _ in 0..200 {
                let (x, y, p) = gen_fuchs_instance(&mut rng, n, &iv).unwrap();
                assert!(is_p_majorized(&x, &y, &p).unwrap());
            }
        }
    }

    #[test]
    fn equal_trace_hits_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let iv = Interval::new(0.0, 1.0).unwrap();
        let s = equal_trace_spectrum(&mut rng, 6, &iv, 1.0).unwrap();
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(equal_trace_spectrum(&mut rng, 2, &iv, 3.0).is_err());
    }

    #[test]
    fn mean_instances_satisfy_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let iv = Interval::new(0.3, 2.5).unwrap();
        for endpoint in [false, true] {
            let inst = gen_mean_instance(&mut rng, 3, 3, &iv, endpoint).unwrap();
            let mut sa = HermitianMatrix::zeros(3);
            let mut sb = HermitianMatrix::zeros(3);
            for i in 0..3 {
                sa = sa.add(&inst.a[i].scale(inst.p[i])).unwrap();
                sb = sb.add(&inst.b[i].scale(inst.p[i])).unwrap();
                // mZ ≤ X_i ≤ MZ
                let lo = inst.x[i].sub(&inst.z.scale(iv.lo())).unwrap();
                let hi = inst.z.scale(iv.hi()).sub(&inst.x[i]).unwrap();
                assert!(crate::operator::lambda_min(&lo).unwrap() >= -1e-10);
                assert!(crate::operator::lambda_min(&hi).unwrap() >= -1e-10);
            }
            assert!(sa.sub(&sb).unwrap().frobenius_norm() < 1e-12);
        }
    }
}
