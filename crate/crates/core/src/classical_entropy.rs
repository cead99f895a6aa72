//! Shannon and Tsallis entropies of finite distributions and the reverse
//! information inequalities.

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, precondition, Error, Result};
use crate::scalar_bounds::{ln_r, log_specht, ls_r_constant};

/// Tolerance on `Σ p_i = 1`.
pub const SUM_TOL: f64 = 1e-12;
/// Tolerance used when validating a [`ConditionTag`].
pub const TAG_TOL: f64 = 1e-12;
/// Attempt cap of [`gen_conditioned_pair`].
pub const MAX_PAIR_ATTEMPTS: usize = 100_000;
const REJECTION_ATTEMPTS: usize = 256;

/// A finite probability distribution, optionally with every entry in
/// `[floor, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
    floor: Option<f64>,
}

impl ProbVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(domain("probability vector must be non-empty"));
        }
        if let Some(v) = probs.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(domain(format!("probabilities must be finite and >= 0, got {v}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(domain(format!("probabilities must sum to 1, got {total}")));
        }
        Ok(Self { probs, floor: None })
    }

    /// A distribution whose entries all lie in `[floor, 1]`.
    pub fn with_floor(probs: Vec<f64>, floor: f64) -> Result<Self> {
        if !(floor > 0.0 && floor < 1.0) {
            return Err(domain(format!("floor must lie in (0, 1), got {floor}")));
        }
        let mut p = Self::new(probs)?;
        if let Some(v) = p.probs.iter().find(|v| **v < floor) {
            return Err(domain(format!("entry {v} is below the floor {floor}")));
        }
        p.floor = Some(floor);
        Ok(p)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("probability vector must be non-empty"));
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    #[inline]
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    #[inline]
    pub fn floor(&self) -> Option<f64> {
        self.floor
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Which inner product dominates for a pair `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionTag {
    /// `Σ p_i q_i ≤ Σ p_i²`
    SelfDominated,
    /// `Σ p_i² ≤ Σ p_i q_i`
    CrossDominated,
}

impl ConditionTag {
    pub fn holds(self, p: &ProbVector, q: &ProbVector) -> Result<bool> {
        same_len(p, q)?;
        let self_ip: f64 = p.probs.iter().map(|v| v * v).sum();
        let cross_ip: f64 = p.probs.iter().zip(&q.probs).map(|(a, b)| a * b).sum();
        Ok(match self {
            ConditionTag::SelfDominated => cross_ip <= self_ip + TAG_TOL,
            ConditionTag::CrossDominated => self_ip <= cross_ip + TAG_TOL,
        })
    }
}

fn same_len(p: &ProbVector, q: &ProbVector) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::Shape(format!(
            "distributions have lengths {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(())
}

/// `-Σ p_i log p_i` with `0 log 0 = 0`.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    -p.probs.iter().filter(|v| **v > 0.0).map(|v| v * v.ln()).sum::<f64>()
}

/// `-Σ p_i log q_i`; `+∞` when some `q_i = 0` carries positive `p_i`.
pub fn cross_term(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    same_len(p, q)?;
    let mut acc = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc -= a * b.ln();
    }
    Ok(acc)
}

/// `Σ p_i ln_r(1/q_i)` for any finite `r`; `+∞` on unsupported mass.
fn lnr_cross(p: &ProbVector, q: &ProbVector, r: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += a * ln_r(r, 1.0 / b)?;
    }
    Ok(acc)
}

/// `-Σ p_i^{1-r} ln_r q_i`.
fn weighted_lnr_cross(p: &ProbVector, q: &ProbVector, r: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc -= a.powf(1.0 - r) * ln_r(r, b)?;
    }
    Ok(acc)
}

fn check_tsallis_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(domain(format!("Tsallis parameter must lie in (0, 1], got {r}")));
    }
    Ok(())
}

/// Tsallis entropy `-Σ p_i^{1-r} ln_r p_i`, cross-checked against the
/// equivalent form `Σ p_i ln_r(1/p_i)`.
pub fn tsallis_entropy(p: &ProbVector, r: f64) -> Result<f64> {
    check_tsallis_r(r)?;
    let first = weighted_lnr_cross(p, p, r)?;
    let second = lnr_cross(p, p, r)?;
    let gap = (first - second).abs();
    if gap > 1e-8 {
        return Err(Error::Consistency(format!(
            "Tsallis entropy forms disagree by {gap:e} at r = {r}"
        )));
    }
    Ok(first)
}

/// The two `r`-deformed cross terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TsallisCross {
    /// `-Σ p_i^{1-r} ln_r q_i`
    pub weighted: f64,
    /// `Σ p_i ln_r(1/q_i)`
    pub naive: f64,
}

pub fn tsallis_cross_terms(p: &ProbVector, q: &ProbVector, r: f64) -> Result<TsallisCross> {
    same_len(p, q)?;
    if !r.is_finite() {
        return Err(domain(format!("parameter must be finite, got {r}")));
    }
    Ok(TsallisCross { weighted: weighted_lnr_cross(p, q, r)?, naive: lnr_cross(p, q, r)? })
}

/// `cross_term(p, q) - H(p)`, non-negative by Gibbs' inequality.
pub fn information_inequality_margin(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    Ok(cross_term(p, q)? - shannon_entropy(p))
}

/// `-Σ p^{1-r} ln_r q - (-Σ p^{1-r} ln_r p)`, the deformed Gibbs margin.
pub fn tsallis_information_margin(p: &ProbVector, q: &ProbVector, r: f64) -> Result<f64> {
    let cross = tsallis_cross_terms(p, q, r)?;
    Ok(cross.weighted - weighted_lnr_cross(p, p, r)?)
}

/// Margins of a ratio-type and a difference-type reverse inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReverseMargins {
    pub ratio: f64,
    pub diff: f64,
}

fn validate_pair(p: &ProbVector, q: &ProbVector, eps: f64, tag: ConditionTag) -> Result<()> {
    same_len(p, q)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    let lowest = p.min().min(q.min());
    if lowest < eps - 1e-15 {
        return Err(precondition(format!("entry {lowest} lies below eps = {eps}")));
    }
    if !tag.holds(p, q)? {
        return Err(precondition(format!("condition {tag:?} does not hold for the pair")));
    }
    Ok(())
}

/// Reverse information inequalities on `[eps, 1]` with `K = log ε/(ε-1)`
/// and `C = log S(ε)`.
///
/// `CrossDominated`: `cross/K ≤ H(p)` and `cross - C ≤ H(p)`.
/// `SelfDominated`: `H(p) ≤ K·cross` and `H(p) ≤ C + cross`.
pub fn reverse_shannon_margins(
    p: &ProbVector,
    q: &ProbVector,
    eps: f64,
    tag: ConditionTag,
) -> Result<ReverseMargins> {
    validate_pair(p, q, eps, tag)?;
    let k = eps.ln() / (eps - 1.0);
    let c = log_specht(eps)?;
    let h = shannon_entropy(p);
    let x = cross_term(p, q)?;
    Ok(reverse_margins(tag, h, x, k, c))
}

fn reverse_margins(tag: ConditionTag, h: f64, x: f64, k: f64, c: f64) -> ReverseMargins {
    match tag {
        ConditionTag::CrossDominated => ReverseMargins { ratio: h - x / k, diff: h - (x - c) },
        ConditionTag::SelfDominated => ReverseMargins { ratio: k * x - h, diff: c + x - h },
    }
}

/// `r`-deformed analogue of [`reverse_shannon_margins`] on
/// `H_r = Σ p ln_r(1/p)` and `X = Σ p ln_r(1/q)` with
/// `c₁ = ln_r(1/ε)/(1-ε)` and `c₂ = ls_r(ε)`.
pub fn parametric_reverse_margins(
    p: &ProbVector,
    q: &ProbVector,
    eps: f64,
    r: f64,
    tag: ConditionTag,
) -> Result<ReverseMargins> {
    validate_pair(p, q, eps, tag)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(domain(format!("r must be positive, got {r}")));
    }
    let c1 = ln_r(r, 1.0 / eps)? / (1.0 - eps);
    let c2 = ls_r_constant(eps, r)?;
    let h = lnr_cross(p, p, r)?;
    let x = lnr_cross(p, q, r)?;
    Ok(reverse_margins(tag, h, x, c1, c2))
}

/// Draws a distribution of length `n` with every entry in `[floor, 1]`:
/// `floor + (1 - n·floor)·d` with `d` uniform on the simplex.
pub fn gen_floored<R: Rng + ?Sized>(rng: &mut R, n: usize, floor: f64) -> Result<ProbVector> {
    if n == 0 || !(floor > 0.0) || floor * n as f64 > 1.0 {
        return Err(domain(format!("cannot floor {n} entries at {floor}")));
    }
    let draws: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1) + 1e-300).collect();
    let total: f64 = draws.iter().sum();
    let slack = 1.0 - floor * n as f64;
    let mut probs: Vec<f64> = draws.iter().map(|d| floor + slack * d / total).collect();
    // push the rounding residual into the largest entry
    let resid = 1.0 - probs.iter().sum::<f64>();
    let imax = (0..n).max_by(|&a, &b| probs[a].total_cmp(&probs[b])).unwrap_or(0);
    probs[imax] += resid;
    ProbVector::with_floor(probs, floor)
}

/// Draws `(p, q)` with entries in `[floor, 1]` satisfying `tag`.
///
/// Plain rejection sampling is tried first. When the floor leaves little
/// slack it rarely succeeds, so the fallback steps from `p` along
/// `±(p - u) + b·w` with `u` uniform and `w ⊥ {1, p}`; the step keeps the
/// total, changes `Σ p_i q_i - Σ p_i²` only through the `p - u` part (whose
/// sign is fixed by `tag`) and is shortened to respect the floor.
pub fn gen_conditioned_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    floor: f64,
    tag: ConditionTag,
) -> Result<(ProbVector, ProbVector)> {
    let p = gen_floored(rng, n, floor)?;
    for _ in 0..REJECTION_ATTEMPTS {
        let q = gen_floored(rng, n, floor)?;
        if tag.holds(&p, &q)? {
            return Ok((p, q));
        }
    }
    for _ in 0..MAX_PAIR_ATTEMPTS {
        if let Some(q) = step_from(rng, &p, floor, tag)? {
            if tag.holds(&p, &q)? {
                return Ok((p, q));
            }
        }
    }
    Err(Error::GeneratorExhausted {
        attempts: MAX_PAIR_ATTEMPTS,
        what: format!("{tag:?} pair with n = {n}, floor = {floor}"),
    })
}

fn step_from<R: Rng + ?Sized>(
    rng: &mut R,
    p: &ProbVector,
    floor: f64,
    tag: ConditionTag,
) -> Result<Option<ProbVector>> {
    let n = p.len();
    let u = 1.0 / n as f64;
    let pv = &p.probs;
    // w: centered Gaussian draw with the p-component removed
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let centered: Vec<f64> = pv.iter().map(|v| v - u).collect();
    let mean = w.iter().sum::<f64>() / n as f64;
    w.iter_mut().for_each(|v| *v -= mean);
    let cc: f64 = centered.iter().map(|v| v * v).sum();
    if cc > 0.0 {
        let proj = w.iter().zip(&centered).map(|(a, b)| a * b).sum::<f64>() / cc;
        w.iter_mut().zip(&centered).for_each(|(v, c)| *v -= proj * c);
    }
    let sign = match tag {
        ConditionTag::CrossDominated => 1.0,
        ConditionTag::SelfDominated => -1.0,
    };
    let a: f64 = rng.random::<f64>() * 4.0;
    let b: f64 = rng.random::<f64>() * cc.sqrt().max(1e-3);
    let d: Vec<f64> = centered.iter().zip(&w).map(|(c, wv)| sign * a * c + b * wv).collect();
    let t_max = pv
        .iter()
        .zip(&d)
        .filter(|(_, di)| **di < 0.0)
        .map(|(pi, di)| (pi - floor) / -di)
        .fold(f64::INFINITY, f64::min);
    if !t_max.is_finite() || t_max <= 0.0 {
        return Ok(None);
    }
    let t = rng.random::<f64>() * t_max.min(1.0);
    let mut q: Vec<f64> = pv.iter().zip(&d).map(|(pi, di)| (pi + t * di).max(floor)).collect();
    let resid = 1.0 - q.iter().sum::<f64>();
    let imax = (0..n).max_by(|&i, &j| q[i].total_cmp(&q[j])).unwrap_or(0);
    q[imax] += resid;
    Ok(ProbVector::with_floor(q, floor).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pv(v: &[f64]) -> ProbVector {
        ProbVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shannon_examples() {
        assert!((shannon_entropy(&ProbVector::uniform(4).unwrap()) - 4f64.ln()).abs() < 1e-15);
        assert_eq!(shannon_entropy(&pv(&[1.0, 0.0, 0.0])), 0.0);
        assert!((shannon_entropy(&pv(&[1.0 / 3.0; 3])) - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn cross_term_examples() {
        let p = pv(&[1.0 / 3.0; 3]);
        let q = pv(&[1.0 / 6.0, 1.0 / 3.0, 0.5]);
        let expect = (6f64.ln() + 3f64.ln() + 2f64.ln()) / 3.0;
        assert!((cross_term(&p, &q).unwrap() - expect).abs() < 1e-15);
        assert!((cross_term(&p, &p).unwrap() - shannon_entropy(&p)).abs() < 1e-15);
        let m = information_inequality_margin(&pv(&[1.0, 0.0]), &pv(&[0.5, 0.5])).unwrap();
        assert!((m - 2f64.ln()).abs() < 1e-15);
        assert_eq!(cross_term(&pv(&[0.5, 0.5]), &pv(&[1.0, 0.0])).unwrap(), f64::INFINITY);
    }

    #[test]
    fn tsallis_examples() {
        assert_eq!(tsallis_entropy(&pv(&[0.0, 1.0]), 0.4).unwrap(), 0.0);
        for n in [2usize, 5, 9] {
            let u = ProbVector::uniform(n).unwrap();
            let h = tsallis_entropy(&u, 0.3).unwrap();
            assert!((h - ln_r(0.3, n as f64).unwrap()).abs() < 1e-12);
        }
        let p = pv(&[0.1, 0.2, 0.7]);
        assert!((tsallis_entropy(&p, 1e-6).unwrap() - shannon_entropy(&p)).abs() < 1e-4);
        assert!(tsallis_entropy(&p, 0.0).is_err());
        assert!(tsallis_entropy(&p, 1.5).is_err());
    }

    #[test]
    fn tsallis_cross_forms_differ() {
        let p = pv(&[0.5, 0.5]);
        let q = pv(&[0.25, 0.75]);
        let c = tsallis_cross_terms(&p, &q, 0.5).unwrap();
        assert!((c.weighted - c.naive).abs() > 1e-3);
        let same = tsallis_cross_terms(&p, &p, 0.5).unwrap();
        let h = tsallis_entropy(&p, 0.5).unwrap();
        assert!((same.weighted - h).abs() < 1e-14 && (same.naive - h).abs() < 1e-14);
        let lim = tsallis_cross_terms(&p, &q, 1e-9).unwrap();
        let x = cross_term(&p, &q).unwrap();
        assert!((lim.weighted - x).abs() < 1e-6 && (lim.naive - x).abs() < 1e-6);
    }

    #[test]
    fn explicit_pairs_satisfy_reverses() {
        let p = ProbVector::with_floor(vec![1.0 / 3.0; 3], 1.0 / 6.0).unwrap();
        let q = ProbVector::with_floor(vec![1.0 / 6.0, 1.0 / 3.0, 0.5], 1.0 / 6.0).unwrap();
        // equality case: both tags hold
        assert!(ConditionTag::SelfDominated.holds(&p, &q).unwrap());
        let m = reverse_shannon_margins(&p, &q, 1.0 / 6.0, ConditionTag::CrossDominated).unwrap();
        assert!(m.ratio >= 0.0 && m.diff >= 0.0, "{m:?}");
        let m = parametric_reverse_margins(&p, &q, 1.0 / 6.0, 0.5, ConditionTag::CrossDominated)
            .unwrap();
        assert!(m.ratio >= 0.0 && m.diff >= 0.0, "{m:?}");

        let p = pv(&[0.25, 0.25, 0.5]);
        let q = pv(&[0.1, 0.1, 0.8]);
        assert!(!ConditionTag::SelfDominated.holds(&p, &q).unwrap());
        let m = reverse_shannon_margins(&p, &q, 0.1, ConditionTag::CrossDominated).unwrap();
        assert!(m.ratio >= 0.0 && m.diff >= 0.0, "{m:?}");
    }

    #[test]
    fn equal_pair_ratio_margin_is_excess_of_k() {
        let p = pv(&[0.2, 0.3, 0.5]);
        let eps = 0.2;
        let m = reverse_shannon_margins(&p, &p, eps, ConditionTag::SelfDominated).unwrap();
        let k = eps.ln() / (eps - 1.0);
        assert!((m.ratio - (k - 1.0) * shannon_entropy(&p)).abs() < 1e-14);
        let m = parametric_reverse_margins(&p, &p, eps, 0.7, ConditionTag::SelfDominated).unwrap();
        assert!(m.ratio >= 0.0 && m.diff >= 0.0);
    }

    #[test]
    fn parametric_reduces_to_shannon() {
        let p = pv(&[0.25, 0.25, 0.5]);
        let q = pv(&[0.1, 0.1, 0.8]);
        let tag = ConditionTag::CrossDominated;
        let a = reverse_shannon_margins(&p, &q, 0.1, tag).unwrap();
        let b = parametric_reverse_margins(&p, &q, 0.1, 1e-6, tag).unwrap();
        assert!((a.ratio - b.ratio).abs() < 1e-4 && (a.diff - b.diff).abs() < 1e-4);
    }

    #[test]
    fn tag_and_floor_are_validated() {
        let p = pv(&[0.25, 0.25, 0.5]);
        let q = pv(&[0.1, 0.1, 0.8]);
        let err = reverse_shannon_margins(&p, &q, 0.1, ConditionTag::SelfDominated).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = reverse_shannon_margins(&p, &q, 0.2, ConditionTag::CrossDominated).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn generator_respects_floor_and_tag() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for tag in [ConditionTag::SelfDominated, ConditionTag::CrossDominated] {
            for _ in 0..200 {
                let (p, q) = gen_conditioned_pair(&mut rng, 5, 0.05, tag).unwrap();
                assert!(p.min() >= 0.05 && q.min() >= 0.05);
                assert!(tag.holds(&p, &q).unwrap());
            }
        }
    }

    fn simplex(n: usize) -> impl Strategy<Value = ProbVector> {
        prop::collection::vec(0.0f64..1.0, n).prop_filter_map("degenerate", |v| {
            let s: f64 = v.iter().sum();
            if s < 1e-6 {
                return None;
            }
            let mut p: Vec<f64> = v.iter().map(|x| x / s).collect();
            let resid = 1.0 - p.iter().sum::<f64>();
            p[0] += resid;
            ProbVector::new(p).ok()
        })
    }

    proptest! {
        #[test]
        fn shannon_bounds(p in simplex(6)) {
            let h = shannon_entropy(&p);
            prop_assert!(h >= -1e-15 && h <= 6f64.ln() + 1e-12);
        }

        #[test]
        fn gibbs_and_deformed_gibbs(p in simplex(5), q in simplex(5), r in 0.01f64..1.0) {
            prop_assume!(q.min() > 1e-9);
            prop_assert!(information_inequality_margin(&p, &q).unwrap() >= -1e-10);
            prop_assert!(tsallis_information_margin(&p, &q, r).unwrap() >= -1e-10);
            prop_assert!(tsallis_entropy(&p, r).unwrap() >= -1e-12);
        }
    }
}
