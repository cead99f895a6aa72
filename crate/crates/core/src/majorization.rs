//! Majorization, Fuchs' weighted (`p`-)majorization and the Karamata-type
//! margins built on them.

use crate::error::{domain, precondition, Error, Result};
use crate::function::{Curvature, FunctionKind, FunctionSpec, Interval};

/// Absolute prefix-sum tolerance, applied after scaling by `max(1, ‖y‖∞)`.
pub const PREFIX_TOL: f64 = 1e-10;

/// A finite, non-empty tuple of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTuple(Vec<f64>);

impl RealTuple {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("tuple must have at least one entry"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(domain(format!("tuple entries must be finite, got {v}")));
        }
        Ok(Self(values))
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    fn sup_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    fn hull(&self) -> (f64, f64) {
        self.0
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}

/// Weights attached to the entries of a tuple.
///
/// Fuchs' theorem allows arbitrary real weights; the moment application and
/// the probability-weighted checks need a probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(domain("weight vector must be non-empty"));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(domain(format!("weights must be finite, got {w}")));
        }
        Ok(Self(weights))
    }

    /// Strictly positive weights summing to one within `1e-12`.
    pub fn probability(weights: Vec<f64>) -> Result<Self> {
        let w = Self::new(weights)?;
        if let Some(v) = w.0.iter().find(|v| !(**v > 0.0)) {
            return Err(domain(format!("probability weights must be positive, got {v}")));
        }
        let total: f64 = w.0.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(domain(format!("probability weights must sum to 1, got {total}")));
        }
        Ok(w)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("weight vector must be non-empty"));
        }
        Self::probability(vec![1.0 / n as f64; n])
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn same_len(a: usize, b: usize, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::Shape(format!("{what}: lengths {a} and {b} differ")));
    }
    Ok(())
}

/// `x ≺ y`: prefix sums of the decreasing rearrangement of `x` are dominated
/// by those of `y`, and the totals agree.
pub fn is_majorized(x: &RealTuple, y: &RealTuple) -> Result<bool> {
    same_len(x.len(), y.len(), "majorization")?;
    let tol = PREFIX_TOL * y.sup_norm().max(1.0);
    let xs = x.sorted_desc();
    let ys = y.sorted_desc();
    let (mut sx, mut sy) = (0.0, 0.0);
    for k in 0..xs.len() {
        sx += xs[k];
        sy += ys[k];
        if k + 1 < xs.len() && sx > sy + tol {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= tol)
}

/// Fuchs' `p`-majorization for tuples that are already non-increasing:
/// `Σ_{i≤k} p_i x_i ≤ Σ_{i≤k} p_i y_i` for `k < n`, with equality at `k = n`.
///
/// No sorting happens here since the weights are attached to positions.
pub fn is_p_majorized(x: &RealTuple, y: &RealTuple, p: &WeightVector) -> Result<bool> {
    same_len(x.len(), y.len(), "p-majorization")?;
    same_len(x.len(), p.len(), "p-majorization weights")?;
    if !x.is_non_increasing() {
        return Err(precondition("x must be non-increasing for p-majorization"));
    }
    if !y.is_non_increasing() {
        return Err(precondition("y must be non-increasing for p-majorization"));
    }
    let tol = PREFIX_TOL * y.sup_norm().max(1.0);
    let (mut sx, mut sy) = (0.0, 0.0);
    let n = x.len();
    for k in 0..n {
        sx += p.0[k] * x.0[k];
        sy += p.0[k] * y.0[k];
        if k + 1 < n && sx > sy + tol {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= tol)
}

fn weighted_sum(f: &FunctionSpec, t: &RealTuple, p: &WeightVector) -> Result<f64> {
    t.0.iter().zip(&p.0).try_fold(0.0, |acc, (&v, &w)| Ok(acc + w * f.eval(v)?))
}

fn require_convex_on(f: &FunctionSpec, lo: f64, hi: f64) -> Result<()> {
    if f.curvature() != Curvature::Convex {
        return Err(precondition(format!("{} must be convex", f.name())));
    }
    let dom = f.domain();
    if !dom.contains(lo, 1e-12) || !dom.contains(hi, 1e-12) {
        return Err(precondition(format!(
            "entries span [{lo}, {hi}], outside the convexity domain {dom} of {}",
            f.name()
        )));
    }
    Ok(())
}

/// `Σ p_i f(y_i) - Σ p_i f(x_i)`, non-negative by Fuchs' theorem whenever
/// `x` is `p`-majorized by `y` and `f` is convex on the entries.
pub fn fuchs_margin(
    f: &FunctionSpec,
    x: &RealTuple,
    y: &RealTuple,
    p: &WeightVector,
) -> Result<f64> {
    if !is_p_majorized(x, y, p)? {
        return Err(precondition("x is not p-majorized by y"));
    }
    let (xl, xh) = x.hull();
    let (yl, yh) = y.hull();
    require_convex_on(f, xl.min(yl), xh.max(yh))?;
    Ok(weighted_sum(f, y, p)? - weighted_sum(f, x, p)?)
}

/// Margin of `Σ p_i (x_i - x̄)^m ≤ Σ p_i (y_i - ȳ)^m` with `x̄ = Σ p_i x_i`.
///
/// The centered tuples are reordered by one common permutation that sorts
/// `y` decreasingly (the weights travel with their entries); the call fails
/// unless `x` is then non-increasing too and `p`-majorized by `y`. Odd orders
/// `m ≥ 3` fail as well, because `t^m` is not convex across the mean.
pub fn moment_margin(p: &WeightVector, x: &RealTuple, y: &RealTuple, order: u32) -> Result<f64> {
    same_len(x.len(), y.len(), "moment")?;
    same_len(x.len(), p.len(), "moment weights")?;
    if order == 0 {
        return Err(domain("moment order must be >= 1"));
    }
    if p.0.iter().any(|w| !(*w > 0.0)) || (p.0.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(precondition("moment margin needs probability weights"));
    }
    let mean = |t: &RealTuple| t.0.iter().zip(&p.0).map(|(v, w)| v * w).sum::<f64>();
    let (xbar, ybar) = (mean(x), mean(y));

    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| y.0[j].total_cmp(&y.0[i]).then(x.0[j].total_cmp(&x.0[i])));
    let xc = RealTuple(idx.iter().map(|&i| x.0[i] - xbar).collect());
    let yc = RealTuple(idx.iter().map(|&i| y.0[i] - ybar).collect());
    let pw = WeightVector(idx.iter().map(|&i| p.0[i]).collect());
    if !xc.is_non_increasing() {
        return Err(precondition(
            "centered x and y cannot be sorted decreasingly by a common permutation",
        ));
    }
    if !is_p_majorized(&xc, &yc, &pw)? {
        return Err(precondition("centered x is not p-majorized by centered y"));
    }
    let (lo, hi) = {
        let (a, b) = xc.hull();
        let (c, d) = yc.hull();
        (a.min(c), b.max(d))
    };
    if order >= 3 && order % 2 == 1 && lo < 0.0 && hi > 0.0 {
        return Err(precondition(format!(
            "t^{order} is not convex on [{lo}, {hi}]; odd moments need entries on one side of the mean"
        )));
    }
    let iv = if hi > lo { Interval::new(lo, hi)? } else { Interval::new(lo - 1.0, hi + 1.0)? };
    let f = FunctionSpec::new(FunctionKind::CentralMoment { order, mean: 0.0 }, iv)?;
    Ok(weighted_sum(&f, &yc, &pw)? - weighted_sum(&f, &xc, &pw)?)
}

/// A convex function separating `x` from `y` when `x ⊀ y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvexWitness {
    /// `t ↦ sign · t` (totals differ).
    Linear { sign: f64 },
    /// `t ↦ max(t - c, 0)`.
    Hinge { c: f64 },
}

impl ConvexWitness {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            ConvexWitness::Linear { sign } => sign * t,
            ConvexWitness::Hinge { c } => (t - c).max(0.0),
        }
    }
}

/// Searches linear maps and hinges `max(t - c, 0)` at the entries of `x` and
/// `y` for a convex `g` with `Σ g(x_i) > Σ g(y_i)`. Such a witness exists iff
/// `x` is not majorized by `y`, so this is the converse half of Karamata's
/// characterization.
pub fn convex_witness(x: &RealTuple, y: &RealTuple) -> Result<Option<ConvexWitness>> {
    same_len(x.len(), y.len(), "witness search")?;
    let tol = PREFIX_TOL * y.sup_norm().max(1.0);
    let sum = |g: &ConvexWitness, t: &RealTuple| t.0.iter().map(|&v| g.eval(v)).sum::<f64>();
    let mut candidates = vec![ConvexWitness::Linear { sign: 1.0 }, ConvexWitness::Linear { sign: -1.0 }];
    candidates.extend(x.0.iter().chain(&y.0).map(|&c| ConvexWitness::Hinge { c }));
    Ok(candidates.into_iter().find(|g| sum(g, x) > sum(g, y) + tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(v: &[f64]) -> RealTuple {
        RealTuple::new(v.to_vec()).unwrap()
    }

    fn w(v: &[f64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn square(lo: f64, hi: f64) -> FunctionSpec {
        FunctionSpec::on(FunctionKind::PowerR(2.0), lo, hi).unwrap()
    }

    #[test]
    fn majorization_examples() {
        assert!(is_majorized(&t(&[1.0, 1.0, 1.0]), &t(&[1.5, 1.0, 0.5])).unwrap());
        assert!(is_majorized(&t(&[0.3, -2.0, 5.0]), &t(&[0.3, -2.0, 5.0])).unwrap());
        assert!(!is_majorized(&t(&[2.0, 0.0, 0.0]), &t(&[1.0, 1.0, 0.0])).unwrap());
        assert!(is_majorized(&t(&[1.0, 1.0]), &t(&[1.0])).is_err());
    }

    #[test]
    fn majorization_sorts_internally() {
        assert!(is_majorized(&t(&[1.0, 1.0, 1.0]), &t(&[0.5, 1.5, 1.0])).unwrap());
    }

    #[test]
    fn majorization_tolerance_scales_with_magnitude() {
        let big = 1e8;
        let x = t(&[big + 1.0, big - 1.0]);
        let y = t(&[big + 1.0 + 1e-7, big - 1.0 - 1e-7]);
        assert!(is_majorized(&x, &y).unwrap());
    }

    #[test]
    fn p_majorization_examples() {
        let u = w(&[1.0 / 3.0; 3]);
        assert!(is_p_majorized(&t(&[1.0, 1.0, 1.0]), &t(&[1.5, 1.0, 0.5]), &u).unwrap());
        assert!(is_p_majorized(&t(&[2.0, 1.0, 0.0]), &t(&[2.0, 1.0, 0.0]), &u).unwrap());
        // prefix p·x = (0.5, 0.8, 1.0), p·y = (1.0, 1.3, 1.1): totals differ
        let p = w(&[0.5, 0.3, 0.2]);
        assert!(!is_p_majorized(&t(&[1.0, 1.0, 1.0]), &t(&[2.0, 1.0, -1.0]), &p).unwrap());
    }

    #[test]
    fn p_majorization_requires_sorted_input() {
        let u = w(&[0.5, 0.5]);
        let err = is_p_majorized(&t(&[0.0, 1.0]), &t(&[1.0, 0.0]), &u).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn fuchs_examples() {
        let u = w(&[1.0 / 3.0; 3]);
        let f = square(0.0, 2.0);
        let m = fuchs_margin(&f, &t(&[1.0, 1.0, 1.0]), &t(&[1.5, 1.0, 0.5]), &u).unwrap();
        assert!((m - 1.0 / 6.0).abs() < 1e-15);
        let same = t(&[1.5, 1.0, 0.5]);
        assert_eq!(fuchs_margin(&f, &same, &same, &u).unwrap(), 0.0);
        let lin = FunctionSpec::affine(-2.0, 3.0, Interval::new(0.0, 2.0).unwrap()).unwrap();
        let m = fuchs_margin(&lin, &t(&[1.0, 1.0, 1.0]), &t(&[1.5, 1.0, 0.5]), &u).unwrap();
        assert!(m.abs() < 1e-15);
    }

    #[test]
    fn fuchs_reports_precondition_errors() {
        let u = w(&[0.5, 0.5]);
        let f = square(0.0, 3.0);
        let err = fuchs_margin(&f, &t(&[2.0, 0.0]), &t(&[1.0, 1.0]), &u).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // concave function rejected
        let g = FunctionSpec::on(FunctionKind::PowerR(0.5), 0.0, 3.0).unwrap();
        let err = fuchs_margin(&g, &t(&[1.0, 1.0]), &t(&[2.0, 0.0]), &u).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // entries outside the declared domain
        let h = square(0.0, 1.0);
        let err = fuchs_margin(&h, &t(&[1.0, 1.0]), &t(&[2.0, 0.0]), &u).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn fuchs_accepts_signed_weights() {
        // p = (1, -0.5): prefix p·x = 2 ≤ p·y = 3, totals 1.5 = 1.5
        let p = w(&[1.0, -0.5]);
        let x = t(&[2.0, 1.0]);
        let y = t(&[3.0, 3.0]);
        assert!(is_p_majorized(&x, &y, &p).unwrap());
        let f = square(0.0, 4.0);
        let m = fuchs_margin(&f, &x, &y, &p).unwrap();
        assert!((m - (9.0 - 4.5 - (4.0 - 0.5))).abs() < 1e-14);
    }

    #[test]
    fn moment_examples() {
        let u = WeightVector::uniform(3).unwrap();
        let m = moment_margin(&u, &t(&[1.0, 1.0, 1.0]), &t(&[0.0, 1.0, 2.0]), 2).unwrap();
        assert!((m - 2.0 / 3.0).abs() < 1e-15);
        let y = t(&[0.3, 1.7, 0.9]);
        assert_eq!(moment_margin(&u, &y, &y, 2).unwrap(), 0.0);
        let p = WeightVector::probability(vec![0.2, 0.5, 0.3]).unwrap();
        let var = {
            let ybar = 0.2 * 0.3 + 0.5 * 1.7 + 0.3 * 0.9;
            0.2 * (0.3f64 - ybar).powi(2) + 0.5 * (1.7f64 - ybar).powi(2) + 0.3 * (0.9f64 - ybar).powi(2)
        };
        let m = moment_margin(&p, &t(&[4.0, 4.0, 4.0]), &y, 2).unwrap();
        assert!((m - var).abs() < 1e-14);
    }

    #[test]
    fn moment_rejects_unverifiable_cases() {
        let u = WeightVector::uniform(3).unwrap();
        let err = moment_margin(&u, &t(&[0.0, 0.0, 3.0]), &t(&[1.0, 1.0, 1.0]), 2).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = moment_margin(&u, &t(&[1.0, 1.0, 1.0]), &t(&[0.0, 1.0, 2.0]), 3).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // x ordered against y
        let err = moment_margin(&u, &t(&[0.0, 1.0, 2.0]), &t(&[3.0, 1.0, -1.0]), 2).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn witness_found_iff_not_majorized() {
        let x = t(&[2.0, 0.0, 0.0]);
        let y = t(&[1.0, 1.0, 0.0]);
        let g = convex_witness(&x, &y).unwrap().unwrap();
        let sx: f64 = x.values().iter().map(|&v| g.eval(v)).sum();
        let sy: f64 = y.values().iter().map(|&v| g.eval(v)).sum();
        assert!(sx > sy);
        assert!(convex_witness(&y, &x).unwrap().is_none());
    }

    fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    proptest! {
        #[test]
        fn majorization_is_reflexive(v in prop::collection::vec(-50.0f64..50.0, 1..8)) {
            let x = RealTuple::new(v).unwrap();
            prop_assert!(is_majorized(&x, &x).unwrap());
        }

        #[test]
        fn fuchs_margin_is_scale_covariant(
            y in prop::collection::vec(0.5f64..3.0, 2..6),
            c in 0.2f64..5.0,
        ) {
            let y = sorted_desc(y);
            let n = y.len();
            let p = WeightVector::uniform(n).unwrap();
            let mean = y.iter().sum::<f64>() / n as f64;
            let x = RealTuple::new(vec![mean; n]).unwrap();
            let y = RealTuple::new(y).unwrap();
            let f = FunctionSpec::on(FunctionKind::NegLog, 0.1, 10.0).unwrap();
            let base = fuchs_margin(&f, &x, &y, &p).unwrap();
            let g = f.rescaled(c).unwrap();
            let xs = RealTuple::new(x.values().iter().map(|v| v / c).collect()).unwrap();
            let ys = RealTuple::new(y.values().iter().map(|v| v / c).collect()).unwrap();
            let scaled = fuchs_margin(&g, &xs, &ys, &p).unwrap();
            prop_assert!((base - scaled).abs() <= 1e-10);
        }
    }
}
