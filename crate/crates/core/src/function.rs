//! Catalog of scalar convex/concave functions on a closed interval.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::scalar_bounds::{convexity_check, ln_r};

/// Closed interval `[lo, hi]` with `lo < hi`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(domain(format!("interval endpoints must be finite, got [{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(domain(format!("interval requires lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Ratio `hi / lo`, the condition number of a positive interval.
    pub fn ratio(&self) -> Result<f64> {
        if self.lo <= 0.0 {
            return Err(domain(format!("condition number needs lo > 0, got {}", self.lo)));
        }
        Ok(self.hi / self.lo)
    }

    pub fn contains(&self, t: f64, tol: f64) -> bool {
        t >= self.lo - tol && t <= self.hi + tol
    }

    /// `n >= 2` equally spaced points including both endpoints.
    pub fn grid(&self, n: usize) -> impl Iterator<Item = f64> + '_ {
        let n = n.max(2);
        let step = self.width() / (n - 1) as f64;
        (0..n).map(move |i| if i + 1 == n { self.hi } else { self.lo + step * i as f64 })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curvature {
    Convex,
    Concave,
    Indefinite,
}

/// A user supplied pure scalar map with a declared curvature.
#[derive(Clone)]
pub struct CustomFn {
    pub name: String,
    pub eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub curvature: Curvature,
}

impl fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomFn")
            .field("name", &self.name)
            .field("curvature", &self.curvature)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum FunctionKind {
    /// `t log t` with `f(0) = 0`.
    TLogT,
    /// `-log t`.
    NegLog,
    /// `t^r`.
    PowerR(f64),
    /// `(t - t^(1-r)) / r` for `r` in `(0, 1]`, with `f(0) = 0`.
    TsallisF(f64),
    /// `ln_r(1/t) = (t^(-r) - 1) / r` for `r > 0`.
    LnRReciprocal(f64),
    /// `(t - mean)^order`.
    CentralMoment { order: u32, mean: f64 },
    Custom(CustomFn),
}

impl FunctionKind {
    pub fn name(&self) -> String {
        match self {
            FunctionKind::TLogT => "tlogt".into(),
            FunctionKind::NegLog => "neglog".into(),
            FunctionKind::PowerR(r) => format!("power:{r}"),
            FunctionKind::TsallisF(r) => format!("tsallis:{r}"),
            FunctionKind::LnRReciprocal(r) => format!("lnr_recip:{r}"),
            FunctionKind::CentralMoment { order, mean } => format!("moment:{order}@{mean}"),
            FunctionKind::Custom(c) => c.name.clone(),
        }
    }

    /// Smallest admissible argument and whether it is included.
    fn natural_lower(&self) -> Option<(f64, bool)> {
        match self {
            FunctionKind::TLogT | FunctionKind::TsallisF(_) => Some((0.0, true)),
            FunctionKind::NegLog | FunctionKind::LnRReciprocal(_) => Some((0.0, false)),
            FunctionKind::PowerR(r) if *r > 0.0 => Some((0.0, true)),
            FunctionKind::PowerR(r) if *r == 0.0 => Some((0.0, true)),
            FunctionKind::PowerR(_) => Some((0.0, false)),
            FunctionKind::CentralMoment { .. } | FunctionKind::Custom(_) => None,
        }
    }
}

/// A scalar function together with the interval it is considered on.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    kind: FunctionKind,
    domain: Interval,
}

impl FunctionSpec {
    /// Builds a spec, checking that `domain` lies in the function's natural
    /// domain and, for custom maps, that the declared curvature holds there.
    pub fn new(kind: FunctionKind, domain: Interval) -> Result<Self> {
        match &kind {
            FunctionKind::TsallisF(r) if !(*r > 0.0 && *r <= 1.0) => {
                return Err(domain_err(format!("TsallisF needs r in (0, 1], got {r}")));
            }
            FunctionKind::LnRReciprocal(r) if !(*r > 0.0) => {
                return Err(domain_err(format!("LnRReciprocal needs r > 0, got {r}")));
            }
            FunctionKind::PowerR(r) | FunctionKind::TsallisF(r) | FunctionKind::LnRReciprocal(r)
                if !r.is_finite() =>
            {
                return Err(domain_err(format!("parameter must be finite, got {r}")));
            }
            FunctionKind::CentralMoment { order: 0, .. } => {
                return Err(domain_err("central moment order must be >= 1"));
            }
            _ => {}
        }
        if let Some((lower, closed)) = kind.natural_lower() {
            let ok = if closed { domain.lo() >= lower } else { domain.lo() > lower };
            if !ok {
                return Err(domain_err(format!(
                    "{} is not defined on all of {domain}",
                    kind.name()
                )));
            }
        }
        let spec = Self { kind, domain };
        if let FunctionKind::Custom(c) = &spec.kind {
            let holds = match c.curvature {
                Curvature::Convex => convexity_check(&spec, &domain, 257)?,
                Curvature::Concave => convexity_check(&spec.negated(), &domain, 257)?,
                Curvature::Indefinite => true,
            };
            if !holds {
                return Err(Error::Precondition(format!(
                    "declared curvature {:?} of `{}` fails on {domain}",
                    c.curvature, c.name
                )));
            }
        }
        Ok(spec)
    }

    pub fn on(kind: FunctionKind, lo: f64, hi: f64) -> Result<Self> {
        Self::new(kind, Interval::new(lo, hi)?)
    }

    pub fn custom<F>(name: &str, curvature: Curvature, domain: Interval, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(
            FunctionKind::Custom(CustomFn {
                name: name.to_string(),
                eval: Arc::new(f),
                curvature,
            }),
            domain,
        )
    }

    /// Affine map `t ↦ slope·t + intercept`.
    pub fn affine(slope: f64, intercept: f64, domain: Interval) -> Result<Self> {
        Self::custom(
            &format!("affine:{slope},{intercept}"),
            Curvature::Convex,
            domain,
            move |t| slope * t + intercept,
        )
    }

    #[inline]
    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    #[inline]
    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    /// Same function on a different interval.
    pub fn with_domain(&self, domain: Interval) -> Result<Self> {
        Self::new(self.kind.clone(), domain)
    }

    pub fn curvature(&self) -> Curvature {
        match &self.kind {
            FunctionKind::TLogT
            | FunctionKind::NegLog
            | FunctionKind::TsallisF(_)
            | FunctionKind::LnRReciprocal(_) => Curvature::Convex,
            FunctionKind::PowerR(r) => {
                if *r <= 0.0 || *r >= 1.0 {
                    Curvature::Convex
                } else {
                    Curvature::Concave
                }
            }
            FunctionKind::CentralMoment { order, mean } => {
                if *order == 1 || order % 2 == 0 || self.domain.lo() >= *mean {
                    Curvature::Convex
                } else if self.domain.hi() <= *mean {
                    Curvature::Concave
                } else {
                    Curvature::Indefinite
                }
            }
            FunctionKind::Custom(c) => c.curvature,
        }
    }

    /// Whether `f` is monotonically non-increasing on its domain.
    pub fn is_decreasing(&self) -> bool {
        match &self.kind {
            FunctionKind::NegLog | FunctionKind::LnRReciprocal(_) => true,
            FunctionKind::PowerR(r) => *r <= 0.0,
            _ => {
                let mut prev = f64::INFINITY;
                for t in self.domain.grid(257) {
                    match self.eval(t) {
                        Ok(v) if v <= prev + 1e-12 * (1.0 + v.abs()) => prev = v,
                        _ => return false,
                    }
                }
                true
            }
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let fail = |reason: &str| Error::Evaluation {
            t,
            reason: format!("{}: {reason}", self.kind.name()),
        };
        if !t.is_finite() {
            return Err(fail("argument is not finite"));
        }
        let v = match &self.kind {
            FunctionKind::TLogT => {
                if t < 0.0 {
                    return Err(fail("negative argument"));
                }
                if t == 0.0 {
                    0.0
                } else {
                    t * t.ln()
                }
            }
            FunctionKind::NegLog => {
                if t <= 0.0 {
                    return Err(fail("non-positive argument"));
                }
                -t.ln()
            }
            FunctionKind::PowerR(r) => {
                let r = *r;
                if r > 0.0 {
                    if t < 0.0 {
                        return Err(fail("negative argument"));
                    }
                    if t == 0.0 {
                        0.0
                    } else {
                        t.powf(r)
                    }
                } else if r == 0.0 {
                    if t < 0.0 {
                        return Err(fail("negative argument"));
                    }
                    1.0
                } else {
                    if t <= 0.0 {
                        return Err(fail("non-positive argument"));
                    }
                    t.powf(r)
                }
            }
            FunctionKind::TsallisF(r) => {
                if t < 0.0 {
                    return Err(fail("negative argument"));
                }
                if t == 0.0 {
                    0.0
                } else {
                    // (t - t^(1-r)) / r = t · ln_{-r}(t)
                    t * ln_r(-*r, t)?
                }
            }
            FunctionKind::LnRReciprocal(r) => {
                if t <= 0.0 {
                    return Err(fail("non-positive argument"));
                }
                ln_r(*r, 1.0 / t)?
            }
            FunctionKind::CentralMoment { order, mean } => (t - mean).powi(*order as i32),
            FunctionKind::Custom(c) => (c.eval)(t),
        };
        if v.is_nan() {
            return Err(fail("result is NaN"));
        }
        Ok(v)
    }

    /// Evaluation for spectral values, which may undershoot a closed lower
    /// boundary of the natural domain by rounding (e.g. `-1e-17` for a
    /// density matrix eigenvalue).
    pub fn eval_spectral(&self, t: f64) -> Result<f64> {
        match self.kind.natural_lower() {
            Some((lower, true)) if t < lower && t >= lower - 1e-12 => self.eval(lower),
            _ => self.eval(t),
        }
    }

    /// `t ↦ -f(t)`, with curvature flipped.
    pub fn negated(&self) -> FunctionSpec {
        let inner = self.clone();
        let curvature = match self.curvature() {
            Curvature::Convex => Curvature::Concave,
            Curvature::Concave => Curvature::Convex,
            Curvature::Indefinite => Curvature::Indefinite,
        };
        FunctionSpec {
            kind: FunctionKind::Custom(CustomFn {
                name: format!("-{}", self.name()),
                eval: Arc::new(move |t| inner.eval(t).map(|v| -v).unwrap_or(f64::NAN)),
                curvature,
            }),
            domain: self.domain,
        }
    }

    /// `t ↦ f(c·t)` on the domain scaled by `1/c`, for `c > 0`.
    pub fn rescaled(&self, c: f64) -> Result<FunctionSpec> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(domain_err(format!("scale must be positive and finite, got {c}")));
        }
        let inner = self.clone();
        Ok(FunctionSpec {
            kind: FunctionKind::Custom(CustomFn {
                name: format!("{}∘({c}·)", self.name()),
                eval: Arc::new(move |t| inner.eval(c * t).unwrap_or(f64::NAN)),
                curvature: self.curvature(),
            }),
            domain: Interval::new(self.domain.lo() / c, self.domain.hi() / c)?,
        })
    }
}

fn domain_err(msg: impl Into<String>) -> Error {
    domain(msg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_degenerate() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn grid_hits_both_endpoints() {
        let iv = Interval::new(0.1, 0.7).unwrap();
        let pts: Vec<f64> = iv.grid(7).collect();
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], 0.1);
        assert_eq!(pts[6], 0.7);
    }

    #[test]
    fn t_log_t_uses_zero_convention() {
        let f = FunctionSpec::on(FunctionKind::TLogT, 0.0, 1.0).unwrap();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        assert!(f.eval(-0.1).is_err());
        assert!((f.eval(0.5).unwrap() - 0.5 * 0.5f64.ln()).abs() < 1e-16);
        assert_eq!(f.eval_spectral(-1e-15).unwrap(), 0.0);
    }

    #[test]
    fn tsallis_f_matches_definition() {
        let r = 0.3;
        let f = FunctionSpec::on(FunctionKind::TsallisF(r), 0.0, 1.0).unwrap();
        for t in [1e-6f64, 0.2, 0.5, 1.0] {
            let direct = (t - t.powf(1.0 - r)) / r;
            assert!((f.eval(t).unwrap() - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn ln_r_reciprocal_matches_definition() {
        let r = 1.7;
        let f = FunctionSpec::on(FunctionKind::LnRReciprocal(r), 0.01, 1.0).unwrap();
        for t in [0.01f64, 0.3, 1.0] {
            let direct = (t.powf(-r) - 1.0) / r;
            assert!((f.eval(t).unwrap() - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
        assert!(f.eval(0.0).is_err());
    }

    #[test]
    fn natural_domain_is_enforced() {
        assert!(FunctionSpec::on(FunctionKind::NegLog, 0.0, 1.0).is_err());
        assert!(FunctionSpec::on(FunctionKind::TsallisF(1.5), 0.0, 1.0).is_err());
        assert!(FunctionSpec::on(FunctionKind::PowerR(-1.0), 0.0, 1.0).is_err());
        assert!(FunctionSpec::on(FunctionKind::PowerR(2.0), 0.0, 1.0).is_ok());
    }

    #[test]
    fn custom_curvature_is_validated() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        assert!(FunctionSpec::custom("-t^2", Curvature::Convex, iv, |t| -t * t).is_err());
        assert!(FunctionSpec::custom("-t^2", Curvature::Concave, iv, |t| -t * t).is_ok());
    }

    #[test]
    fn power_curvature_follows_exponent() {
        let c = |r: f64| FunctionSpec::on(FunctionKind::PowerR(r), 0.5, 2.0).unwrap().curvature();
        assert_eq!(c(2.0), Curvature::Convex);
        assert_eq!(c(-1.0), Curvature::Convex);
        assert_eq!(c(0.5), Curvature::Concave);
    }

    #[test]
    fn odd_moment_straddling_mean_is_indefinite() {
        let f = FunctionSpec::on(FunctionKind::CentralMoment { order: 3, mean: 0.0 }, -1.0, 1.0)
            .unwrap();
        assert_eq!(f.curvature(), Curvature::Indefinite);
        let g = FunctionSpec::on(FunctionKind::CentralMoment { order: 4, mean: 0.0 }, -1.0, 1.0)
            .unwrap();
        assert_eq!(g.curvature(), Curvature::Convex);
    }

    #[test]
    fn rescaled_composes() {
        let f = FunctionSpec::on(FunctionKind::PowerR(2.0), 0.0, 4.0).unwrap();
        let g = f.rescaled(2.0).unwrap();
        assert_eq!(g.domain().hi(), 2.0);
        assert!((g.eval(1.5).unwrap() - 9.0).abs() < 1e-14);
    }
}
