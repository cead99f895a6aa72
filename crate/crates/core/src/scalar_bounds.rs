//! Closed-form reverse-Jensen constants and their numerical oracles.
//!
//! For a function `f` on `[m, M]` the chord (secant) `a_f t + b_f` bounds a
//! convex `f` from above. The constants below are extrema of expressions built
//! from that chord:
//!
//! | constant | definition |
//! |----------|------------|
//! | β        | `max_t { a_f t + b_f - α f(t) }` |
//! | `K(m,M,f)` | `max_t { (a_f t + b_f) / f(t) }` |
//! | `C(m,M,f)` | `max_t { a_f t + b_f - f(t) }` |
//!
//! For concave `f` each maximum becomes a minimum and the inequalities built
//! on them reverse. Every constant has an `_oracle` variant that evaluates the
//! definition with [`interval_max`]; the plain variant returns the closed form
//! when one is known for the `(f, [m,M])` pair and falls back to the oracle
//! otherwise.

use crate::error::{domain, precondition, Result};
use crate::function::{Curvature, FunctionKind, FunctionSpec, Interval};
use crate::optimize::{interval_max, interval_min};

/// Distance to a removable singularity below which the analytic limit is
/// returned instead of the formula.
pub const SINGULAR_EPS: f64 = 1e-12;

/// Absolute slack allowed in the midpoint convexity test.
pub const CONVEXITY_TOL: f64 = 1e-10;

const ORACLE_TOL: f64 = 1e-12;

/// The `r`-logarithm `(t^r - 1) / r`, equal to `log t` in the limit `r → 0`.
pub fn ln_r(r: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("ln_r needs a positive finite argument, got {t}")));
    }
    if !r.is_finite() {
        return Err(domain(format!("ln_r needs a finite parameter, got {r}")));
    }
    let l = t.ln();
    if r.abs() < SINGULAR_EPS {
        return Ok(l);
    }
    Ok((r * l).exp_m1() / r)
}

/// Secant line through `(m, f(m))` and `(M, f(M))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordCoeffs {
    pub slope: f64,
    pub intercept: f64,
}

impl ChordCoeffs {
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        self.slope * t + self.intercept
    }
}

pub fn chord_coeffs(f: &FunctionSpec, iv: &Interval) -> Result<ChordCoeffs> {
    let (m, big_m) = (iv.lo(), iv.hi());
    let fm = f.eval(m)?;
    let f_big = f.eval(big_m)?;
    let w = big_m - m;
    Ok(ChordCoeffs {
        slope: (f_big - fm) / w,
        intercept: (big_m * fm - m * f_big) / w,
    })
}

fn require_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(domain(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    Ok(())
}

fn unit_right_floor(iv: &Interval) -> Option<f64> {
    (iv.hi() == 1.0 && iv.lo() > 0.0).then_some(iv.lo())
}

/// Closed form of β for the cataloged `(f, [m,M], α)` triples, if any.
pub fn beta_closed_form(f: &FunctionSpec, iv: &Interval, alpha: f64) -> Option<f64> {
    let unit = iv.lo() == 0.0 && iv.hi() == 1.0;
    match f.kind() {
        FunctionKind::TLogT if unit => Some(alpha / std::f64::consts::E),
        FunctionKind::TsallisF(r) if unit => Some(alpha * (1.0 - r).powf((1.0 - r) / r)),
        FunctionKind::NegLog if alpha == 1.0 => unit_right_floor(iv).and_then(|e| log_specht(e).ok()),
        FunctionKind::LnRReciprocal(r) if alpha == 1.0 => {
            unit_right_floor(iv).and_then(|e| ls_r_constant(e, *r).ok())
        }
        FunctionKind::PowerR(r) if alpha == 1.0 && iv.lo() > 0.0 => {
            c_of_hr(iv.lo(), iv.hi() / iv.lo(), *r).ok()
        }
        _ => None,
    }
}

/// β evaluated through the interval maximizer (minimizer for concave `f`).
pub fn beta_constant_oracle(f: &FunctionSpec, iv: &Interval, alpha: f64) -> Result<f64> {
    require_alpha(alpha)?;
    let chord = chord_coeffs(f, iv)?;
    let g = |t: f64| Ok(chord.eval(t) - alpha * f.eval(t)?);
    match f.curvature() {
        Curvature::Convex => Ok(interval_max(g, iv, ORACLE_TOL)?.value),
        Curvature::Concave => Ok(interval_min(g, iv, ORACLE_TOL)?.value),
        Curvature::Indefinite => Err(precondition(format!(
            "{} is neither convex nor concave on {iv}",
            f.name()
        ))),
    }
}

/// β = `max_{t∈[m,M]} { a_f t + b_f - α f(t) }`; the minimum for concave `f`.
pub fn beta_constant(f: &FunctionSpec, iv: &Interval, alpha: f64) -> Result<f64> {
    require_alpha(alpha)?;
    if f.curvature() == Curvature::Indefinite {
        return Err(precondition(format!("{} is neither convex nor concave on {iv}", f.name())));
    }
    match beta_closed_form(f, iv, alpha) {
        Some(v) => Ok(v),
        None => beta_constant_oracle(f, iv, alpha),
    }
}

/// Difference constant `C(m,M,f)`, i.e. β at `α = 1`.
pub fn diff_constant(f: &FunctionSpec, iv: &Interval) -> Result<f64> {
    beta_constant(f, iv, 1.0)
}

pub fn diff_constant_oracle(f: &FunctionSpec, iv: &Interval) -> Result<f64> {
    beta_constant_oracle(f, iv, 1.0)
}

/// Closed form of `K(m,M,f)` for the cataloged pairs, if any.
pub fn ratio_closed_form(f: &FunctionSpec, iv: &Interval) -> Option<f64> {
    match f.kind() {
        FunctionKind::NegLog => unit_right_floor(iv).map(|e| e.ln() / (e - 1.0)),
        FunctionKind::LnRReciprocal(r) => unit_right_floor(iv)
            .and_then(|e| ln_r(*r, 1.0 / e).ok().map(|v| v / (1.0 - e))),
        FunctionKind::PowerR(r) if iv.lo() > 0.0 => kantorovich(iv.hi() / iv.lo(), *r).ok(),
        _ => None,
    }
}

/// `K(m,M,f)` through the interval maximizer.
///
/// `f` must be positive on `[m,M]`, except that it may vanish at an endpoint
/// where the chord vanishes too; the ratio there is its one-sided limit,
/// obtained by Richardson extrapolation from interior points.
pub fn ratio_constant_oracle(f: &FunctionSpec, iv: &Interval) -> Result<f64> {
    let chord = chord_coeffs(f, iv)?;
    let (m, big_m) = (iv.lo(), iv.hi());
    let fm = f.eval(m)?;
    let f_big = f.eval(big_m)?;
    let scale = fm.abs().max(f_big.abs()).max(1.0);

    let removable = |t0: f64, ft0: f64| -> Result<bool> {
        if ft0.abs() > 1e-14 * scale {
            return Ok(false);
        }
        if chord.eval(t0).abs() <= 1e-12 * scale {
            Ok(true)
        } else {
            Err(precondition(format!("{} vanishes at {t0} but the chord does not", f.name())))
        }
    };
    let lo_removable = removable(m, fm)?;
    let hi_removable = removable(big_m, f_big)?;

    for t in iv.grid(1025) {
        if (t == m && lo_removable) || (t == big_m && hi_removable) {
            continue;
        }
        let v = f.eval(t)?;
        if !(v > 0.0) {
            return Err(precondition(format!(
                "ratio constant needs f > 0 on {iv}, but {}({t}) = {v}",
                f.name()
            )));
        }
    }

    let raw = |t: f64| -> Result<f64> { Ok(chord.eval(t) / f.eval(t)?) };
    let w = iv.width();
    let delta = 1e-4 * w;
    let eta = 1e-5 * w;
    let limit = |t0: f64, dir: f64| -> Result<f64> {
        Ok(3.0 * raw(t0 + dir * delta)? - 3.0 * raw(t0 + 2.0 * dir * delta)?
            + raw(t0 + 3.0 * dir * delta)?)
    };
    let lo_zone = if lo_removable { Some((limit(m, 1.0)?, raw(m + eta)?)) } else { None };
    let hi_zone = if hi_removable { Some((limit(big_m, -1.0)?, raw(big_m - eta)?)) } else { None };

    let g = |t: f64| -> Result<f64> {
        if let Some((at_end, inner)) = lo_zone {
            if t - m < eta {
                let s = (t - m) / eta;
                return Ok(at_end * (1.0 - s) + inner * s);
            }
        }
        if let Some((at_end, inner)) = hi_zone {
            if big_m - t < eta {
                let s = (big_m - t) / eta;
                return Ok(at_end * (1.0 - s) + inner * s);
            }
        }
        raw(t)
    };
    match f.curvature() {
        Curvature::Convex => Ok(interval_max(g, iv, ORACLE_TOL)?.value),
        Curvature::Concave => Ok(interval_min(g, iv, ORACLE_TOL)?.value),
        Curvature::Indefinite => Err(precondition(format!(
            "{} is neither convex nor concave on {iv}",
            f.name()
        ))),
    }
}

/// Ratio constant `K(m,M,f) = max_t (a_f t + b_f) / f(t)`; the minimum for
/// concave `f`.
pub fn ratio_constant(f: &FunctionSpec, iv: &Interval) -> Result<f64> {
    if f.curvature() == Curvature::Indefinite {
        return Err(precondition(format!("{} is neither convex nor concave on {iv}", f.name())));
    }
    for t in iv.grid(1025) {
        let v = f.eval(t)?;
        if v < 0.0 {
            return Err(precondition(format!(
                "ratio constant needs f > 0 on {iv}, but {}({t}) = {v}",
                f.name()
            )));
        }
    }
    match ratio_closed_form(f, iv) {
        Some(v) => Ok(v),
        None => ratio_constant_oracle(f, iv),
    }
}

fn require_condition_number(h: f64) -> Result<()> {
    if !h.is_finite() || h < 1.0 - SINGULAR_EPS {
        return Err(domain(format!("condition number h must be finite and > 1, got {h}")));
    }
    Ok(())
}

/// Generalized Kantorovich constant
/// `K(h,r) = (h^r - h) / ((r-1)(h-1)) · ((r-1)/r · (h^r - 1)/(h^r - h))^r`.
///
/// Equals `K(m, M, t^r)` with `h = M/m`. The removable singularities at
/// `r ∈ {0, 1}` and `h = 1` return the limit `1`.
pub fn kantorovich(h: f64, r: f64) -> Result<f64> {
    require_condition_number(h)?;
    if !r.is_finite() {
        return Err(domain(format!("r must be finite, got {r}")));
    }
    if r.abs() < SINGULAR_EPS || (r - 1.0).abs() < SINGULAR_EPS || h - 1.0 < SINGULAR_EPS {
        return Ok(1.0);
    }
    let hm1 = h - 1.0;
    let hr_m1 = (r * h.ln()).exp_m1();
    let hr_mh = hr_m1 - hm1;
    let lead = hr_mh / ((r - 1.0) * hm1);
    let base = (r - 1.0) / r * hr_m1 / hr_mh;
    Ok(lead * base.powf(r))
}

/// Difference constant `C(m, M, t^r)` with `h = M/m`:
/// `m^r {(h - h^r)/(h - 1) + (r - 1)((h^r - 1)/(r(h - 1)))^(r/(r-1))}`.
///
/// Limits `r → 0`, `r → 1` and `h → 1` are all `0`.
pub fn c_of_hr(m: f64, h: f64, r: f64) -> Result<f64> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(domain(format!("m must be positive and finite, got {m}")));
    }
    require_condition_number(h)?;
    if !r.is_finite() {
        return Err(domain(format!("r must be finite, got {r}")));
    }
    if r.abs() < SINGULAR_EPS || (r - 1.0).abs() < SINGULAR_EPS || h - 1.0 < SINGULAR_EPS {
        return Ok(0.0);
    }
    let hm1 = h - 1.0;
    let hr_m1 = (r * h.ln()).exp_m1();
    let x = hr_m1 / (r * hm1);
    let braces = (hm1 - hr_m1) / hm1 + (r - 1.0) * x.powf(r / (r - 1.0));
    Ok(m.powf(r) * braces)
}

/// Natural logarithm of the Specht ratio,
/// `log S(h) = c - 1 - log c` with `c = log h / (h - 1)`.
pub fn log_specht(h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(domain(format!("Specht ratio needs h > 0, got {h}")));
    }
    if (h - 1.0).abs() < SINGULAR_EPS {
        return Ok(0.0);
    }
    let c = (h - 1.0).ln_1p() / (h - 1.0);
    Ok(c - 1.0 - c.ln())
}

/// Specht ratio `S(h) = h^(1/(h-1)) / (e · log h^(1/(h-1)))`, with `S(1) = 1`.
pub fn specht(h: f64) -> Result<f64> {
    log_specht(h).map(f64::exp)
}

/// `ls_r(ε) = c₁ - c₁^(r/(r+1)) - ln_r c₁^(1/(r+1))` with
/// `c₁ = ln_r(1/ε) / (1 - ε)`; the `r → 0` limit is `log S(ε)`.
pub fn ls_r_constant(eps: f64, r: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("ls_r needs eps in (0, 1), got {eps}")));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(format!("ls_r needs r > 0, got {r}")));
    }
    if r < SINGULAR_EPS {
        return log_specht(eps);
    }
    let c1 = ln_r(r, 1.0 / eps)? / (1.0 - eps);
    let root = c1.powf(1.0 / (r + 1.0));
    Ok(c1 - c1.powf(r / (r + 1.0)) - ln_r(r, root)?)
}

/// Midpoint convexity on an `n_samples` grid:
/// `f((s+t)/2) ≤ (f(s) + f(t))/2 + 1e-10` for every sampled pair.
pub fn convexity_check(f: &FunctionSpec, iv: &Interval, n_samples: usize) -> Result<bool> {
    if n_samples < 3 {
        return Err(domain(format!("convexity check needs at least 3 samples, got {n_samples}")));
    }
    let pts: Vec<f64> = iv.grid(n_samples).collect();
    let vals = pts.iter().map(|&t| f.eval(t)).collect::<Result<Vec<_>>>()?;
    for i in 0..pts.len() {
        for j in (i + 2)..pts.len() {
            let mid = f.eval(0.5 * (pts[i] + pts[j]))?;
            if mid > 0.5 * (vals[i] + vals[j]) + CONVEXITY_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn spec(kind: FunctionKind, lo: f64, hi: f64) -> FunctionSpec {
        FunctionSpec::on(kind, lo, hi).unwrap()
    }

    #[test]
    fn ln_r_examples() {
        assert!((ln_r(0.0, 2.0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((ln_r(1.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(ln_r(0.5, 1.0).unwrap(), 0.0);
        assert!(ln_r(0.5, 0.0).is_err());
        assert!(ln_r(0.5, -1.0).is_err());
    }

    #[test]
    fn chord_examples() {
        let c = chord_coeffs(&spec(FunctionKind::TLogT, 0.0, 1.0), &iv(0.0, 1.0)).unwrap();
        assert_eq!((c.slope, c.intercept), (0.0, 0.0));
        let c = chord_coeffs(&spec(FunctionKind::TsallisF(0.4), 0.0, 1.0), &iv(0.0, 1.0)).unwrap();
        assert_eq!((c.slope, c.intercept), (0.0, 0.0));
        let sq = FunctionSpec::custom("t^2", Curvature::Convex, iv(0.0, 1.0), |t| t * t).unwrap();
        let c = chord_coeffs(&sq, &iv(0.0, 1.0)).unwrap();
        assert_eq!((c.slope, c.intercept), (1.0, 0.0));
    }

    #[test]
    fn chord_interpolates_endpoints() {
        let f = spec(FunctionKind::LnRReciprocal(1.3), 0.05, 1.0);
        let i = iv(0.05, 1.0);
        let c = chord_coeffs(&f, &i).unwrap();
        for t in [0.05, 1.0] {
            let v = f.eval(t).unwrap();
            assert!((c.eval(t) - v).abs() <= 1e-12 * v.abs().max(1.0));
        }
    }

    #[test]
    fn chord_fails_outside_domain() {
        let f = spec(FunctionKind::NegLog, 0.1, 1.0);
        assert!(chord_coeffs(&f, &iv(-1.0, 1.0)).is_err());
    }

    #[test]
    fn beta_examples() {
        let unit = iv(0.0, 1.0);
        let f = spec(FunctionKind::TLogT, 0.0, 1.0);
        for alpha in [0.0, 0.5, 1.0, 2.0] {
            assert_eq!(beta_constant(&f, &unit, alpha).unwrap(), alpha / E);
        }
        let r = 0.25;
        let g = spec(FunctionKind::TsallisF(r), 0.0, 1.0);
        let expect = 1.5 * (1.0 - r).powf((1.0 - r) / r);
        assert!((beta_constant(&g, &unit, 1.5).unwrap() - expect).abs() < 1e-15);

        let lin = FunctionSpec::affine(2.0, 1.0, unit).unwrap();
        assert!(beta_constant(&lin, &unit, 1.0).unwrap().abs() < 1e-15);
        assert!(beta_constant(&f, &unit, -1.0).is_err());
    }

    #[test]
    fn beta_rejects_indefinite() {
        let f = spec(FunctionKind::CentralMoment { order: 3, mean: 0.0 }, -1.0, 1.0);
        assert!(matches!(
            beta_constant(&f, &iv(-1.0, 1.0), 1.0),
            Err(crate::Error::Precondition(_))
        ));
    }

    #[test]
    fn ratio_examples() {
        let eps = 0.05;
        let f = spec(FunctionKind::NegLog, eps, 1.0);
        let k = ratio_constant(&f, &iv(eps, 1.0)).unwrap();
        assert!((k - eps.ln() / (eps - 1.0)).abs() < 1e-15);
        let o = ratio_constant_oracle(&f, &iv(eps, 1.0)).unwrap();
        assert!((k - o).abs() < 1e-9, "{k} vs {o}");

        let r = 0.7;
        let g = spec(FunctionKind::LnRReciprocal(r), eps, 1.0);
        let k = ratio_constant(&g, &iv(eps, 1.0)).unwrap();
        assert!((k - ln_r(r, 1.0 / eps).unwrap() / (1.0 - eps)).abs() < 1e-14);

        let lin = FunctionSpec::affine(3.0, 0.5, iv(1.0, 2.0)).unwrap();
        assert!((ratio_constant(&lin, &iv(1.0, 2.0)).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ratio_requires_positive_f() {
        let f = spec(FunctionKind::TLogT, 0.0, 1.0);
        assert!(matches!(ratio_constant(&f, &iv(0.0, 1.0)), Err(crate::Error::Precondition(_))));
        let shifted = FunctionSpec::affine(1.0, -0.5, iv(0.0, 1.0)).unwrap();
        assert!(ratio_constant_oracle(&shifted, &iv(0.0, 1.0)).is_err());
    }

    #[test]
    fn diff_examples() {
        let eps = 0.2;
        let f = spec(FunctionKind::NegLog, eps, 1.0);
        let c = diff_constant(&f, &iv(eps, 1.0)).unwrap();
        assert!((c - log_specht(eps).unwrap()).abs() < 1e-15);
        let g = spec(FunctionKind::LnRReciprocal(2.0), eps, 1.0);
        assert_eq!(diff_constant(&g, &iv(eps, 1.0)).unwrap(), ls_r_constant(eps, 2.0).unwrap());
        let lin = FunctionSpec::affine(-1.0, 4.0, iv(0.0, 3.0)).unwrap();
        assert!(diff_constant(&lin, &iv(0.0, 3.0)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn kantorovich_examples() {
        for h in [1.5, 4.0, 30.0] {
            assert_eq!(kantorovich(h, 0.0).unwrap(), 1.0);
            assert!((kantorovich(h, 1e-6).unwrap() - 1.0).abs() < 1e-5);
            let expect = (h + 1.0) * (h + 1.0) / (4.0 * h);
            assert!((kantorovich(h, 2.0).unwrap() - expect).abs() < 1e-10 * expect);
        }
        assert!((kantorovich(1.0 + 1e-13, 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(kantorovich(0.5, 2.0).is_err());
    }

    #[test]
    fn kantorovich_near_h_one_matches_oracle() {
        let h = 1.0 + 1e-6;
        let f = spec(FunctionKind::PowerR(2.0), 1.0, h);
        let oracle = ratio_constant_oracle(&f, &iv(1.0, h)).unwrap();
        assert!((oracle - 1.0).abs() < 1e-10);
        assert!((kantorovich(h, 2.0).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn c_of_hr_examples() {
        assert_eq!(c_of_hr(0.7, 3.0, 0.0).unwrap(), 0.0);
        assert!(c_of_hr(0.7, 3.0, 1e-6).unwrap().abs() < 1e-5);
        let h = 3.0;
        let f = spec(FunctionKind::PowerR(2.0), 1.0, h);
        let oracle = diff_constant_oracle(&f, &iv(1.0, h)).unwrap();
        assert!((c_of_hr(1.0, h, 2.0).unwrap() - oracle).abs() < 1e-8);
        let near = 1.0 + 1e-6;
        assert!(c_of_hr(2.0, near, 2.5).unwrap().abs() < 1e-10);
        assert!(c_of_hr(-1.0, 2.0, 2.0).is_err());
    }

    #[test]
    fn c_of_hr_is_negative_for_concave_powers() {
        // chord lies below a concave t^r, so the extremum is a negative minimum
        let c = c_of_hr(1.0, 4.0, 0.5).unwrap();
        assert!(c < 0.0);
        let f = spec(FunctionKind::PowerR(0.5), 1.0, 4.0);
        let oracle = diff_constant_oracle(&f, &iv(1.0, 4.0)).unwrap();
        assert!((c - oracle).abs() < 1e-10);
    }

    #[test]
    fn specht_examples() {
        assert_eq!(specht(1.0).unwrap(), 1.0);
        let expect = E.powf(1.0 / (E - 1.0)) / (E / (E - 1.0));
        assert!((specht(E).unwrap() - expect).abs() < 1e-14);
        let f = spec(FunctionKind::NegLog, 1.0 / E, 1.0);
        let oracle = diff_constant_oracle(&f, &iv(1.0 / E, 1.0)).unwrap();
        assert!((oracle - expect.ln()).abs() < 1e-10);
        assert!(specht(0.0).is_err());
    }

    #[test]
    fn ls_r_limits() {
        for eps in [0.01, 0.3, 0.8] {
            let l = ls_r_constant(eps, 1e-6).unwrap();
            assert!((l - log_specht(eps).unwrap()).abs() < 1e-4);
            assert_eq!(ls_r_constant(eps, 0.0).unwrap(), log_specht(eps).unwrap());
        }
        for r in [0.1, 1.0, 3.0] {
            assert!(ls_r_constant(1.0 - 1e-8, r).unwrap().abs() < 1e-6);
        }
        assert!(ls_r_constant(1.0, 1.0).is_err());
        assert!(ls_r_constant(0.5, -1.0).is_err());
    }

    #[test]
    fn convexity_examples() {
        let f = spec(FunctionKind::TLogT, 0.0, 1.0);
        assert!(convexity_check(&f, &iv(0.0, 1.0), 1000).unwrap());
        let g = spec(FunctionKind::NegLog, 0.01, 1.0);
        assert!(convexity_check(&g, &iv(0.01, 1.0), 1000).unwrap());
        let neg_sq = FunctionSpec::custom("-t^2", Curvature::Indefinite, iv(0.0, 1.0), |t| -t * t)
            .unwrap();
        assert!(!convexity_check(&neg_sq, &iv(0.0, 1.0), 1000).unwrap());
        assert!(convexity_check(&f, &iv(0.0, 1.0), 2).is_err());
    }

    #[test]
    fn ratio_constant_neglog_decreases_in_eps() {
        let mut prev = f64::INFINITY;
        for i in 1..100 {
            let eps = i as f64 / 100.0;
            let k = ratio_closed_form(&spec(FunctionKind::NegLog, eps, 1.0), &iv(eps, 1.0)).unwrap();
            assert!(k > 1.0);
            assert!(k < prev);
            prev = k;
        }
    }

    proptest! {
        #[test]
        fn specht_is_symmetric(log_h in -6.0f64..6.0) {
            let h = log_h.exp();
            let a = specht(h).unwrap();
            let b = specht(1.0 / h).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }

        #[test]
        fn ln_r_converges_to_log(t in 0.01f64..100.0) {
            prop_assert!((ln_r(1e-8, t).unwrap() - t.ln()).abs() <= 1e-6);
        }

        #[test]
        fn diff_is_beta_at_alpha_one(eps in 0.01f64..0.9, r in 0.1f64..3.0) {
            let i = iv(eps, 1.0);
            for f in [spec(FunctionKind::NegLog, eps, 1.0), spec(FunctionKind::LnRReciprocal(r), eps, 1.0)] {
                prop_assert_eq!(diff_constant(&f, &i).unwrap(), beta_constant(&f, &i, 1.0).unwrap());
            }
        }

        #[test]
        fn beta_at_alpha_zero_is_endpoint_max(lo in 0.05f64..1.0, w in 0.1f64..3.0, r in 1.0f64..3.0) {
            let i = iv(lo, lo + w);
            for f in [
                spec(FunctionKind::NegLog, lo, lo + w),
                spec(FunctionKind::PowerR(r), lo, lo + w),
                spec(FunctionKind::TLogT, lo, lo + w),
            ] {
                let b = beta_constant(&f, &i, 0.0).unwrap();
                let expect = f.eval(i.lo()).unwrap().max(f.eval(i.hi()).unwrap());
                prop_assert!((b - expect).abs() <= 1e-10 * expect.abs().max(1.0));
            }
        }

        #[test]
        fn ls_r_is_nonnegative(eps in 0.001f64..0.999, r in 0.01f64..5.0) {
            prop_assert!(ls_r_constant(eps, r).unwrap() >= 0.0);
        }
    }
}
