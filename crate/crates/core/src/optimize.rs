//! Bounded scalar maximization by dense grid scan plus golden-section
//! refinement.
//!
//! This is the brute-force route every closed-form constant is checked
//! against, so it deliberately uses no derivative information.

use crate::error::{Error, Result};
use crate::function::Interval;

/// Number of grid points scanned before refinement.
pub const GRID_POINTS: usize = 4096;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_GOLDEN_ITERS: usize = 300;

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub argmax: f64,
    pub value: f64,
}

fn checked<G>(g: &G, t: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let v = g(t).map_err(|e| match e {
        Error::Evaluation { .. } => e,
        other => Error::Evaluation { t, reason: other.to_string() },
    })?;
    if v.is_nan() {
        return Err(Error::Evaluation { t, reason: "objective returned NaN".into() });
    }
    Ok(v)
}

/// Maximizes `g` over `iv`.
///
/// A grid of [`GRID_POINTS`] points is scanned, keeping the first (smallest
/// `t`) best point; golden-section search then refines inside the bracket
/// formed by the grid neighbours of that point until the bracket is narrower
/// than `min(tol, 1e-12)` relative to its location. The refined point only
/// replaces the grid point if it is strictly better, so ties resolve toward
/// the smaller `t`.
pub fn interval_max<G>(g: G, iv: &Interval, tol: f64) -> Result<Extremum>
where
    G: Fn(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let n = GRID_POINTS;
    let step = iv.width() / (n - 1) as f64;
    let at = |i: usize| if i + 1 == n { iv.hi() } else { iv.lo() + step * i as f64 };

    let mut best_i = 0;
    let mut best_v = checked(&g, at(0))?;
    for i in 1..n {
        let v = checked(&g, at(i))?;
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }

    let mut a = at(best_i.saturating_sub(1));
    let mut b = at((best_i + 1).min(n - 1));
    let x_tol = tol.min(1e-12);

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = checked(&g, c)?;
    let mut fd = checked(&g, d)?;
    for _ in 0..MAX_GOLDEN_ITERS {
        if (b - a) <= x_tol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = checked(&g, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = checked(&g, d)?;
        }
    }
    let (t_ref, v_ref) = if fc >= fd { (c, fc) } else { (d, fd) };

    let mut best = Extremum { argmax: at(best_i), value: best_v };
    if v_ref > best.value {
        best = Extremum { argmax: t_ref, value: v_ref };
    }
    Ok(best)
}

/// Minimizes `g` over `iv`; the returned `argmax`/`value` are the argmin and
/// minimum.
pub fn interval_min<G>(g: G, iv: &Interval, tol: f64) -> Result<Extremum>
where
    G: Fn(f64) -> Result<f64>,
{
    let e = interval_max(|t| g(t).map(|v| -v), iv, tol)?;
    Ok(Extremum { argmax: e.argmax, value: -e.value })
}
