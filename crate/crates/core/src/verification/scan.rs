//! Parameter sweeps of the scalar constants and the entropy-bound
//! comparison table.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar_bounds::{c_of_hr, kantorovich, ls_r_constant, specht};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tighter {
    Ours,
    Fannes,
    Equal,
}

/// `dim/e` against the weak Fannes bound `T·log dim + 1/e` at `T = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FannesRow {
    pub dim: usize,
    pub ours: f64,
    pub fannes_weak: f64,
    pub tighter: Tighter,
}

pub fn fannes_comparison(dims: std::ops::RangeInclusive<usize>) -> Result<Vec<FannesRow>> {
    if dims.is_empty() || *dims.start() == 0 {
        return Err(domain(format!("dimension range must be non-empty and start at 1 or more, got {dims:?}")));
    }
    let inv_e = 1.0 / std::f64::consts::E;
    Ok(dims
        .map(|dim| {
            let ours = dim as f64 * inv_e;
            let fannes_weak = (dim as f64).ln() + inv_e;
            let tighter = if (ours - fannes_weak).abs() <= 1e-12 {
                Tighter::Equal
            } else if ours < fannes_weak {
                Tighter::Ours
            } else {
                Tighter::Fannes
            };
            FannesRow { dim, ours, fannes_weak, tighter }
        })
        .collect())
}

/// One sample of a swept constant. `bound` and `within` are filled where
/// the sweep has a reference to compare with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub param: f64,
    pub value: f64,
    pub bound: Option<f64>,
    pub within: Option<bool>,
}

fn require_points(xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(domain("scan range is empty"));
    }
    Ok(())
}

/// `ls_r(ε)` over `r` against the claimed range `[0, 1/r]`.
pub fn scan_ls_r(eps: f64, rs: &[f64]) -> Result<Vec<ScanPoint>> {
    require_points(rs)?;
    rs.iter()
        .map(|&r| {
            let value = ls_r_constant(eps, r)?;
            let bound = 1.0 / r;
            Ok(ScanPoint { param: r, value, bound: Some(bound), within: Some(value >= 0.0 && value <= bound) })
        })
        .collect()
}

/// `S(h)` over `h`, compared with `S(1/h)`.
pub fn scan_specht(hs: &[f64]) -> Result<Vec<ScanPoint>> {
    require_points(hs)?;
    hs.iter()
        .map(|&h| {
            let value = specht(h)?;
            let mirror = specht(1.0 / h)?;
            let within = (value - mirror).abs() <= 1e-12 * value.abs().max(1.0);
            Ok(ScanPoint { param: h, value, bound: Some(mirror), within: Some(within) })
        })
        .collect()
}

/// `K(h,r)` over `r`.
pub fn scan_kantorovich(h: f64, rs: &[f64]) -> Result<Vec<ScanPoint>> {
    require_points(rs)?;
    rs.iter()
        .map(|&r| Ok(ScanPoint { param: r, value: kantorovich(h, r)?, bound: None, within: None }))
        .collect()
}

/// `C(h,r)` with lower endpoint `m`, over `r`.
pub fn scan_c_of_hr(m: f64, h: f64, rs: &[f64]) -> Result<Vec<ScanPoint>> {
    require_points(rs)?;
    rs.iter()
        .map(|&r| Ok(ScanPoint { param: r, value: c_of_hr(m, h, r)?, bound: None, within: None }))
        .collect()
}

/// `n` evenly spaced points on `[lo, hi]` (just `lo` when `n = 1`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossover_between_five_and_six() {
        let rows = fannes_comparison(1..=10).unwrap();
        assert_eq!(rows[0].tighter, Tighter::Equal);
        assert!(rows[1..5].iter().all(|r| r.tighter == Tighter::Ours));
        assert!(rows[5..].iter().all(|r| r.tighter == Tighter::Fannes));
        assert!((rows[4].ours - 1.8394).abs() < 1e-4);
        assert!((rows[5].fannes_weak - 2.1597).abs() < 1e-4);
    }

    #[test]
    fn empty_ranges_are_rejected() {
        assert!(fannes_comparison(0..=3).is_err());
        assert!(scan_ls_r(0.1, &[]).is_err());
    }

    #[test]
    fn specht_scan_is_symmetric() {
        let pts = scan_specht(&linspace(0.1, 10.0, 50)).unwrap();
        assert!(pts.iter().all(|p| p.within == Some(true)));
    }

    #[test]
    fn ls_r_lower_bound_holds() {
        for p in scan_ls_r(0.5, &linspace(0.1, 3.0, 30)).unwrap() {
            assert!(p.value >= 0.0);
        }
    }
}
