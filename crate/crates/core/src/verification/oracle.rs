//! Closed forms against the interval optimizer, over parameter grids.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::function::{FunctionKind, FunctionSpec, Interval};
use crate::scalar_bounds::{
    beta_constant_oracle, c_of_hr, diff_constant_oracle, kantorovich, ln_r, log_specht, ls_r_constant,
    ratio_constant_oracle,
};

/// Agreement threshold, relative to `max(1, |closed form|)`.
pub const ORACLE_AGREEMENT: f64 = 1e-7;

/// Parameter grid of the oracle sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleGrid {
    pub eps: Vec<f64>,
    /// Exponents for the `ln_r` constants.
    pub r: Vec<f64>,
    /// Exponents for the Tsallis β.
    pub tsallis_r: Vec<f64>,
    /// Exponents for `K(h,r)` and `C(h,r)`, covering all three regimes.
    pub power_r: Vec<f64>,
    pub h: Vec<f64>,
    /// Lower endpoints `m` for `C(h,r)`.
    pub m: Vec<f64>,
    pub alpha: Vec<f64>,
}

impl Default for OracleGrid {
    fn default() -> Self {
        Self {
            eps: vec![0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
            r: vec![0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0],
            tsallis_r: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
            power_r: vec![-2.0, -1.0, -0.5, 0.25, 0.5, 0.75, 1.5, 2.0, 3.0],
            h: vec![1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0],
            m: vec![0.5, 1.0, 2.0],
            alpha: vec![0.0, 0.5, 1.0, 2.0],
        }
    }
}

impl OracleGrid {
    /// One point per axis.
    pub fn single() -> Self {
        Self {
            eps: vec![0.1],
            r: vec![0.5],
            tsallis_r: vec![0.5],
            power_r: vec![2.0],
            h: vec![4.0],
            m: vec![1.0],
            alpha: vec![1.0],
        }
    }
}

/// One closed form compared with its optimizer value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub closed_form: f64,
    pub oracle_value: f64,
    pub abs_diff: f64,
    pub pass: bool,
}

impl OracleRecord {
    fn new(name: &str, params: &[(&str, f64)], closed_form: f64, oracle_value: f64) -> Self {
        let abs_diff = (closed_form - oracle_value).abs();
        Self {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            closed_form,
            oracle_value,
            abs_diff,
            pass: abs_diff <= ORACLE_AGREEMENT * closed_form.abs().max(1.0),
        }
    }
}

fn unit_floor(kind: FunctionKind, eps: f64) -> Result<FunctionSpec> {
    FunctionSpec::on(kind, eps, 1.0)
}

/// Every closed form over `grid`. `perturb` multiplies each closed form
/// before comparison; anything other than `1.0` is fault injection.
pub fn oracle_sweep(grid: &OracleGrid, perturb: f64) -> Result<Vec<OracleRecord>> {
    let mut out = Vec::new();
    let e = std::f64::consts::E;
    let unit = Interval::new(0.0, 1.0)?;

    let tlogt = FunctionSpec::new(FunctionKind::TLogT, unit)?;
    for &a in &grid.alpha {
        let oracle = beta_constant_oracle(&tlogt, &unit, a)?;
        out.push(OracleRecord::new("beta_tlogt", &[("alpha", a)], perturb * a / e, oracle));
    }
    for &r in &grid.tsallis_r {
        let f = FunctionSpec::new(FunctionKind::TsallisF(r), unit)?;
        for &a in &grid.alpha {
            let closed = a * (1.0 - r).powf((1.0 - r) / r);
            let oracle = beta_constant_oracle(&f, &unit, a)?;
            out.push(OracleRecord::new("beta_tsallis", &[("r", r), ("alpha", a)], perturb * closed, oracle));
        }
    }
    for &eps in &grid.eps {
        let f = unit_floor(FunctionKind::NegLog, eps)?;
        let iv = f.domain();
        let k = eps.ln() / (eps - 1.0);
        out.push(OracleRecord::new("k_neglog", &[("eps", eps)], perturb * k, ratio_constant_oracle(&f, &iv)?));
        let c = log_specht(eps)?;
        out.push(OracleRecord::new("c_neglog", &[("eps", eps)], perturb * c, diff_constant_oracle(&f, &iv)?));
        for &r in &grid.r {
            let f = unit_floor(FunctionKind::LnRReciprocal(r), eps)?;
            let c1 = ln_r(r, 1.0 / eps)? / (1.0 - eps);
            let p = [("eps", eps), ("r", r)];
            out.push(OracleRecord::new("k_lnr", &p, perturb * c1, ratio_constant_oracle(&f, &iv)?));
            let c2 = ls_r_constant(eps, r)?;
            out.push(OracleRecord::new("c_lnr", &p, perturb * c2, diff_constant_oracle(&f, &iv)?));
        }
    }
    for &h in &grid.h {
        for &r in &grid.power_r {
            let f = FunctionSpec::on(FunctionKind::PowerR(r), 1.0, h)?;
            let k = kantorovich(h, r)?;
            out.push(OracleRecord::new(
                "kantorovich",
                &[("h", h), ("r", r)],
                perturb * k,
                ratio_constant_oracle(&f, &f.domain())?,
            ));
            for &m in &grid.m {
                let f = FunctionSpec::on(FunctionKind::PowerR(r), m, m * h)?;
                let c = c_of_hr(m, h, r)?;
                out.push(OracleRecord::new(
                    "c_of_hr",
                    &[("m", m), ("h", h), ("r", r)],
                    perturb * c,
                    diff_constant_oracle(&f, &f.domain())?,
                ));
            }
        }
    }
    Ok(out)
}

/// Inputs for [`constants_table`]; rows are emitted for whatever is given.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstantParams {
    pub eps: Option<f64>,
    pub r: Option<f64>,
    pub alpha: Option<f64>,
    pub m: Option<f64>,
    #[serde(rename = "M")]
    pub big_m: Option<f64>,
}

/// One row of the constants report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantRecord {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub closed_form: f64,
    pub oracle_value: f64,
    pub abs_diff: f64,
}

impl From<OracleRecord> for ConstantRecord {
    fn from(r: OracleRecord) -> Self {
        Self {
            name: r.name,
            params: r.params,
            closed_form: r.closed_form,
            oracle_value: r.oracle_value,
            abs_diff: r.abs_diff,
        }
    }
}

/// Closed-form constants with their oracle values for the given
/// parameters. Errors when no row can be formed.
pub fn constants_table(p: &ConstantParams) -> Result<Vec<ConstantRecord>> {
    let mut grid = OracleGrid {
        eps: vec![],
        r: vec![],
        tsallis_r: vec![],
        power_r: vec![],
        h: vec![],
        m: vec![],
        alpha: vec![],
    };
    let mut rows: Vec<OracleRecord> = Vec::new();
    if let Some(eps) = p.eps {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
        }
        grid.eps = vec![eps];
        grid.r = p.r.filter(|r| *r > 0.0).into_iter().collect();
    }
    if let Some(a) = p.alpha {
        if !(a >= 0.0) {
            return Err(domain(format!("alpha must be >= 0, got {a}")));
        }
        grid.alpha = vec![a];
        grid.tsallis_r = p.r.filter(|r| *r > 0.0 && *r < 1.0).into_iter().collect();
    }
    match (p.m, p.big_m) {
        (Some(m), Some(big)) => {
            let iv = Interval::new(m, big)?;
            let affine = FunctionSpec::affine(1.0, 1.0 - m.min(0.0), iv)?;
            rows.push(OracleRecord::new("k_affine", &[("m", m), ("M", big)], 1.0, ratio_constant_oracle(&affine, &iv)?));
            rows.push(OracleRecord::new("c_affine", &[("m", m), ("M", big)], 0.0, diff_constant_oracle(&affine, &iv)?));
            if let Some(r) = p.r {
                if m > 0.0 {
                    grid.h = vec![big / m];
                    grid.m = vec![m];
                    grid.power_r = vec![r];
                }
            }
        }
        (None, None) => {}
        _ => return Err(domain("m and M must be given together")),
    }
    rows.extend(oracle_sweep(&grid, 1.0)?);
    if rows.is_empty() {
        return Err(domain("no constant can be formed from the given parameters (need eps, alpha, or m and M)"));
    }
    Ok(rows.into_iter().map(ConstantRecord::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_grid_agrees() {
        let rows = oracle_sweep(&OracleGrid::single(), 1.0).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
    }

    #[test]
    fn perturbation_is_detected() {
        let rows = oracle_sweep(&OracleGrid::single(), 1.01).unwrap();
        assert!(rows.iter().any(|r| !r.pass));
    }

    #[test]
    fn constants_for_eps() {
        let rows = constants_table(&ConstantParams { eps: Some(0.1), ..Default::default() }).unwrap();
        let c = rows.iter().find(|r| r.name == "c_neglog").unwrap();
        assert!((c.closed_form - log_specht(0.1).unwrap()).abs() < 1e-15);
        assert!(c.abs_diff <= 1e-8);
    }

    #[test]
    fn affine_has_unit_ratio_and_zero_difference() {
        let rows =
            constants_table(&ConstantParams { m: Some(0.5), big_m: Some(3.0), ..Default::default() }).unwrap();
        for r in rows {
            assert!(r.abs_diff < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn kantorovich_near_zero_row() {
        let rows = constants_table(&ConstantParams {
            r: Some(1e-6),
            m: Some(1.0),
            big_m: Some(4.0),
            ..Default::default()
        })
        .unwrap();
        let k = rows.iter().find(|r| r.name == "kantorovich").unwrap();
        assert!((k.closed_form - 1.0).abs() < 1e-5);
    }

    #[test]
    fn empty_params_are_an_error() {
        assert!(constants_table(&ConstantParams::default()).is_err());
    }
}
