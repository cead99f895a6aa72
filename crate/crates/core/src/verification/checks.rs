//! Margin checkers. Every function returns verdicts whose margin is
//! non-negative exactly when the checked inequality holds.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::generators::MeanInstance;
use super::{InequalityVerdict, TrialContext};
use crate::classical_entropy::{
    cross_term, parametric_reverse_margins, reverse_shannon_margins, shannon_entropy, ConditionTag,
    ProbVector,
};
use crate::error::{domain, precondition, Error, Result};
use crate::function::{Curvature, FunctionKind, FunctionSpec, Interval};
use crate::majorization::{convex_witness, is_majorized, RealTuple};
use crate::operator::entropy::quantum_tsallis_entropy;
use crate::operator::{
    apply_function, apply_map_family, jacobi_eigh, natural_power_mean, tsallis_relative_operator_entropy,
    von_neumann_entropy, DensityMatrix, HermitianMatrix, MapFamily,
};
use crate::scalar_bounds::{beta_constant, c_of_hr, diff_constant, kantorovich, log_specht, ratio_constant};

/// Frobenius slack on `Σ Φ_i(A_i) = Σ Φ_i(B_i)`, relative to the operator
/// scale.
pub const EQUAL_SUM_TOL: f64 = 1e-9;
/// Slack on equal weighted means of scalar tuples.
pub const EQUAL_MEAN_TOL: f64 = 1e-10;

fn require_curved(f: &FunctionSpec) -> Result<Curvature> {
    match f.curvature() {
        Curvature::Indefinite => {
            Err(precondition(format!("{} is neither convex nor concave on {}", f.name(), f.domain())))
        }
        c => Ok(c),
    }
}

/// Verdict for `small ≤ big` when `f` is convex and `big ≤ small` when it is
/// concave (the reversed inequality with the minimizing constant).
fn oriented_scalar(
    id: &str,
    curv: Curvature,
    small: f64,
    big: f64,
    ctx: &TrialContext,
) -> InequalityVerdict {
    match curv {
        Curvature::Concave => InequalityVerdict::scalar(id, big, small, ctx),
        _ => InequalityVerdict::scalar(id, small, big, ctx),
    }
}

fn oriented_op(
    id: &str,
    curv: Curvature,
    small: &HermitianMatrix,
    big: &HermitianMatrix,
    ctx: &TrialContext,
) -> Result<InequalityVerdict> {
    match curv {
        Curvature::Concave => InequalityVerdict::operator(id, big, small, ctx),
        _ => InequalityVerdict::operator(id, small, big, ctx),
    }
}

fn map_sum_of_f(family: &MapFamily, f: &FunctionSpec, ops: &[HermitianMatrix]) -> Result<HermitianMatrix> {
    let fa = ops.iter().map(|a| apply_function(f, a)).collect::<Result<Vec<_>>>()?;
    apply_map_family(family, &fa)
}

fn require_equal_map_sums(family: &MapFamily, a: &[HermitianMatrix], b: &[HermitianMatrix]) -> Result<()> {
    let sa = apply_map_family(family, a)?;
    let sb = apply_map_family(family, b)?;
    let resid = sa.sub(&sb)?.frobenius_norm();
    if resid > EQUAL_SUM_TOL * sa.frobenius_norm().max(1.0) {
        return Err(precondition(format!("map sums of A and B differ by {resid:e}")));
    }
    Ok(())
}

/// `f(⟨ΣΦ_i(A_i)x,x⟩) ≤ ⟨ΣΦ_i(f(A_i))x,x⟩` for each unit vector `x`
/// (reversed for concave `f`).
pub fn check_lemma_jensen(
    family: &MapFamily,
    a: &[HermitianMatrix],
    f: &FunctionSpec,
    vectors: &[Vec<Complex64>],
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let curv = require_curved(f)?;
    let inner = apply_map_family(family, a)?;
    let outer = map_sum_of_f(family, f, a)?;
    vectors
        .iter()
        .map(|x| {
            let norm: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(precondition(format!("vector has norm {norm}, expected 1")));
            }
            let t = inner.quadratic_form(x)?;
            let iv = f.domain();
            if !iv.contains(t, 1e-10 * t.abs().max(1.0)) {
                return Err(precondition(format!("⟨ΣΦ(A)x,x⟩ = {t} lies outside {iv}")));
            }
            let lhs = f.eval(t.clamp(iv.lo(), iv.hi()))?;
            let rhs = outer.quadratic_form(x)?;
            Ok(oriented_scalar("lemma_jensen", curv, lhs, rhs, ctx))
        })
        .collect()
}

/// `ΣΦ_i(f(A_i)) ≤ β·1 + α ΣΦ_i(f(B_i))` with `β` over `f`'s interval.
pub fn check_theorem_beta(
    family: &MapFamily,
    a: &[HermitianMatrix],
    b: &[HermitianMatrix],
    f: &FunctionSpec,
    alpha: f64,
    ctx: &TrialContext,
) -> Result<InequalityVerdict> {
    check_theorem_beta_scaled(family, a, b, f, alpha, 1.0, ctx)
}

/// [`check_theorem_beta`] with `β` multiplied by `scale`; a scale below one
/// must produce failures somewhere, which keeps the check honest.
pub fn check_theorem_beta_scaled(
    family: &MapFamily,
    a: &[HermitianMatrix],
    b: &[HermitianMatrix],
    f: &FunctionSpec,
    alpha: f64,
    scale: f64,
    ctx: &TrialContext,
) -> Result<InequalityVerdict> {
    let curv = require_curved(f)?;
    require_equal_map_sums(family, a, b)?;
    let beta = scale * beta_constant(f, &f.domain(), alpha)?;
    let lhs = map_sum_of_f(family, f, a)?;
    let rhs = map_sum_of_f(family, f, b)?.scale(alpha).shift(beta);
    oriented_op("theorem_beta", curv, &lhs, &rhs, ctx)
}

/// Scalar-weight maps `X ↦ p_i X`: the β form and, where they apply, the
/// ratio form with `K(m,M,f)` and the difference form with `C(m,M,f)`.
pub fn check_corollary_weighted(
    p: &[f64],
    a: &[HermitianMatrix],
    b: &[HermitianMatrix],
    f: &FunctionSpec,
    alpha: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    check_corollary_weighted_scaled(p, a, b, f, alpha, 1.0, ctx)
}

pub fn check_corollary_weighted_scaled(
    p: &[f64],
    a: &[HermitianMatrix],
    b: &[HermitianMatrix],
    f: &FunctionSpec,
    alpha: f64,
    scale: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let dim = a.first().ok_or_else(|| domain("need at least one operator"))?.dim();
    let family = MapFamily::weighted(p, dim)?;
    let curv = require_curved(f)?;
    require_equal_map_sums(&family, a, b)?;
    let iv = f.domain();
    let lhs = map_sum_of_f(&family, f, a)?;
    let fb = map_sum_of_f(&family, f, b)?;

    let beta = scale * beta_constant(f, &iv, alpha)?;
    let mut out = vec![oriented_op("corollary_beta", curv, &lhs, &fb.scale(alpha).shift(beta), ctx)?];
    let c = scale * diff_constant(f, &iv)?;
    out.push(oriented_op("corollary_c", curv, &lhs, &fb.shift(c), ctx)?);
    if let Ok(k) = ratio_constant(f, &iv) {
        out.push(oriented_op("corollary_k", curv, &lhs, &fb.scale(scale * k), ctx)?);
    }
    Ok(out)
}

/// Hypothesis of the scalar check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    /// `Σ p_i x_i = Σ p_i y_i`.
    EqualMeans,
    /// `Σ p_i x_i ≤ Σ p_i y_i` with `f` convex and non-increasing.
    Relaxed,
}

/// `Σ p_i f(y_i) ≤ β + α Σ p_i f(x_i)` together with the `K` form (when
/// `f > 0`) and the `C` form; reversed for concave `f`.
pub fn check_scalar_corollary(
    p: &[f64],
    x: &[f64],
    y: &[f64],
    f: &FunctionSpec,
    alpha: f64,
    mode: ScalarMode,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    check_scalar_corollary_scaled(p, x, y, f, alpha, mode, 1.0, ctx)
}

#[allow(clippy::too_many_arguments)]
pub fn check_scalar_corollary_scaled(
    p: &[f64],
    x: &[f64],
    y: &[f64],
    f: &FunctionSpec,
    alpha: f64,
    mode: ScalarMode,
    scale: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    if p.len() != x.len() || p.len() != y.len() || p.is_empty() {
        return Err(Error::Shape(format!("lengths {}, {}, {} differ", p.len(), x.len(), y.len())));
    }
    let curv = require_curved(f)?;
    let iv = f.domain();
    if let Some(v) = x.iter().chain(y).find(|v| !iv.contains(**v, 0.0)) {
        return Err(precondition(format!("entry {v} lies outside {iv}")));
    }
    let dot = |v: &[f64]| p.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let gap = dot(x) - dot(y);
    let tol = EQUAL_MEAN_TOL * iv.lo().abs().max(iv.hi().abs()).max(1.0);
    match mode {
        ScalarMode::EqualMeans if gap.abs() > tol => {
            return Err(precondition(format!("weighted means differ by {gap:e}")));
        }
        ScalarMode::Relaxed => {
            if gap > tol {
                return Err(precondition(format!("Σp·x exceeds Σp·y by {gap:e}")));
            }
            if curv != Curvature::Convex || !f.is_decreasing() {
                return Err(precondition(format!(
                    "relaxed mode needs a convex non-increasing function, got {}",
                    f.name()
                )));
            }
        }
        _ => {}
    }
    let wsum = |v: &[f64]| -> Result<f64> {
        p.iter().zip(v).try_fold(0.0, |acc, (w, t)| Ok(acc + w * f.eval(*t)?))
    };
    let fy = wsum(y)?;
    let fx = wsum(x)?;
    let beta = scale * beta_constant(f, &iv, alpha)?;
    let c = scale * diff_constant(f, &iv)?;
    let mut out = vec![
        oriented_scalar("scalar_beta", curv, fy, beta + alpha * fx, ctx),
        oriented_scalar("scalar_c", curv, fy, c + fx, ctx),
    ];
    if let Ok(k) = ratio_constant(f, &iv) {
        out.push(oriented_scalar("scalar_k", curv, fy, scale * k * fx, ctx));
    }
    Ok(out)
}

fn same_dim(a: &DensityMatrix, b: &DensityMatrix) -> Result<usize> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!("dimensions {} and {} differ", a.dim(), b.dim())));
    }
    Ok(a.dim())
}

/// `α H(B) ≤ H(A) + (α/e)·dim` and `|H(A) - H(B)| ≤ dim/e`.
pub fn check_entropy_vonneumann(
    a: &DensityMatrix,
    b: &DensityMatrix,
    alpha: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let d = same_dim(a, b)? as f64;
    let f = FunctionSpec::on(FunctionKind::TLogT, 0.0, 1.0)?;
    let unit = f.domain();
    let beta = beta_constant(&f, &unit, alpha)?;
    let c = beta_constant(&f, &unit, 1.0)?;
    let (ha, hb) = (von_neumann_entropy(a), von_neumann_entropy(b));
    Ok(vec![
        InequalityVerdict::scalar("vonneumann_alpha", alpha * hb, ha + beta * d, ctx),
        InequalityVerdict::scalar("vonneumann_abs", (ha - hb).abs(), c * d, ctx),
    ])
}

/// `α H_r(B) ≤ H_r(A) + α(1-r)^{(1-r)/r}·dim` and the symmetric bound.
pub fn check_entropy_tsallis(
    a: &DensityMatrix,
    b: &DensityMatrix,
    alpha: f64,
    r: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let d = same_dim(a, b)? as f64;
    let f = FunctionSpec::on(FunctionKind::TsallisF(r), 0.0, 1.0)?;
    let unit = f.domain();
    let beta = beta_constant(&f, &unit, alpha)?;
    let c = beta_constant(&f, &unit, 1.0)?;
    let ha = quantum_tsallis_entropy(a, r)?;
    let hb = quantum_tsallis_entropy(b, r)?;
    Ok(vec![
        InequalityVerdict::scalar("tsallis_alpha", alpha * hb, ha + beta * d, ctx),
        InequalityVerdict::scalar("tsallis_abs", (ha - hb).abs(), c * d, ctx),
    ])
}

/// Which family of power-mean bounds applies at `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanRegime {
    /// `r ≥ 1`
    RGe1,
    /// `r < 0`
    RNeg,
    /// `0 < r < 1`
    RUnit,
    /// the `r → 0` limit
    RZero,
}

impl MeanRegime {
    pub const ALL: [MeanRegime; 4] = [MeanRegime::RGe1, MeanRegime::RNeg, MeanRegime::RUnit, MeanRegime::RZero];

    pub fn of(r: f64) -> Result<Self> {
        match r {
            r if !r.is_finite() => Err(domain(format!("r must be finite, got {r}"))),
            r if r >= 1.0 => Ok(MeanRegime::RGe1),
            r if r < 0.0 => Ok(MeanRegime::RNeg),
            0.0 => Ok(MeanRegime::RZero),
            _ => Ok(MeanRegime::RUnit),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MeanRegime::RGe1 => "r_ge1",
            MeanRegime::RNeg => "r_neg",
            MeanRegime::RUnit => "r_unit",
            MeanRegime::RZero => "r_zero",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            domain(format!(
                "unknown regime `{s}` (expected one of {})",
                Self::ALL.map(|k| k.name()).join(", ")
            ))
        })
    }
}

struct MeanTerms {
    z: HermitianMatrix,
    mx: HermitianMatrix,
    my: HermitianMatrix,
    sx: HermitianMatrix,
    sy: HermitianMatrix,
}

fn weighted_sum<F>(p: &[f64], ops: &[HermitianMatrix], g: F) -> Result<HermitianMatrix>
where
    F: Fn(&HermitianMatrix) -> Result<HermitianMatrix>,
{
    let mut acc = HermitianMatrix::zeros(ops[0].dim());
    for (w, op) in p.iter().zip(ops) {
        acc = acc.add(&g(op)?.scale(*w))?;
    }
    Ok(acc)
}

fn mean_terms(inst: &MeanInstance, r: f64) -> Result<MeanTerms> {
    if inst.x.is_empty() || inst.x.len() != inst.y.len() || inst.x.len() != inst.p.len() {
        return Err(Error::Shape("mean instance needs matching non-empty families".into()));
    }
    let z = &inst.z;
    Ok(MeanTerms {
        z: z.clone(),
        mx: weighted_sum(&inst.p, &inst.x, |x| natural_power_mean(z, x, r))?,
        my: weighted_sum(&inst.p, &inst.y, |y| natural_power_mean(z, y, r))?,
        sx: weighted_sum(&inst.p, &inst.x, |x| tsallis_relative_operator_entropy(z, x, r))?,
        sy: weighted_sum(&inst.p, &inst.y, |y| tsallis_relative_operator_entropy(z, y, r))?,
    })
}

fn require_ratio(iv: &Interval) -> Result<(f64, f64)> {
    if !(iv.lo() > 0.0) {
        return Err(domain(format!("power means need m > 0, got {iv}")));
    }
    Ok((iv.lo(), iv.hi() / iv.lo()))
}

/// Power-mean and Tsallis relative operator entropy bounds for the weighted
/// family in `inst` (`MX = Σp_i Z♮_rX_i`, `SX = Σp_i S_r(Z‖X_i)`, likewise
/// for `Y`):
///
/// - `r ∉ (0,1)`: `MX ≤ K·MY`, `MX ≤ C·Z + MY`; reversed for `0 < r < 1`.
/// - `r ≥ 1`: `SX ≤ (K·MY - Z)/r`, `SX ≤ (C/r)Z + SY`.
/// - `r < 0`: both reversed.
/// - `0 < r < 1`: `SX ≥ (K·MY - Z)/r`, `SX ≥ (K·MX - Z)/r`, `SX ≥ (C/r)Z + SY`.
/// - `r = 0`: `S₀X ≥ S₀Y - log S(h)·Z`.
pub fn check_operator_mean_bounds(
    inst: &MeanInstance,
    iv: &Interval,
    r: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    check_operator_mean_bounds_scaled(inst, iv, r, 1.0, ctx)
}

pub fn check_operator_mean_bounds_scaled(
    inst: &MeanInstance,
    iv: &Interval,
    r: f64,
    scale: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let (m, h) = require_ratio(iv)?;
    let regime = MeanRegime::of(r)?;
    let t = mean_terms(inst, r)?;
    let z = &t.z;
    if regime == MeanRegime::RZero {
        let rhs = t.sy.sub(&z.scale(scale * log_specht(h)?))?;
        return Ok(vec![InequalityVerdict::operator("s0_corrected", &rhs, &t.sx, ctx)?]);
    }
    let k = scale * kantorovich(h, r)?;
    let c = scale * c_of_hr(m, h, r)?;
    let k_rhs = t.my.scale(k);
    let c_rhs = t.my.add(&z.scale(c))?;
    let sk_rhs = t.my.scale(k).sub(z)?.scale(1.0 / r);
    let sc_rhs = t.sy.add(&z.scale(c / r))?;
    let le = |id: &str, l: &HermitianMatrix, rr: &HermitianMatrix| InequalityVerdict::operator(id, l, rr, ctx);
    let ge = |id: &str, l: &HermitianMatrix, rr: &HermitianMatrix| InequalityVerdict::operator(id, rr, l, ctx);
    Ok(match regime {
        MeanRegime::RGe1 => vec![
            le("mean_k", &t.mx, &k_rhs)?,
            le("mean_c", &t.mx, &c_rhs)?,
            le("sr_k", &t.sx, &sk_rhs)?,
            le("sr_c", &t.sx, &sc_rhs)?,
        ],
        MeanRegime::RNeg => vec![
            le("mean_k", &t.mx, &k_rhs)?,
            le("mean_c", &t.mx, &c_rhs)?,
            ge("sr_k", &t.sx, &sk_rhs)?,
            ge("sr_c", &t.sx, &sc_rhs)?,
        ],
        MeanRegime::RUnit => {
            let self_rhs = t.mx.scale(k).sub(z)?.scale(1.0 / r);
            vec![
                ge("mean_k", &t.mx, &k_rhs)?,
                ge("mean_c", &t.mx, &c_rhs)?,
                ge("sr_k", &t.sx, &sk_rhs)?,
                ge("sr_k_self", &t.sx, &self_rhs)?,
                ge("sr_c", &t.sx, &sc_rhs)?,
            ]
        }
        MeanRegime::RZero => unreachable!(),
    })
}

/// The bounds exactly as displayed where they differ from the derived ones:
/// `SX + (C/r)Z ≥ SY` for `0 < r < 1`, and at `r = 0` the limits `S₀X ≥ 0`
/// and `S₀X + S₀Y ≥ Z`. These are not implied by the hypotheses.
pub fn check_operator_mean_displayed(
    inst: &MeanInstance,
    iv: &Interval,
    r: f64,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let (m, h) = require_ratio(iv)?;
    let t = mean_terms(inst, r)?;
    match MeanRegime::of(r)? {
        MeanRegime::RUnit => {
            let c = c_of_hr(m, h, r)?;
            let lhs = t.sx.add(&t.z.scale(c / r))?;
            Ok(vec![InequalityVerdict::operator("sr_c_displayed", &t.sy, &lhs, ctx)?])
        }
        MeanRegime::RZero => {
            let zero = HermitianMatrix::zeros(t.z.dim());
            let sum = t.sx.add(&t.sy)?;
            Ok(vec![
                InequalityVerdict::operator("s0_nonneg_displayed", &zero, &t.sx, ctx)?,
                InequalityVerdict::operator("s0_sum_displayed", &t.z, &sum, ctx)?,
            ])
        }
        other => Err(precondition(format!(
            "no displayed-only bound in regime {}; use r in [0, 1)",
            other.name()
        ))),
    }
}

/// Reverse Shannon inequalities on `[eps, 1]`: ratio and difference forms.
pub fn check_reverse_shannon(
    p: &ProbVector,
    q: &ProbVector,
    eps: f64,
    tag: ConditionTag,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let mg = reverse_shannon_margins(p, q, eps, tag)?;
    let (h, x) = (shannon_entropy(p), cross_term(p, q)?);
    Ok(vec![
        InequalityVerdict::from_margin("reverse_shannon_k", h, x, mg.ratio, ctx),
        InequalityVerdict::from_margin("reverse_shannon_c", h, x, mg.diff, ctx),
    ])
}

/// `r`-deformed reverse inequalities with `c₁ = ln_r(1/ε)/(1-ε)` and
/// `c₂ = ls_r(ε)`.
pub fn check_parametric_reverse(
    p: &ProbVector,
    q: &ProbVector,
    eps: f64,
    r: f64,
    tag: ConditionTag,
    ctx: &TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let mg = parametric_reverse_margins(p, q, eps, r, tag)?;
    let cross = crate::classical_entropy::tsallis_cross_terms(p, q, r)?.naive;
    let own = crate::classical_entropy::tsallis_cross_terms(p, p, r)?.naive;
    Ok(vec![
        InequalityVerdict::from_margin("parametric_c1", own, cross, mg.ratio, ctx),
        InequalityVerdict::from_margin("parametric_c2", own, cross, mg.diff, ctx),
    ])
}

/// Reconstruction and unitarity residuals of the eigensolver against a
/// limit: `margin = limit - residual`. Unsorted output is an error.
pub fn check_eigensolver(a: &HermitianMatrix, limit: f64, ctx: &TrialContext) -> Result<Vec<InequalityVerdict>> {
    let eig = jacobi_eigh(a)?;
    let scale = a.frobenius_norm().max(1.0);
    let rec = eig.reconstruction_residual(a)? / scale;
    let uni = eig.unitarity_residual();
    if !eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]) {
        return Err(crate::error::Error::Consistency("eigenvalues are not in ascending order".into()));
    }
    Ok(vec![
        InequalityVerdict::from_margin("eigen_reconstruction", rec, limit, limit - rec, ctx),
        InequalityVerdict::from_margin("eigen_unitarity", uni, limit, limit - uni, ctx),
    ])
}

/// Summary of the exhaustive Karamata sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KaramataGridSummary {
    pub pairs: usize,
    pub majorized_pairs: usize,
    /// Smallest `Σ f(y) - Σ f(x)` over majorized pairs and test functions.
    pub min_margin: f64,
    /// Non-majorized pairs for which no separating convex function was
    /// found (should be zero).
    pub missing_witnesses: usize,
}

/// All ordered pairs of 3-tuples over `{0, 0.25, …, 2}`: for `x ≺ y`,
/// `Σ f(x) ≤ Σ f(y)` for `t²`, `eᵗ` and `|t - 1|`; for `x ⊀ y` a convex
/// witness must exist.
pub fn karamata_grid() -> Result<KaramataGridSummary> {
    let pts: Vec<f64> = (0..=8).map(|k| k as f64 * 0.25).collect();
    let mut tuples = Vec::with_capacity(pts.len().pow(3));
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                tuples.push(RealTuple::new(vec![a, b, c])?);
            }
        }
    }
    let tests: [fn(f64) -> f64; 3] = [|t| t * t, f64::exp, |t| (t - 1.0).abs()];
    let mut summary = KaramataGridSummary { pairs: 0, majorized_pairs: 0, min_margin: f64::INFINITY, missing_witnesses: 0 };
    for x in &tuples {
        for y in &tuples {
            summary.pairs += 1;
            if is_majorized(x, y)? {
                summary.majorized_pairs += 1;
                for g in tests {
                    let sx: f64 = x.values().iter().map(|&t| g(t)).sum();
                    let sy: f64 = y.values().iter().map(|&t| g(t)).sum();
                    summary.min_margin = summary.min_margin.min(sy - sx);
                }
            } else if convex_witness(x, y)?.is_none() {
                summary.missing_witnesses += 1;
            }
        }
    }
    Ok(summary)
}
