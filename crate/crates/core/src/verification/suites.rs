//! Deterministic randomized suites.
//!
//! Trial `i` of suite `s` draws from a ChaCha stream seeded by
//! `splitmix(seed, i, fnv1a(s))`, so results do not depend on how trials
//! are scheduled. Trials run in chunks; within a chunk they may run in
//! parallel, and records are merged in trial order.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::catalog::CatalogFn;
use super::checks::*;
use super::generators::*;
use super::{InequalityVerdict, TrialContext, TrialRecord, TrialReport, OPERATOR_TOL, SCALAR_TOL};
use crate::classical_entropy::{
    gen_conditioned_pair, gen_floored, information_inequality_margin, tsallis_information_margin,
    ConditionTag,
};
use crate::error::{domain, Error, Result};
use crate::function::{Curvature, FunctionSpec, Interval};
use crate::majorization::{fuchs_margin, moment_margin, RealTuple};
use crate::operator::random::{
    random_gue, random_hermitian_in, random_hermitian_with_spectrum, uniform_spectrum,
};
use crate::operator::spectrum_in;

/// Suites run by `all`, in report order.
pub const ALL_SUITES: [&str; 13] = [
    "lemma_jensen",
    "theorem_beta",
    "corollary_weighted",
    "scalar_corollary",
    "entropy_vonneumann",
    "entropy_tsallis",
    "operator_mean",
    "reverse_shannon",
    "parametric_reverse",
    "majorization",
    "information_inequality",
    "eigensolver",
    "generators",
];

/// Suites that are runnable by name but excluded from `all`: they check
/// bounds as displayed where those are not implied by the hypotheses.
pub const EXTRA_SUITES: [&str; 1] = ["operator_mean_displayed"];

const CHUNK: usize = 256;
const ALPHAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
const TSALLIS_RS: [f64; 3] = [0.1, 0.5, 0.9];
/// Residual limit for eigensolver and generator contracts.
pub const CONTRACT_LIMIT: f64 = 1e-10;

/// Optional overrides; anything left `None` is drawn per trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteParams {
    pub dims: Option<Vec<usize>>,
    pub r: Option<f64>,
    pub alpha: Option<f64>,
    pub eps: Option<f64>,
    pub m: Option<f64>,
    #[serde(rename = "M")]
    pub big_m: Option<f64>,
    pub function: Option<String>,
    pub regime: Option<String>,
    pub family: Option<String>,
    pub tol: Option<f64>,
    /// Multiplies every β, K and C; values below one are fault injection.
    pub constant_scale: f64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            dims: None,
            r: None,
            alpha: None,
            eps: None,
            m: None,
            big_m: None,
            function: None,
            regime: None,
            family: None,
            tol: None,
            constant_scale: 1.0,
        }
    }
}

impl SuiteParams {
    pub fn validate(&self) -> Result<()> {
        if let Some(d) = &self.dims {
            if d.is_empty() || d.iter().any(|&k| k == 0 || k > 64) {
                return Err(domain(format!("dims must be a non-empty subset of [1, 64], got {d:?}")));
            }
        }
        match (self.m, self.big_m) {
            (Some(m), Some(big)) if !(m < big) => {
                return Err(domain(format!("need m < M, got m = {m}, M = {big}")));
            }
            (Some(_), None) | (None, Some(_)) => return Err(domain("m and M must be given together")),
            _ => {}
        }
        if let Some(a) = self.alpha {
            if !(a >= 0.0) || !a.is_finite() {
                return Err(domain(format!("alpha must be finite and >= 0, got {a}")));
            }
        }
        if let Some(e) = self.eps {
            if !(e > 0.0 && e < 1.0) {
                return Err(domain(format!("eps must lie in (0, 1), got {e}")));
            }
        }
        if let Some(f) = &self.function {
            CatalogFn::parse(f)?;
        }
        if let Some(r) = &self.regime {
            MeanRegime::parse(r)?;
        }
        if let Some(k) = &self.family {
            FamilyKind::parse(k)?;
        }
        if !(self.constant_scale > 0.0) || !self.constant_scale.is_finite() {
            return Err(domain(format!("constant scale must be positive, got {}", self.constant_scale)));
        }
        Ok(())
    }

    fn fixed_interval(&self) -> Option<(f64, f64)> {
        self.m.zip(self.big_m)
    }

    fn dim_for(&self, trial: usize, default: &[usize]) -> usize {
        let dims = self.dims.as_deref().unwrap_or(default);
        dims[trial % dims.len()]
    }

    fn function_for(&self, trial: usize, rotation: &[CatalogFn]) -> CatalogFn {
        match &self.function {
            Some(f) => CatalogFn::parse(f).expect("validated"),
            None => rotation[(trial / 3) % rotation.len()],
        }
    }

    fn alpha_for<R: Rng + ?Sized>(&self, rng: &mut R, trial: usize) -> f64 {
        self.alpha.unwrap_or_else(|| {
            if trial.is_multiple_of(2) {
                ALPHAS[(trial / 2) % ALPHAS.len()]
            } else {
                rng.random_range(0.0..3.0)
            }
        })
    }
}

/// How trials within a chunk are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub enum Execution {
    Sequential,
    /// Data-parallel over a chunk; sequential when built without the
    /// `parallel` feature.
    #[default]
    Parallel,
}


/// A report together with its per-trial records.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRun {
    pub report: TrialReport,
    pub records: Vec<TrialRecord>,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in suite `suite`.
pub fn trial_seed(seed: u64, trial: usize, suite: &str) -> u64 {
    splitmix(splitmix(seed ^ fnv1a(suite)) ^ splitmix(trial as u64))
}

type TrialFn = fn(&mut ChaCha8Rng, usize, &SuiteParams, &mut TrialContext) -> Result<Vec<InequalityVerdict>>;

fn lookup(suite: &str) -> Result<(TrialFn, f64)> {
    Ok(match suite {
        "lemma_jensen" => (trial_lemma as TrialFn, SCALAR_TOL),
        "theorem_beta" => (trial_theorem, OPERATOR_TOL),
        "corollary_weighted" => (trial_corollary, OPERATOR_TOL),
        "scalar_corollary" => (trial_scalar, SCALAR_TOL),
        "entropy_vonneumann" => (trial_vonneumann, SCALAR_TOL),
        "entropy_tsallis" => (trial_tsallis, SCALAR_TOL),
        "operator_mean" => (trial_operator_mean, OPERATOR_TOL),
        "operator_mean_displayed" => (trial_operator_mean_displayed, OPERATOR_TOL),
        "reverse_shannon" => (trial_reverse_shannon, SCALAR_TOL),
        "parametric_reverse" => (trial_parametric, SCALAR_TOL),
        "majorization" => (trial_majorization, SCALAR_TOL),
        "information_inequality" => (trial_information, SCALAR_TOL),
        "eigensolver" => (trial_eigensolver, 0.0),
        "generators" => (trial_generators, 0.0),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

fn run_trial(suite: &str, f: TrialFn, tol: f64, trial: usize, seed: u64, params: &SuiteParams) -> TrialRecord {
    let s = trial_seed(seed, trial, suite);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let mut ctx = TrialContext::new(s, tol);
    match f(&mut rng, trial, params, &mut ctx) {
        Ok(verdicts) => TrialRecord::from_verdicts(suite, trial, ctx, &verdicts),
        Err(e) => TrialRecord::from_error(suite, trial, ctx, &e),
    }
}

fn run_chunk(
    suite: &str,
    f: TrialFn,
    tol: f64,
    range: std::ops::Range<usize>,
    seed: u64,
    params: &SuiteParams,
    exec: Execution,
) -> Vec<TrialRecord> {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(|i| run_trial(suite, f, tol, i, seed, params)).collect()
        }
        _ => range.map(|i| run_trial(suite, f, tol, i, seed, params)).collect(),
    }
}

/// Runs `trials` trials, handing each record to `sink` in trial order.
pub fn run_suite_streaming<S>(
    suite: &str,
    trials: usize,
    seed: u64,
    params: &SuiteParams,
    exec: Execution,
    mut sink: S,
) -> Result<TrialReport>
where
    S: FnMut(&TrialRecord) -> Result<()>,
{
    let (f, default_tol) = lookup(suite)?;
    params.validate()?;
    let tol = params.tol.unwrap_or(default_tol);
    let mut report = TrialReport::empty(suite);
    let mut start = 0;
    while start < trials {
        let end = (start + CHUNK).min(trials);
        for rec in run_chunk(suite, f, tol, start..end, seed, params, exec) {
            sink(&rec)?;
            report.absorb(&rec);
        }
        start = end;
    }
    Ok(report)
}

pub fn run_suite_with(
    suite: &str,
    trials: usize,
    seed: u64,
    params: &SuiteParams,
    exec: Execution,
) -> Result<SuiteRun> {
    let mut records = Vec::with_capacity(trials);
    let report = run_suite_streaming(suite, trials, seed, params, exec, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok(SuiteRun { report, records })
}

/// Aggregate report; `elapsed_ms` stays 0 (see [`timed`]).
pub fn run_suite(suite: &str, trials: usize, seed: u64, params: &SuiteParams) -> Result<TrialReport> {
    run_suite_streaming(suite, trials, seed, params, Execution::default(), |_| Ok(()))
}

/// Every suite in [`ALL_SUITES`] with the same trial count and seed.
pub fn run_all(trials: usize, seed: u64, params: &SuiteParams) -> Result<Vec<TrialReport>> {
    ALL_SUITES.iter().map(|s| run_suite(s, trials, seed, params)).collect()
}

/// Runs `f` and stores the wall time in the report.
pub fn timed<F>(f: F) -> Result<TrialReport>
where
    F: FnOnce() -> Result<TrialReport>,
{
    let t0 = Instant::now();
    let mut rep = f()?;
    rep.elapsed_ms = t0.elapsed().as_millis() as u64;
    Ok(rep)
}

// ---------------------------------------------------------------------------
// trial bodies

fn record_spec(ctx: &mut TrialContext, f: &FunctionSpec) {
    ctx.function = Some(f.name());
    ctx.m = Some(f.domain().lo());
    ctx.big_m = Some(f.domain().hi());
}

fn draw_fn(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    rotation: &[CatalogFn],
    ctx: &mut TrialContext,
) -> Result<FunctionSpec> {
    let cat = params.function_for(trial, rotation);
    let f = cat.draw_spec(rng, trial.is_multiple_of(2), params.fixed_interval(), params.eps)?;
    record_spec(ctx, &f);
    Ok(f)
}

fn trial_lemma(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let dim = params.dim_for(trial, &[2, 3, 4, 5, 6, 7, 8]);
    let n = rng.random_range(1..=3);
    let f = draw_fn(rng, trial, params, &CatalogFn::ROTATION, ctx)?;
    let family = gen_unital_family(rng, n, dim, trial)?;
    let iv = f.domain();
    let a = (0..n)
        .map(|_| random_hermitian_in(rng, dim, &iv))
        .collect::<Result<Vec<_>>>()?;
    let xs = lemma_vectors(rng, family.dim_out(), 16);
    ctx.dim = Some(dim);
    ctx.n = Some(n);
    check_lemma_jensen(&family, &a, &f, &xs, ctx)
}

fn family_for(params: &SuiteParams, trial: usize) -> FamilyKind {
    match &params.family {
        Some(k) => FamilyKind::parse(k).expect("validated"),
        None => FamilyKind::ALL[trial % FamilyKind::ALL.len()],
    }
}

fn trial_theorem(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let dim = params.dim_for(trial, &[2, 4, 8]);
    let n = rng.random_range(1..=4);
    let kind = family_for(params, trial);
    let f = draw_fn(rng, trial, params, &CatalogFn::ROTATION, ctx)?;
    let alpha = params.alpha_for(rng, trial);
    let inst = gen_equal_map_sum_operators(rng, n, dim, &f.domain(), kind)?;
    ctx.dim = Some(dim);
    ctx.n = Some(n);
    ctx.alpha = Some(alpha);
    ctx.family = Some(kind.name().into());
    Ok(vec![check_theorem_beta_scaled(&inst.family, &inst.a, &inst.b, &f, alpha, params.constant_scale, ctx)?])
}

fn trial_corollary(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let dim = params.dim_for(trial, &[2, 4, 8]);
    let n = rng.random_range(1..=4);
    let f = draw_fn(rng, trial, params, &CatalogFn::ROTATION, ctx)?;
    let alpha = params.alpha_for(rng, trial);
    let iv = f.domain();
    let p = crate::operator::random::random_weights(rng, n);
    let (a, b, family) = match trial % 3 {
        0 => {
            let a = (0..n)
                .map(|_| random_hermitian_in(rng, dim, &iv))
                .collect::<Result<Vec<_>>>()?;
            let s = gen_weighted_stochastic(rng, &p)?;
            let b = mix(&s, &a)?;
            (a, b, "weighted_mix")
        }
        1 => {
            // every B_i equal to Σ p_j A_j
            let a = (0..n)
                .map(|_| random_hermitian_in(rng, dim, &iv))
                .collect::<Result<Vec<_>>>()?;
            let b = mix(&vec![p.clone(); n], &a)?;
            (a, b, "jensen_reduction")
        }
        _ => {
            let basis = crate::operator::random::random_unitary(rng, dim).adjoint();
            let a = (0..n)
                .map(|_| {
                    let d: Vec<f64> =
                        (0..dim).map(|_| if rng.random_bool(0.5) { iv.lo() } else { iv.hi() }).collect();
                    crate::operator::HermitianMatrix::from_real_diag(&d)?.congruence(&basis)
                })
                .collect::<Result<Vec<_>>>()?;
            let b = mix(&vec![p.clone(); n], &a)?;
            (a, b, "endpoint_mix")
        }
    };
    ctx.dim = Some(dim);
    ctx.n = Some(n);
    ctx.alpha = Some(alpha);
    ctx.family = Some(family.into());
    check_corollary_weighted_scaled(&p, &a, &b, &f, alpha, params.constant_scale, ctx)
}

fn trial_scalar(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let n = params.dim_for(trial, &[2, 3, 4, 5, 6, 7, 8]).max(2);
    let f = draw_fn(rng, trial, params, &CatalogFn::ROTATION, ctx)?;
    let alpha = params.alpha_for(rng, trial);
    let iv = f.domain();
    let relaxed_ok = f.curvature() == Curvature::Convex && f.is_decreasing();
    let (inst, mode, label) = match trial % 3 {
        0 => (gen_equal_weighted_mean_scalars(rng, n, &iv)?, ScalarMode::EqualMeans, "equal_means"),
        1 => (gen_endpoint_scalars(rng, n, &iv), ScalarMode::EqualMeans, "jensen_reduction"),
        _ if relaxed_ok => {
            let mut s = gen_equal_weighted_mean_scalars(rng, n, &iv)?;
            // lower x toward m, which keeps Σp·x ≤ Σp·y
            let lambda: f64 = rng.random();
            s.x.iter_mut().for_each(|v| *v = iv.lo() + (1.0 - lambda) * (*v - iv.lo()));
            (s, ScalarMode::Relaxed, "relaxed")
        }
        _ => (gen_equal_weighted_mean_scalars(rng, n, &iv)?, ScalarMode::EqualMeans, "equal_means"),
    };
    ctx.n = Some(n);
    ctx.alpha = Some(alpha);
    ctx.family = Some(label.into());
    check_scalar_corollary_scaled(&inst.p, &inst.x, &inst.y, &f, alpha, mode, params.constant_scale, ctx)
}

fn density_pair(
    rng: &mut ChaCha8Rng,
    dim: usize,
) -> Result<(crate::operator::DensityMatrix, crate::operator::DensityMatrix)> {
    let ra = rng.random_range(1..=dim);
    let rb = rng.random_range(1..=dim);
    Ok((gen_density_of_rank(rng, dim, ra)?, gen_density_of_rank(rng, dim, rb)?))
}

fn trial_vonneumann(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let dim = params.dim_for(trial, &[2, 3, 4, 5, 6, 7, 8]);
    let alpha = params.alpha_for(rng, trial);
    let (a, b) = density_pair(rng, dim)?;
    ctx.dim = Some(dim);
    ctx.alpha = Some(alpha);
    check_entropy_vonneumann(&a, &b, alpha, ctx)
}

fn trial_tsallis(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let dim = params.dim_for(trial, &[2, 3, 4, 5, 6, 7, 8]);
    let alpha = params.alpha_for(rng, trial);
    let r = params.r.unwrap_or(TSALLIS_RS[trial % TSALLIS_RS.len()]);
    let (a, b) = density_pair(rng, dim)?;
    ctx.dim = Some(dim);
    ctx.alpha = Some(alpha);
    ctx.r = Some(r);
    check_entropy_tsallis(&a, &b, alpha, r, ctx)
}

fn mean_setup(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    regimes: &[MeanRegime],
    ctx: &mut TrialContext,
) -> Result<(MeanInstance, Interval, f64)> {
    let dim = params.dim_for(trial, &[2, 3, 4, 5, 6]);
    let n = rng.random_range(1..=3);
    let regime = match (&params.regime, params.r) {
        (_, Some(r)) => MeanRegime::of(r)?,
        (Some(name), None) => MeanRegime::parse(name)?,
        (None, None) => regimes[trial % regimes.len()],
    };
    let r = params.r.unwrap_or_else(|| match regime {
        MeanRegime::RGe1 => rng.random_range(1.0..3.0),
        MeanRegime::RNeg => rng.random_range(-2.0..-0.1),
        MeanRegime::RUnit => rng.random_range(0.05..0.95),
        MeanRegime::RZero => 0.0,
    });
    let iv = match params.fixed_interval() {
        Some((m, big)) => Interval::new(m, big)?,
        None => {
            let m = rng.random_range(0.2..1.0);
            Interval::new(m, m * rng.random_range(1.2..8.0))?
        }
    };
    let endpoint = (trial / regimes.len()) % 2 == 1;
    let inst = gen_mean_instance(rng, n, dim, &iv, endpoint)?;
    ctx.dim = Some(dim);
    ctx.n = Some(n);
    ctx.r = Some(r);
    ctx.m = Some(iv.lo());
    ctx.big_m = Some(iv.hi());
    ctx.regime = Some(regime.name().into());
    ctx.family = Some(if endpoint { "endpoint_mix" } else { "weighted_mix" }.into());
    Ok((inst, iv, r))
}

fn trial_operator_mean(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let (inst, iv, r) = mean_setup(rng, trial, params, &MeanRegime::ALL, ctx)?;
    check_operator_mean_bounds_scaled(&inst, &iv, r, params.constant_scale, ctx)
}

fn trial_operator_mean_displayed(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let (inst, iv, r) = mean_setup(rng, trial, params, &[MeanRegime::RUnit, MeanRegime::RZero], ctx)?;
    check_operator_mean_displayed(&inst, &iv, r, ctx)
}

fn reverse_setup(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<(crate::classical_entropy::ProbVector, crate::classical_entropy::ProbVector, f64, ConditionTag)> {
    let n = params.dim_for(trial, &[2, 3, 4, 5, 6, 7, 8]).max(2);
    let eps = match params.eps {
        Some(e) if e * n as f64 <= 1.0 => e,
        Some(e) => return Err(domain(format!("eps = {e} is too large for n = {n}"))),
        None => rng.random_range(0.005..0.9 / n as f64),
    };
    let tag = if trial.is_multiple_of(2) { ConditionTag::CrossDominated } else { ConditionTag::SelfDominated };
    let (p, q) = gen_conditioned_pair(rng, n, eps, tag)?;
    ctx.n = Some(n);
    ctx.eps = Some(eps);
    ctx.family = Some(format!("{tag:?}"));
    Ok((p, q, eps, tag))
}

fn trial_reverse_shannon(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let (p, q, eps, tag) = reverse_setup(rng, trial, params, ctx)?;
    check_reverse_shannon(&p, &q, eps, tag, ctx)
}

fn trial_parametric(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let (p, q, eps, tag) = reverse_setup(rng, trial, params, ctx)?;
    let r = params.r.unwrap_or_else(|| rng.random_range(0.1..3.0));
    ctx.r = Some(r);
    check_parametric_reverse(&p, &q, eps, r, tag, ctx)
}

fn trial_majorization(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let n = params.dim_for(trial, &[1, 2, 3, 4, 5, 6, 7, 8]);
    let iv = match params.fixed_interval() {
        Some((m, big)) => Interval::new(m, big)?,
        None => Interval::new(0.1, rng.random_range(1.0..5.0))?,
    };
    let (x, y, p) = gen_fuchs_instance(rng, n, &iv)?;
    let convex: Vec<CatalogFn> =
        CatalogFn::ROTATION.into_iter().filter(|c| c.kind_is_convex()).collect();
    let cat = convex[trial % convex.len()];
    let f = FunctionSpec::new(cat.kind(), iv)?;
    ctx.n = Some(n);
    record_spec(ctx, &f);
    let mut out = vec![InequalityVerdict::from_margin(
        "fuchs",
        0.0,
        0.0,
        fuchs_margin(&f, &x, &y, &p)?,
        ctx,
    )];
    for order in [2, 4] {
        let m = moment_margin(&p, &x, &y, order)?;
        out.push(InequalityVerdict::from_margin(format!("moment_{order}"), 0.0, 0.0, m, ctx));
    }
    // classical Karamata: x = S y with S doubly stochastic gives x ≺ y
    let uniform = vec![1.0 / n as f64; n];
    let s = gen_weighted_stochastic(rng, &uniform)?;
    let yv = uniform_spectrum(rng, n, &iv);
    let xv: Vec<f64> = s.iter().map(|row| row.iter().zip(&yv).map(|(a, b)| a * b).sum()).collect();
    let k = RealTuple::new(xv.clone())?;
    if !crate::majorization::is_majorized(&k, &RealTuple::new(yv.clone())?)? {
        return Err(Error::Consistency("doubly stochastic image is not majorized".into()));
    }
    let sum = |v: &[f64]| v.iter().try_fold(0.0, |acc, t| Ok::<_, Error>(acc + f.eval(*t)?));
    let (fx, fy) = (sum(&xv)?, sum(&yv)?);
    out.push(InequalityVerdict::scalar("karamata", fx, fy, ctx));
    Ok(out)
}

fn trial_information(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let n = params.dim_for(trial, &[2, 3, 4, 5, 6, 7, 8]);
    let floor = params.eps.unwrap_or(1e-6).min(0.5 / n as f64);
    let p = gen_floored(rng, n, floor)?;
    let q = gen_floored(rng, n, floor)?;
    let r = params.r.unwrap_or_else(|| rng.random_range(0.01..=1.0));
    ctx.n = Some(n);
    ctx.r = Some(r);
    Ok(vec![
        InequalityVerdict::from_margin("gibbs", 0.0, 0.0, information_inequality_margin(&p, &q)?, ctx),
        InequalityVerdict::from_margin("tsallis_gibbs", 0.0, 0.0, tsallis_information_margin(&p, &q, r)?, ctx),
    ])
}

fn trial_eigensolver(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let default: Vec<usize> = (2..=16).collect();
    let dim = params.dim_for(trial, &default);
    let a = if trial.is_multiple_of(2) {
        random_gue(rng, dim)
    } else {
        // clustered spectrum: pairs of nearly equal eigenvalues
        let spectrum: Vec<f64> = (0..dim).map(|k| (k / 2) as f64 + 1e-9 * rng.random::<f64>()).collect();
        random_hermitian_with_spectrum(rng, &spectrum)?
    };
    ctx.dim = Some(dim);
    check_eigensolver(&a, CONTRACT_LIMIT, ctx)
}

fn trial_generators(
    rng: &mut ChaCha8Rng,
    trial: usize,
    params: &SuiteParams,
    ctx: &mut TrialContext,
) -> Result<Vec<InequalityVerdict>> {
    let dim = params.dim_for(trial, &[2, 3, 4]);
    let n = rng.random_range(2..=5);
    let iv = Interval::new(0.25, 3.0)?;
    let s = gen_equal_weighted_mean_scalars(rng, n, &iv)?;
    let kind = family_for(params, trial);
    let inst = gen_equal_map_sum_operators(rng, n, dim, &iv, kind)?;
    let in_range = inst.a.iter().chain(&inst.b).try_fold(true, |ok, m| Ok::<_, Error>(ok && spectrum_in(m, &iv)?))?;
    let unital = inst.family.unital_residual()?;
    let sums = inst.residual()?;
    ctx.dim = Some(dim);
    ctx.n = Some(n);
    ctx.family = Some(kind.name().into());
    let gap = s.mean_gap().abs();
    Ok(vec![
        InequalityVerdict::from_margin("equal_means", gap, 1e-12, 1e-12 - gap, ctx),
        InequalityVerdict::from_margin("equal_map_sums", sums, CONTRACT_LIMIT, CONTRACT_LIMIT - sums, ctx),
        InequalityVerdict::from_margin("unital", unital, CONTRACT_LIMIT, CONTRACT_LIMIT - unital, ctx),
        InequalityVerdict::from_margin("spectra_in_range", 0.0, 0.0, if in_range { 0.0 } else { -1.0 }, ctx),
    ])
}

impl CatalogFn {
    fn kind_is_convex(self) -> bool {
        FunctionSpec::on(self.kind(), 0.5, 2.0).is_ok_and(|f| f.curvature() == Curvature::Convex)
    }
}
