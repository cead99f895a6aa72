use karamata::classical_entropy::{gen_conditioned_pair, gen_floored, ConditionTag};
use karamata::operator::random::{random_gue, random_hermitian_in};
use karamata::operator::{jacobi_eigh, HermitianMatrix};
use karamata::scalar_bounds::{
    beta_constant, beta_constant_oracle, c_of_hr, diff_constant_oracle, kantorovich, ratio_constant_oracle, specht,
};
use karamata::verification::{
    gen_equal_weighted_mean_scalars, gen_weighted_stochastic, oracle_sweep, run_suite_with, Execution, OracleGrid,
    SuiteParams,
};
use karamata::{FunctionKind, FunctionSpec, Interval};
use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn to_nalgebra(a: &HermitianMatrix) -> DMatrix<Complex<f64>> {
    let n = a.dim();
    DMatrix::from_row_slice(n, n, a.as_matrix().data())
}

#[test]
fn full_oracle_grid_agrees() {
    let rows = oracle_sweep(&OracleGrid::default(), 1.0).unwrap();
    let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    assert!(bad.is_empty(), "{} of {} rows disagree: {:?}", bad.len(), rows.len(), &bad[..bad.len().min(3)]);
}

#[test]
fn jacobi_matches_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dim in 1..=8 {
        for _ in 0..25 {
            let a = random_gue(&mut rng, dim);
            let ours = jacobi_eigh(&a).unwrap().eigenvalues;
            let mut theirs: Vec<f64> = to_nalgebra(&a).symmetric_eigenvalues().iter().copied().collect();
            theirs.sort_by(f64::total_cmp);
            let scale = a.frobenius_norm().max(1.0);
            for (x, y) in ours.iter().zip(&theirs) {
                assert!((x - y).abs() <= 1e-10 * scale, "dim {dim}: {ours:?} vs {theirs:?}");
            }
        }
    }
}

#[test]
fn sequential_and_parallel_runs_agree() {
    let params = SuiteParams::default();
    for suite in ["theorem_beta", "entropy_tsallis", "reverse_shannon"] {
        let s = run_suite_with(suite, 600, 5, &params, Execution::Sequential).unwrap();
        let p = run_suite_with(suite, 600, 5, &params, Execution::Parallel).unwrap();
        assert_eq!(s.report, p.report);
        assert_eq!(s.records, p.records);
    }
}

#[test]
fn generator_contracts_hold_over_many_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let iv = Interval::new(0.5, 4.0).unwrap();
    for i in 0..10_000 {
        let n = 2 + i % 7;
        let inst = gen_equal_weighted_mean_scalars(&mut rng, n, &iv).unwrap();
        assert!(inst.mean_gap().abs() <= 1e-10);
        assert!(inst.x.iter().chain(&inst.y).all(|&t| iv.contains(t, 1e-12)));
    }
    for i in 0..10_000 {
        let n = 2 + i % 9;
        let floor = 0.9 / n as f64 * ((1 + i % 10) as f64 / 10.0);
        let tag = if i % 2 == 0 { ConditionTag::CrossDominated } else { ConditionTag::SelfDominated };
        let (p, q) = gen_conditioned_pair(&mut rng, n, floor, tag).unwrap();
        assert!(tag.holds(&p, &q).unwrap());
        assert!(p.min() >= floor - 1e-15 && q.min() >= floor - 1e-15);
    }
}

fn tlogt_unit() -> (FunctionSpec, Interval) {
    let iv = Interval::new(0.0, 1.0).unwrap();
    (FunctionSpec::new(FunctionKind::TLogT, iv).unwrap(), iv)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn beta_matches_oracle_and_is_nonnegative_at_unit_alpha(alpha in 0.0f64..3.0, lo in 0.05f64..2.0, w in 0.1f64..5.0) {
        let iv = Interval::new(lo, lo + w).unwrap();
        for kind in [FunctionKind::PowerR(2.0), FunctionKind::NegLog, FunctionKind::TLogT] {
            let f = FunctionSpec::new(kind, iv).unwrap();
            let b = beta_constant(&f, &iv, alpha).unwrap();
            let at_one = beta_constant(&f, &iv, 1.0).unwrap();
            prop_assert!(at_one >= -1e-12, "{at_one}");
            let oracle = beta_constant_oracle(&f, &iv, alpha).unwrap();
            prop_assert!((b - oracle).abs() <= 1e-7 * b.abs().max(1.0));
        }
    }

    #[test]
    fn tlogt_beta_is_alpha_over_e(alpha in 0.0f64..5.0) {
        let (f, iv) = tlogt_unit();
        let b = beta_constant(&f, &iv, alpha).unwrap();
        prop_assert!((b - alpha / std::f64::consts::E).abs() <= 1e-9 * alpha.max(1.0));
    }

    #[test]
    fn kantorovich_at_least_one_outside_unit(h in 1.0f64..50.0, r in prop_oneof![-4.0f64..-1e-3, 1.0f64..4.0]) {
        let k = kantorovich(h, r).unwrap();
        prop_assert!(k >= 1.0 - 1e-12, "K({h},{r}) = {k}");
    }

    #[test]
    fn kantorovich_at_most_one_inside_unit(h in 1.0f64..50.0, r in 1e-3f64..0.999) {
        let k = kantorovich(h, r).unwrap();
        prop_assert!(k <= 1.0 + 1e-12, "K({h},{r}) = {k}");
    }

    #[test]
    fn kantorovich_matches_ratio_oracle(h in 1.05f64..30.0, r in prop_oneof![-3.0f64..-0.1, 0.1f64..0.9, 1.1f64..3.0]) {
        let f = FunctionSpec::on(FunctionKind::PowerR(r), 1.0, h).unwrap();
        let k = kantorovich(h, r).unwrap();
        let oracle = ratio_constant_oracle(&f, &f.domain()).unwrap();
        prop_assert!((k - oracle).abs() <= 1e-7 * k.abs().max(1.0));
    }

    #[test]
    fn c_of_hr_matches_difference_oracle(m in 0.2f64..3.0, h in 1.05f64..20.0, r in prop_oneof![-2.0f64..-0.1, 0.1f64..0.9, 1.1f64..3.0]) {
        let f = FunctionSpec::on(FunctionKind::PowerR(r), m, m * h).unwrap();
        let c = c_of_hr(m, h, r).unwrap();
        let oracle = diff_constant_oracle(&f, &f.domain()).unwrap();
        prop_assert!((c - oracle).abs() <= 1e-7 * c.abs().max(1.0));
    }

    #[test]
    fn specht_is_symmetric_and_at_least_one(h in 1e-3f64..1e3) {
        let a = specht(h).unwrap();
        let b = specht(1.0 / h).unwrap();
        prop_assert!(a >= 1.0 - 1e-12);
        prop_assert!((a - b).abs() <= 1e-11 * a);
    }

    #[test]
    fn weighted_stochastic_preserves_marginals(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = gen_floored(&mut rng, n, 1e-3).unwrap().probs().to_vec();
        let s = gen_weighted_stochastic(&mut rng, &p).unwrap();
        for row in &s {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            prop_assert!(row.iter().all(|&v| v >= 0.0));
        }
        for j in 0..n {
            let col: f64 = (0..n).map(|i| p[i] * s[i][j]).sum();
            prop_assert!((col - p[j]).abs() <= 1e-10);
        }
    }

    #[test]
    fn jacobi_reconstructs(seed in any::<u64>(), dim in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iv = Interval::new(-3.0, 3.0).unwrap();
        let a = random_hermitian_in(&mut rng, dim, &iv).unwrap();
        let eig = jacobi_eigh(&a).unwrap();
        prop_assert!(eig.reconstruction_residual(&a).unwrap() <= 1e-10 * a.frobenius_norm().max(1.0));
        prop_assert!(eig.unitarity_residual() <= 1e-10);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn suites_are_seed_deterministic(seed in any::<u64>()) {
        let params = SuiteParams::default();
        let a = run_suite_with("scalar_corollary", 40, seed, &params, Execution::Parallel).unwrap();
        let b = run_suite_with("scalar_corollary", 40, seed, &params, Execution::Parallel).unwrap();
        prop_assert_eq!(a.records, b.records);
        prop_assert_eq!(a.report.failures, 0);
    }
}
