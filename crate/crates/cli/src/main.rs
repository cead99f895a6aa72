//! `karamata`: constants, verification suites, parameter scans and oracle
//! checks from the command line.
//!
//! Exit codes: 0 success, 1 inequality failures or oracle mismatches,
//! 2 usage errors (bad flags, unknown suite, invalid parameters, I/O).

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use karamata::operator::{jacobi_eigh, HermitianMatrix, MatrixJson};
use karamata::verification::{
    constants_table, fannes_comparison, linspace, oracle_sweep, run_suite_streaming, scan_c_of_hr,
    scan_kantorovich, scan_ls_r, scan_specht, write_json, ConstantParams, CsvSink, Execution, OracleGrid,
    SuiteParams, TrialReport, ALL_SUITES, EXTRA_SUITES,
};
use serde::Serialize;

use config::{pick, ConfigFile, Format};

#[derive(Parser)]
#[command(name = "karamata", version, about = "Reverse-Jensen constants, entropy bounds and randomized verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form constants next to their optimizer values.
    Constants(ConstantsArgs),
    /// Run verification suites and report failures.
    Verify(VerifyArgs),
    /// Sweep a constant over one parameter.
    Scan(ScanArgs),
    /// Compare every closed form with the interval optimizer over a grid.
    Oracle(OracleArgs),
    /// Eigendecomposition of a Hermitian matrix given as `{dim, re, im}` JSON.
    Eig(EigArgs),
}

#[derive(Args, Clone)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct ParamFlags {
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    /// Lower endpoint of the spectral interval.
    #[arg(long = "m")]
    m: Option<f64>,
    /// Upper endpoint of the spectral interval.
    #[arg(long = "M")]
    big_m: Option<f64>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id, or `all` for every standard suite.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated dimensions to draw from, each in [1, 64].
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[command(flatten)]
    params: ParamFlags,
    /// Catalog function (tlogt, neglog, power2, tsallis0.5, inverse, sqrt).
    #[arg(long)]
    function: Option<String>,
    /// Operator-mean regime (r_ge1, r_neg, r_unit, r_zero).
    #[arg(long)]
    regime: Option<String>,
    /// Map family (uniform_permutation, doubly_stochastic_mix, normalized_trace, endpoint_mix).
    #[arg(long)]
    family: Option<String>,
    /// Margin tolerance override.
    #[arg(long)]
    tol: Option<f64>,
    /// Record wall time in `elapsed_ms` (reports are then not reproducible).
    #[arg(long)]
    timing: bool,
    /// Run trials on the calling thread only.
    #[arg(long)]
    sequential: bool,
    /// List the suite ids and exit.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    /// `dim/e` against the weak Fannes bound over a dimension range.
    Fannes,
    /// `ls_r(eps)` over `r`.
    #[value(name = "ls_r")]
    LsR,
    /// Specht ratio over `h`, with its mirror `S(1/h)`.
    Specht,
    /// `K(h, r)` over `r`.
    Kantorovich,
    /// `C(h, r)` over `r` with lower endpoint `m`.
    #[value(name = "c_of_hr")]
    COfHr,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(value_enum)]
    axis: Axis,
    /// Start of the swept range.
    #[arg(long)]
    from: Option<f64>,
    /// End of the swept range.
    #[arg(long)]
    to: Option<f64>,
    /// Number of points (ignored for `fannes`, which steps by one).
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long = "m")]
    m: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct OracleArgs {
    /// One point per parameter axis.
    #[arg(long)]
    single: bool,
    /// Multiply every closed form before comparing (fault injection).
    #[arg(long, default_value_t = 1.0, hide = true)]
    perturb: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EigArgs {
    /// Matrix file; `-` reads stdin.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

enum Outcome {
    Clean,
    Failures,
}

struct Resolved {
    out: Option<PathBuf>,
    format: Format,
    file: ConfigFile,
}

fn resolve(output: &Output) -> Result<Resolved> {
    let file = match &output.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    Ok(Resolved {
        out: pick(output.out.clone(), file.out.clone()),
        format: pick(output.format, file.format).unwrap_or(Format::Json),
        file,
    })
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn emit_csv<T: Serialize>(rows: &[T], out: &Option<PathBuf>) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn params_label(p: &std::collections::BTreeMap<String, f64>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct FlatRow<'a> {
    name: &'a str,
    params: String,
    closed_form: f64,
    oracle_value: f64,
    abs_diff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
}

fn cmd_constants(args: ConstantsArgs) -> Result<Outcome> {
    let res = resolve(&args.output)?;
    let f = &res.file.params;
    let p = ConstantParams {
        eps: pick(args.params.eps, f.eps),
        r: pick(args.params.r, f.r),
        alpha: pick(args.params.alpha, f.alpha),
        m: pick(args.params.m, f.m),
        big_m: pick(args.params.big_m, f.big_m),
    };
    let rows = constants_table(&p)?;
    match res.format {
        Format::Json => emit_json(&rows, &res.out)?,
        Format::Csv => {
            let flat: Vec<FlatRow> = rows
                .iter()
                .map(|r| FlatRow {
                    name: &r.name,
                    params: params_label(&r.params),
                    closed_form: r.closed_form,
                    oracle_value: r.oracle_value,
                    abs_diff: r.abs_diff,
                    pass: None,
                })
                .collect();
            emit_csv(&flat, &res.out)?
        }
    }
    Ok(Outcome::Clean)
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome> {
    if args.list {
        for s in ALL_SUITES.iter().chain(EXTRA_SUITES.iter()) {
            println!("{s}");
        }
        return Ok(Outcome::Clean);
    }
    let res = resolve(&args.output)?;
    let file = &res.file;
    let fp = &file.params;
    let suite = pick(args.suite.clone(), file.suite.clone())
        .ok_or_else(|| anyhow!("--suite is required (use `all` for every suite, `--list` to see ids)"))?;
    let suites: Vec<&str> = if suite == "all" {
        ALL_SUITES.to_vec()
    } else if let Some(s) = ALL_SUITES.iter().chain(EXTRA_SUITES.iter()).find(|s| **s == suite) {
        vec![*s]
    } else {
        return Err(anyhow!("unknown suite `{suite}`"));
    };
    let trials = pick(args.trials, file.trials).unwrap_or(1000);
    let seed = pick(args.seed, file.seed).unwrap_or(0);
    let params = SuiteParams {
        dims: pick(args.dims.clone(), file.dims.clone()),
        r: pick(args.params.r, fp.r),
        alpha: pick(args.params.alpha, fp.alpha),
        eps: pick(args.params.eps, fp.eps),
        m: pick(args.params.m, fp.m),
        big_m: pick(args.params.big_m, fp.big_m),
        function: pick(args.function.clone(), fp.function.clone()),
        regime: pick(args.regime.clone(), fp.regime.clone()),
        family: pick(args.family.clone(), fp.family.clone()),
        tol: pick(args.tol, fp.tol),
        ..SuiteParams::default()
    };
    if let Some(m) = params.m {
        if m.is_nan() || m <= 0.0 {
            return Err(anyhow!("m must be > 0, got {m}"));
        }
    }
    params.validate()?;
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };

    let start = Instant::now();
    let mut reports: Vec<TrialReport> = Vec::with_capacity(suites.len());
    match res.format {
        Format::Json => {
            for s in &suites {
                let t0 = Instant::now();
                let mut rep = run_suite_streaming(s, trials, seed, &params, exec, |_| Ok(()))?;
                if args.timing {
                    rep.elapsed_ms = t0.elapsed().as_millis() as u64;
                }
                reports.push(rep);
            }
            let w = sink(&res.out)?;
            write_json(&reports, w)?.flush()?;
        }
        Format::Csv => {
            let mut csv = CsvSink::new(sink(&res.out)?)?;
            for s in &suites {
                let rep = run_suite_streaming(s, trials, seed, &params, exec, |r| csv.push(r))?;
                reports.push(rep);
            }
            csv.finish()?.flush()?;
        }
    }
    let failures: usize = reports.iter().map(|r| r.failures).sum();
    for r in &reports {
        if r.failures > 0 {
            eprintln!(
                "{}: {}/{} failed (worst {} at {:e})",
                r.suite_id,
                r.failures,
                r.trials,
                r.worst_inequality.as_deref().unwrap_or("-"),
                r.min_margin.unwrap_or(f64::NAN)
            );
        }
    }
    eprintln!(
        "{} suite(s), {} trial(s) each, {} failure(s), wall time {} ms",
        reports.len(),
        trials,
        failures,
        start.elapsed().as_millis()
    );
    Ok(if failures == 0 { Outcome::Clean } else { Outcome::Failures })
}

fn cmd_scan(args: ScanArgs) -> Result<Outcome> {
    let res = resolve(&args.output)?;
    let fp = &res.file.params;
    let span = |lo: f64, hi: f64| linspace(args.from.unwrap_or(lo), args.to.unwrap_or(hi), args.points);
    let eps = pick(args.eps, fp.eps).unwrap_or(0.1);
    let h = args.h.unwrap_or(4.0);
    let m = pick(args.m, fp.m).unwrap_or(1.0);
    if let Axis::Fannes = args.axis {
        let lo = args.from.unwrap_or(1.0);
        let hi = args.to.unwrap_or(10.0);
        if !(lo >= 1.0 && hi >= lo && lo.fract() == 0.0 && hi.fract() == 0.0) {
            return Err(anyhow!("fannes scan needs integer bounds 1 <= from <= to, got {lo}..{hi}"));
        }
        let rows = fannes_comparison(lo as usize..=hi as usize)?;
        match res.format {
            Format::Json => emit_json(&rows, &res.out)?,
            Format::Csv => emit_csv(&rows, &res.out)?,
        }
        return Ok(Outcome::Clean);
    }
    let pts = match args.axis {
        Axis::LsR => scan_ls_r(eps, &span(0.05, 3.0)),
        Axis::Specht => scan_specht(&span(0.05, 20.0)),
        Axis::Kantorovich => scan_kantorovich(h, &span(-3.0, 3.0)),
        Axis::COfHr => scan_c_of_hr(m, h, &span(-3.0, 3.0)),
        Axis::Fannes => unreachable!(),
    }
    ?;
    match res.format {
        Format::Json => emit_json(&pts, &res.out)?,
        Format::Csv => emit_csv(&pts, &res.out)?,
    }
    Ok(Outcome::Clean)
}

fn cmd_oracle(args: OracleArgs) -> Result<Outcome> {
    let res = resolve(&args.output)?;
    if !args.perturb.is_finite() {
        return Err(anyhow!("perturb must be finite"));
    }
    let grid = if args.single { OracleGrid::single() } else { OracleGrid::default() };
    let rows = oracle_sweep(&grid, args.perturb)?;
    match res.format {
        Format::Json => emit_json(&rows, &res.out)?,
        Format::Csv => {
            let flat: Vec<FlatRow> = rows
                .iter()
                .map(|r| FlatRow {
                    name: &r.name,
                    params: params_label(&r.params),
                    closed_form: r.closed_form,
                    oracle_value: r.oracle_value,
                    abs_diff: r.abs_diff,
                    pass: Some(r.pass),
                })
                .collect();
            emit_csv(&flat, &res.out)?
        }
    }
    let bad = rows.iter().filter(|r| !r.pass).count();
    eprintln!("{} comparisons, {} mismatch(es)", rows.len(), bad);
    Ok(if bad == 0 { Outcome::Clean } else { Outcome::Failures })
}

#[derive(Serialize)]
struct EigReport {
    dim: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: MatrixJson,
    reconstruction_residual: f64,
    unitarity_residual: f64,
}

fn cmd_eig(args: EigArgs) -> Result<Outcome> {
    let res = resolve(&args.output)?;
    let text = if args.input.as_os_str() == "-" {
        io::read_to_string(io::stdin())?
    } else {
        std::fs::read_to_string(&args.input)
            .with_context(|| format!("reading {}", args.input.display()))
            ?
    };
    let j: MatrixJson = serde_json::from_str(&text).context("parsing matrix JSON")?;
    let a = HermitianMatrix::from_json(&j)?;
    let eig = jacobi_eigh(&a)?;
    let n = a.dim();
    let data = eig.unitary.data();
    let report = EigReport {
        dim: n,
        reconstruction_residual: eig.reconstruction_residual(&a)?,
        unitarity_residual: eig.unitarity_residual(),
        eigenvectors: MatrixJson { dim: n, re: data.iter().map(|z| z.re).collect(), im: data.iter().map(|z| z.im).collect() },
        eigenvalues: eig.eigenvalues,
    };
    if res.format == Format::Csv {
        bail!("eig only writes JSON");
    }
    emit_json(&report, &res.out)?;
    Ok(Outcome::Clean)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Constants(a) => cmd_constants(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Eig(a) => cmd_eig(a),
    };
    match result {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Failures) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
