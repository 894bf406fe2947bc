//! Sweeps, figure reproduction, validation reports and CSV/JSON/SVG output
//! on top of `scalarent-core`.

pub mod args;
pub mod emit;
pub mod error;
pub mod spec;
pub mod sweep;
pub mod validate;

use args::{Command, Fig2Args, PointArgs, SweepArgs, ValidateArgs};
use emit::{render, write_output, Format, PlotAxes};
pub use error::CliError;
use scalarent_core::entanglement::DEFAULT_TOL;
use spec::{Axis, SweepSpec};
use sweep::{evaluate_point, run_sweep, run_sweep_with_threads, SweepRow};

/// Runs one subcommand. Diagnostics for the user go to stderr.
pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Negativity(a) => negativity_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Fig2(a) => fig2_cmd(a),
        Command::Validate(a) => validate_cmd(a),
    }
}

fn negativity_cmd(args: PointArgs) -> Result<(), CliError> {
    let args = args.resolve()?;
    let params = args.params();
    params.validate().map_err(|e| CliError::usage(e.to_string()))?;
    if params.perturbative_warning() {
        eprintln!("warning: lambda = {} is large for a first-order treatment", params.lambda);
    }
    let mode = args.mode.unwrap_or_default();
    let values = evaluate_point(&params, mode, args.tol.unwrap_or(DEFAULT_TOL))?;
    let rows = [SweepRow { params, mode, values: Ok(values) }];
    let axes = PlotAxes { x: Axis::Rho, log_x: false, series: None };
    let out = render(&rows, args.format.unwrap_or(Format::Text), axes)?;
    write_output(args.out.as_deref(), &out)
}

fn emit_sweep(
    spec: &SweepSpec,
    threads: Option<usize>,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let rows = match threads {
        Some(n) => run_sweep_with_threads(spec, n)?,
        None => run_sweep(spec)?,
    };
    let failed = rows.iter().filter(|r| r.values.is_err()).count();
    if failed > 0 {
        eprintln!("warning: {failed} of {} points failed and are marked as errors", rows.len());
    }
    write_output(out, &render(&rows, format, PlotAxes::from_spec(spec))?)
}

fn sweep_cmd(args: SweepArgs) -> Result<(), CliError> {
    let args = args.resolve()?;
    let spec = args.spec()?;
    emit_sweep(&spec, args.threads, args.point.format.unwrap_or(Format::Csv), args.point.out.as_deref())
}

fn fig2_cmd(args: Fig2Args) -> Result<(), CliError> {
    let spec = args.spec()?;
    emit_sweep(&spec, args.threads, args.format.unwrap_or(Format::Svg), args.out.as_deref())
}

fn validate_cmd(args: ValidateArgs) -> Result<(), CliError> {
    use validate::*;
    let list = |s: &Option<String>, default: &[f64]| match s {
        Some(s) => args::parse_list(s),
        None => Ok(default.to_vec()),
    };
    let g = grid(
        &list(&args.epsilon, &DEFAULT_EPSILONS)?,
        &list(&args.rho, &DEFAULT_RHOS)?,
        &list(&args.k, &DEFAULT_KS)?,
        &list(&args.m, &DEFAULT_MS)?,
        &list(&args.lambda, &DEFAULT_LAMBDAS)?,
    );
    let report = validate(&g)?;
    let text = match args.format.unwrap_or(Format::Text) {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        other => return Err(CliError::usage(format!("validate writes text or json, not {other:?}"))),
    };
    write_output(args.out.as_deref(), &text)?;
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        Err(CliError::Validation(failed.join("; ")))
    }
}
