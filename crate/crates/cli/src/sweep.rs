use rayon::prelude::*;
use scalarent_core::{
    bogoliubov_analytic, mode_gamma, negativity, pair_amplitude, ExpansionParams, Mode, ReducedState,
};

use crate::emit::sanitize;
use crate::error::CliError;
use crate::spec::SweepSpec;

/// Computed columns of one sweep row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowValues {
    pub gamma: f64,
    pub amplitude: f64,
    pub c: f64,
    pub negativity: f64,
    pub log_negativity: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: ExpansionParams,
    pub mode: Mode,
    /// `Err` carries the message of a failed point; the sweep keeps going.
    pub values: Result<RowValues, String>,
}

/// γ, the paper-literal amplitude and the negativity at one point.
///
/// In paper mode `log_negativity` is the printed closed form
/// log₂[1 + c² + γ + Σ(1−γ)γⁿ√Zₙ] rather than log₂(1 + 2𝒩).
pub fn evaluate_point(params: &ExpansionParams, mode: Mode, tol: f64) -> scalarent_core::Result<RowValues> {
    params.validate()?;
    // fails if |α|² − |β|² drifts from 1
    bogoliubov_analytic(params)?;
    let gamma = mode_gamma(params);
    let amp = pair_amplitude(params);
    let state = ReducedState::new(gamma, amp.lambda_a, mode)?;
    let result = negativity(&state, tol)?;
    let log_negativity = match mode {
        Mode::Exact => result.log_neg,
        Mode::PaperLiteral => result.paper_closed_form.unwrap_or(result.log_neg),
    };
    if !(result.neg >= 0.0 && log_negativity >= 0.0) {
        return Err(scalarent_core::Error::Numerical { what: "negativity is negative", deviation: result.neg });
    }
    Ok(RowValues {
        gamma,
        amplitude: amp.value,
        c: amp.lambda_a,
        negativity: result.neg,
        log_negativity,
        terms_used: result.terms_used,
        tail_bound: result.tail_bound,
    })
}

fn row(params: ExpansionParams, mode: Mode, tol: f64) -> SweepRow {
    SweepRow { params, mode, values: evaluate_point(&params, mode, tol).map_err(|e| sanitize(&e.to_string())) }
}

/// Rows in [`SweepSpec::points`] order, computed on the global rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    let (mode, tol) = (spec.mode, spec.tol);
    Ok(spec.points().into_par_iter().map(|p| row(p, mode, tol)).collect())
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<Vec<SweepRow>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {threads} worker threads: {e}")))?;
    pool.install(|| run_sweep(spec))
}
