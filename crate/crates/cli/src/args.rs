//! Command-line flags and the key=value config file that can stand in for them.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use scalarent_core::entanglement::DEFAULT_TOL;
use scalarent_core::{ExpansionParams, Mode};

use crate::emit::Format;
use crate::error::CliError;
use crate::spec::{Axis, AxisRange, Series, Spacing, SweepSpec, DEFAULT_POINT};

#[derive(Debug, Parser)]
#[command(name = "scalarent", version, about = "Entanglement of scalar fields in a tanh-expanding universe")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Log-negativity at a single parameter point.
    Negativity(PointArgs),
    /// Sweep one parameter, optionally with one curve per value of a second.
    Sweep(SweepArgs),
    /// Log-negativity against rho for k = m = 1, epsilon = 40 and three couplings.
    Fig2(Fig2Args),
    /// Compare closed forms against the numerical oracles.
    Validate(ValidateArgs),
}

pub fn parse_mode(s: &str) -> Result<Mode, String> {
    match s {
        "exact" => Ok(Mode::Exact),
        "paper" | "paper_literal" | "paper-literal" => Ok(Mode::PaperLiteral),
        other => Err(format!("unknown mode '{other}' (expected exact or paper)")),
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file with the same names as the flags; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long)]
    pub axis: Option<Axis>,
    #[arg(long)]
    pub min: Option<f64>,
    #[arg(long)]
    pub max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub spacing: Option<Spacing>,
    /// Second parameter, one curve per value in --series-values.
    #[arg(long)]
    pub series: Option<Axis>,
    /// Comma-separated values of the series parameter.
    #[arg(long)]
    pub series_values: Option<String>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Fig2Args {
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Default: svg.
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    /// Comma-separated grid values; each defaults to a built-in list.
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    /// text (default) or json.
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Flat key=value pairs in file order. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if pairs.iter().any(|(k, _)| *k == key) {
            return Err(CliError::usage(format!("config line {}: duplicate key '{key}'", i + 1)));
        }
        pairs.push((key, value.trim().to_string()));
    }
    Ok(pairs)
}

fn fill<T>(slot: &mut Option<T>, key: &str, value: &str) -> Result<(), CliError>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    if slot.is_none() {
        let parsed = value.parse().map_err(|e| CliError::usage(format!("config key '{key}': {e}")))?;
        *slot = Some(parsed);
    }
    Ok(())
}

fn read_config(path: &PathBuf) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    parse_config(&text)
}

impl PointArgs {
    /// Fills unset flags from `pairs`; returns the pairs this struct does not know.
    fn absorb(&mut self, pairs: Vec<(String, String)>) -> Result<Vec<(String, String)>, CliError> {
        let mut rest = Vec::new();
        for (key, value) in pairs {
            match key.as_str() {
                "k" => fill(&mut self.k, &key, &value)?,
                "m" => fill(&mut self.m, &key, &value)?,
                "epsilon" => fill(&mut self.epsilon, &key, &value)?,
                "rho" => fill(&mut self.rho, &key, &value)?,
                "lambda" => fill(&mut self.lambda, &key, &value)?,
                "tol" => fill(&mut self.tol, &key, &value)?,
                "format" => fill(&mut self.format, &key, &value)?,
                "out" => fill(&mut self.out, &key, &value)?,
                "mode" => {
                    if self.mode.is_none() {
                        self.mode = Some(parse_mode(&value).map_err(CliError::usage)?);
                    }
                }
                _ => rest.push((key, value)),
            }
        }
        Ok(rest)
    }

    /// Merges the config file (if any) under the flags.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        if let Some(path) = self.config.clone() {
            let rest = self.absorb(read_config(&path)?)?;
            if let Some((key, _)) = rest.first() {
                return Err(CliError::usage(format!("unknown config key '{key}'")));
            }
        }
        Ok(self)
    }

    pub fn params(&self) -> ExpansionParams {
        ExpansionParams {
            k: self.k.unwrap_or(DEFAULT_POINT.k),
            m: self.m.unwrap_or(DEFAULT_POINT.m),
            epsilon: self.epsilon.unwrap_or(DEFAULT_POINT.epsilon),
            rho: self.rho.unwrap_or(DEFAULT_POINT.rho),
            lambda: self.lambda.unwrap_or(DEFAULT_POINT.lambda),
        }
    }
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| CliError::usage(format!("bad number '{v}': {e}"))))
        .collect()
}

impl SweepArgs {
    pub fn resolve(mut self) -> Result<Self, CliError> {
        if let Some(path) = self.point.config.clone() {
            let rest = self.point.absorb(read_config(&path)?)?;
            for (key, value) in rest {
                match key.as_str() {
                    "axis" => fill(&mut self.axis, &key, &value)?,
                    "min" => fill(&mut self.min, &key, &value)?,
                    "max" => fill(&mut self.max, &key, &value)?,
                    "steps" => fill(&mut self.steps, &key, &value)?,
                    "spacing" => fill(&mut self.spacing, &key, &value)?,
                    "series" => fill(&mut self.series, &key, &value)?,
                    "series-values" => fill(&mut self.series_values, &key, &value)?,
                    "threads" => fill(&mut self.threads, &key, &value)?,
                    _ => return Err(CliError::usage(format!("unknown config key '{key}'"))),
                }
            }
        }
        Ok(self)
    }

    /// Builds and checks the spec. Axis, min and max are required; steps
    /// defaults to 50 and spacing to linear.
    pub fn spec(&self) -> Result<SweepSpec, CliError> {
        let axis = self.axis.ok_or_else(|| CliError::usage("sweep needs --axis"))?;
        let min = self.min.ok_or_else(|| CliError::usage("sweep needs --min"))?;
        let max = self.max.ok_or_else(|| CliError::usage("sweep needs --max"))?;
        let series = match (self.series, &self.series_values) {
            (Some(axis), Some(values)) => Some(Series { axis, values: parse_list(values)? }),
            (None, None) => None,
            _ => return Err(CliError::usage("--series and --series-values go together")),
        };
        let spec = SweepSpec {
            fixed: self.point.params(),
            axis,
            range: AxisRange { min, max, steps: self.steps.unwrap_or(50), spacing: self.spacing.unwrap_or(Spacing::Linear) },
            series,
            mode: self.point.mode.unwrap_or_default(),
            tol: self.point.tol.unwrap_or(DEFAULT_TOL),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Fig2Args {
    pub fn spec(&self) -> Result<SweepSpec, CliError> {
        let mut spec = SweepSpec::fig2();
        if let Some(steps) = self.steps {
            spec.range.steps = steps;
        }
        if let Some(mode) = self.mode {
            spec.mode = mode;
        }
        if let Some(tol) = self.tol {
            spec.tol = tol;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let pairs = parse_config("# comment\n\nk = 2\nseries_values=0.1,0.2\n--rho=3\n").unwrap();
        assert_eq!(
            pairs,
            vec![
                ("k".to_string(), "2".to_string()),
                ("series-values".to_string(), "0.1,0.2".to_string()),
                ("rho".to_string(), "3".to_string())
            ]
        );
        assert!(parse_config("k 2").is_err());
        assert!(parse_config("k=1\nk=2").is_err());
    }

    #[test]
    fn flags_win_over_config() {
        let mut args = PointArgs { k: Some(5.0), ..PointArgs::default() };
        let rest = args.absorb(parse_config("k=2\nm=3\nmode=paper\nfoo=1").unwrap()).unwrap();
        assert_eq!(args.k, Some(5.0));
        assert_eq!(args.m, Some(3.0));
        assert_eq!(args.mode, Some(Mode::PaperLiteral));
        assert_eq!(rest, vec![("foo".to_string(), "1".to_string())]);
    }

    #[test]
    fn series_flags_must_pair() {
        let args = SweepArgs {
            axis: Some(Axis::Rho),
            min: Some(0.1),
            max: Some(1.0),
            series: Some(Axis::Lambda),
            ..SweepArgs::default()
        };
        assert!(args.spec().is_err());
    }
}
