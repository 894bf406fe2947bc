//! Sweep specifications: which parameter varies, over what range, and an
//! optional second parameter taking a few discrete values (one curve each).

use std::fmt;
use std::str::FromStr;

use scalarent_core::entanglement::DEFAULT_TOL;
use scalarent_core::{ExpansionParams, Mode};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rho,
    Lambda,
    Epsilon,
    K,
    M,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Rho => "rho",
            Axis::Lambda => "lambda",
            Axis::Epsilon => "epsilon",
            Axis::K => "k",
            Axis::M => "m",
        }
    }

    pub fn get(self, p: &ExpansionParams) -> f64 {
        match self {
            Axis::Rho => p.rho,
            Axis::Lambda => p.lambda,
            Axis::Epsilon => p.epsilon,
            Axis::K => p.k,
            Axis::M => p.m,
        }
    }

    pub fn set(self, mut p: ExpansionParams, value: f64) -> ExpansionParams {
        match self {
            Axis::Rho => p.rho = value,
            Axis::Lambda => p.lambda = value,
            Axis::Epsilon => p.epsilon = value,
            Axis::K => p.k = value,
            Axis::M => p.m = value,
        }
        p
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rho" => Ok(Axis::Rho),
            "lambda" => Ok(Axis::Lambda),
            "epsilon" => Ok(Axis::Epsilon),
            "k" => Ok(Axis::K),
            "m" => Ok(Axis::M),
            other => Err(format!("unknown axis '{other}' (expected rho, lambda, epsilon, k or m)")),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl FromStr for Spacing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" | "lin" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(format!("unknown spacing '{other}' (expected linear or log)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

impl AxisRange {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(CliError::usage("axis range needs finite min < max"));
        }
        if self.steps < 2 {
            return Err(CliError::usage("axis range needs steps >= 2"));
        }
        if self.spacing == Spacing::Log && !(self.min > 0.0) {
            return Err(CliError::usage("log spacing needs min > 0"));
        }
        Ok(())
    }

    /// Sample points, endpoints included exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == last {
                    return self.max;
                }
                let t = i as f64 / last as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub axis: Axis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub fixed: ExpansionParams,
    pub axis: Axis,
    pub range: AxisRange,
    pub series: Option<Series>,
    pub mode: Mode,
    pub tol: f64,
}

/// k = m = ρ = 1, ε = 40, λ = 0.001.
pub const DEFAULT_POINT: ExpansionParams = ExpansionParams { epsilon: 40.0, rho: 1.0, m: 1.0, k: 1.0, lambda: 0.001 };

pub const FIG2_LAMBDAS: [f64; 3] = [0.0005, 0.00075, 0.001];
pub const FIG2_STEPS: usize = 120;

impl SweepSpec {
    /// Log-negativity against ρ ∈ [0.05, 20] (log spaced) for k = m = 1,
    /// ε = 40 and one curve per λ in [`FIG2_LAMBDAS`].
    pub fn fig2() -> Self {
        SweepSpec {
            fixed: DEFAULT_POINT,
            axis: Axis::Rho,
            range: AxisRange { min: 0.05, max: 20.0, steps: FIG2_STEPS, spacing: Spacing::Log },
            series: Some(Series { axis: Axis::Lambda, values: FIG2_LAMBDAS.to_vec() }),
            mode: Mode::Exact,
            tol: DEFAULT_TOL,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.range.validate()?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::usage("tol must be a positive number"));
        }
        if let Some(series) = &self.series {
            if series.axis == self.axis {
                return Err(CliError::usage("series axis must differ from the sweep axis"));
            }
            if series.values.is_empty() {
                return Err(CliError::usage("series needs at least one value"));
            }
            if series.values.iter().any(|v| !v.is_finite()) {
                return Err(CliError::usage("series values must be finite"));
            }
        }
        Ok(())
    }

    /// Parameter points in row order: axis values outermost, series values
    /// innermost.
    pub fn points(&self) -> Vec<ExpansionParams> {
        let axis_values = self.range.values();
        let series: Vec<Option<f64>> = match &self.series {
            Some(s) => s.values.iter().copied().map(Some).collect(),
            None => vec![None],
        };
        let mut out = Vec::with_capacity(axis_values.len() * series.len());
        for &x in &axis_values {
            for s in &series {
                let mut p = self.axis.set(self.fixed, x);
                if let (Some(v), Some(series)) = (s, &self.series) {
                    p = series.axis.set(p, *v);
                }
                out.push(p);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_range_hits_endpoints() {
        let r = AxisRange { min: 0.05, max: 20.0, steps: 7, spacing: Spacing::Log };
        let v = r.values();
        assert_eq!(v[0], 0.05);
        assert_eq!(v[6], 20.0);
        for w in v.windows(2) {
            assert!((w[1] / w[0] - v[1] / v[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn range_checks() {
        let bad = [
            AxisRange { min: 1.0, max: 1.0, steps: 3, spacing: Spacing::Linear },
            AxisRange { min: 0.0, max: 1.0, steps: 1, spacing: Spacing::Linear },
            AxisRange { min: 0.0, max: 1.0, steps: 3, spacing: Spacing::Log },
        ];
        for r in bad {
            assert!(r.validate().is_err(), "{r:?}");
        }
    }

    #[test]
    fn fig2_points_are_axis_major() {
        let spec = SweepSpec::fig2();
        spec.validate().unwrap();
        let pts = spec.points();
        assert_eq!(pts.len(), FIG2_STEPS * 3);
        assert_eq!(pts[0].rho, 0.05);
        assert_eq!(pts[1].rho, 0.05);
        assert_eq!([pts[0].lambda, pts[1].lambda, pts[2].lambda], FIG2_LAMBDAS);
        assert_eq!(pts[3].rho, spec.range.values()[1]);
    }

    #[test]
    fn series_on_sweep_axis_is_rejected() {
        let mut spec = SweepSpec::fig2();
        spec.series = Some(Series { axis: Axis::Rho, values: vec![1.0] });
        assert!(spec.validate().is_err());
    }
}
