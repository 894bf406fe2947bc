//! Direct integration of v'' + (k² + a²(η)m²) v = 0 through the expansion.
//!
//! This is the numerical cross-check of the Gamma-function Bogoliubov
//! coefficients: start from the in-mode plane wave deep in the past, integrate
//! with an embedded Dormand–Prince 5(4) pair, and project onto the out-modes
//! deep in the future.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::background::{frequencies, scale_factor_sq, BogoliubovCoefficients, ExpansionParams};
use crate::error::{Error, Result};
use crate::special::ComplexValue;

/// Half-width of the default integration window, in units of 1/ρ.
/// |1 − tanh(25)| ≈ 4e-22.
pub const DEFAULT_HALF_SPAN: f64 = 25.0;
pub const DEFAULT_MAX_STEPS: usize = 20_000_000;
/// Wronskian drift accepted on a trajectory.
pub const WRONSKIAN_ACCEPT: f64 = 1e-8;
/// Wronskian drift at which integration is reported as failed.
pub const WRONSKIAN_FAIL: f64 = 1e-6;
const NORMALIZATION_FAIL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct ModeTrajectory {
    pub eta_grid: Vec<f64>,
    pub v: Vec<ComplexValue>,
    pub v_prime: Vec<ComplexValue>,
    /// max |W(η) − W(η₀)| with W = v v*' − v* v' (W(η₀) = i for the unit in-mode).
    pub wronskian_drift: f64,
    pub rejected_steps: usize,
}

impl ModeTrajectory {
    pub fn end(&self) -> (f64, ComplexValue, ComplexValue) {
        let last = self.eta_grid.len() - 1;
        (self.eta_grid[last], self.v[last], self.v_prime[last])
    }

    pub fn is_accepted(&self) -> bool {
        self.wronskian_drift <= WRONSKIAN_ACCEPT
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub max_steps: usize,
    /// Smallest step allowed, as a fraction of the window length.
    pub min_step_fraction: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_steps: DEFAULT_MAX_STEPS, min_step_fraction: 1e-14 }
    }
}

fn wronskian(v: Complex64, dv: Complex64) -> Complex64 {
    v * dv.conj() - v.conj() * dv
}

/// In-mode plane wave e^{−iωη}/√(2ω) and its derivative.
pub fn plane_wave(omega: f64, eta: f64) -> (Complex64, Complex64) {
    let v = Complex64::from_polar(1.0 / (2.0 * omega).sqrt(), -omega * eta);
    (v, Complex64::new(0.0, -omega) * v)
}

type State = [Complex64; 2];

#[derive(Clone, Copy)]
struct ModeEquation<'a> {
    params: &'a ExpansionParams,
    k2: f64,
    m2: f64,
}

impl ModeEquation<'_> {
    fn rhs(&self, eta: f64, y: &State) -> State {
        let omega2 = self.k2 + scale_factor_sq(eta, self.params) * self.m2;
        [y[1], -omega2 * y[0]]
    }
}

// Dormand–Prince 5(4)
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn combine(y: &State, h: f64, ks: &[State], coeffs: &[f64]) -> State {
    let mut out = *y;
    for (k, &a) in ks.iter().zip(coeffs) {
        if a != 0.0 {
            out[0] += k[0] * (h * a);
            out[1] += k[1] * (h * a);
        }
    }
    out
}

/// Integrate the in-mode from `eta_start` to `eta_end`.
///
/// The window must cover ±25/ρ so both ends sit in the flat asymptotic regions;
/// `tol` is the per-step mixed absolute/relative tolerance, in [1e-12, 1e-6].
pub fn integrate_mode(params: &ExpansionParams, eta_start: f64, eta_end: f64, tol: f64) -> Result<ModeTrajectory> {
    integrate_mode_with(params, eta_start, eta_end, tol, SolverOptions::default())
}

pub fn integrate_mode_with(
    params: &ExpansionParams,
    eta_start: f64,
    eta_end: f64,
    tol: f64,
    options: SolverOptions,
) -> Result<ModeTrajectory> {
    params.validate()?;
    let t0 = DEFAULT_HALF_SPAN / params.rho;
    if !(eta_start <= -t0 && eta_end >= t0) {
        return Err(Error::Domain("integration window must cover [-25/rho, 25/rho]"));
    }
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::Domain("tol must lie in [1e-12, 1e-6]"));
    }

    let freq = frequencies(params);
    let eq = ModeEquation { params, k2: params.k * params.k, m2: params.m * params.m };
    let (v0, dv0) = plane_wave(freq.omega_in, eta_start);
    let w0 = wronskian(v0, dv0);

    let span = eta_end - eta_start;
    let h_min = options.min_step_fraction * span;
    let mut h = (0.01 / freq.omega_out).min(span);
    let mut eta = eta_start;
    let mut y: State = [v0, dv0];
    let mut k1 = eq.rhs(eta, &y);

    let mut traj = ModeTrajectory {
        eta_grid: alloc::vec![eta],
        v: alloc::vec![v0],
        v_prime: alloc::vec![dv0],
        wronskian_drift: 0.0,
        rejected_steps: 0,
    };
    let mut steps = 0usize;

    while eta < eta_end {
        if steps >= options.max_steps {
            return Err(Error::Stiffness { steps, eta });
        }
        steps += 1;
        let last = eta + h >= eta_end;
        let h_try = if last { eta_end - eta } else { h };

        let k2 = eq.rhs(eta + C[1] * h_try, &combine(&y, h_try, &[k1], &A2));
        let k3 = eq.rhs(eta + C[2] * h_try, &combine(&y, h_try, &[k1, k2], &A3));
        let k4 = eq.rhs(eta + C[3] * h_try, &combine(&y, h_try, &[k1, k2, k3], &A4));
        let k5 = eq.rhs(eta + C[4] * h_try, &combine(&y, h_try, &[k1, k2, k3, k4], &A5));
        let k6 = eq.rhs(eta + C[5] * h_try, &combine(&y, h_try, &[k1, k2, k3, k4, k5], &A6));
        let y_new = combine(&y, h_try, &[k1, k2, k3, k4, k5, k6], &B);
        let k7 = eq.rhs(eta + h_try, &y_new);

        let ks = [k1, k2, k3, k4, k5, k6, k7];
        let mut err2 = 0.0;
        for comp in 0..2 {
            let mut e = Complex64::new(0.0, 0.0);
            for (k, &ec) in ks.iter().zip(E.iter()) {
                e += k[comp] * ec;
            }
            e *= h_try;
            let scale = tol * (1.0 + y[comp].norm().max(y_new[comp].norm()));
            err2 += (e.re / scale).powi(2) + (e.im / scale).powi(2);
        }
        let err = (err2 / 4.0).sqrt();

        if err <= 1.0 {
            eta = if last { eta_end } else { eta + h_try };
            y = y_new;
            k1 = k7;
            let drift = (wronskian(y[0], y[1]) - w0).norm();
            traj.wronskian_drift = traj.wronskian_drift.max(drift);
            if traj.wronskian_drift > WRONSKIAN_FAIL {
                return Err(Error::Tolerance {
                    what: "Wronskian drift",
                    value: traj.wronskian_drift,
                    limit: WRONSKIAN_FAIL,
                });
            }
            traj.eta_grid.push(eta);
            traj.v.push(y[0]);
            traj.v_prime.push(y[1]);
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if !last {
                h = h_try * grow;
            }
        } else {
            traj.rejected_steps += 1;
            h = h_try * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            if h < h_min {
                return Err(Error::Stiffness { steps, eta });
            }
        }
    }
    Ok(traj)
}

/// Project the final state onto the out-modes v_out = e^{−iω_out η}/√(2ω_out):
/// α = i(v_out* v' − v_out*' v), β = −i(v_out v' − v_out' v).
pub fn extract_bogoliubov(traj: &ModeTrajectory, params: &ExpansionParams) -> Result<BogoliubovCoefficients> {
    let freq = frequencies(params);
    let (eta, v, dv) = traj.end();
    if eta < DEFAULT_HALF_SPAN / params.rho {
        return Err(Error::Domain("trajectory does not reach the out region"));
    }
    let (vo, dvo) = plane_wave(freq.omega_out, eta);
    let i = Complex64::new(0.0, 1.0);
    let alpha = i * (vo.conj() * dv - dvo.conj() * v);
    let beta = -i * (vo * dv - dvo * v);
    let coeffs = BogoliubovCoefficients::from_parts(alpha, beta);
    let deviation = alpha.norm_sqr() - beta.norm_sqr() - 1.0;
    if !(deviation.abs() <= NORMALIZATION_FAIL) {
        return Err(Error::Normalization { deviation });
    }
    Ok(coeffs)
}

/// Integrate over the default ±25/ρ window and extract α, β.
///
/// With ε = 0 or m = 0 the mode equation does not depend on η and the in-mode
/// is the out-mode, so α = 1 and β = 0 are returned without integrating.
pub fn numerical_bogoliubov(params: &ExpansionParams, tol: f64) -> Result<BogoliubovCoefficients> {
    params.validate()?;
    if params.is_conformally_trivial() {
        return Ok(BogoliubovCoefficients::from_parts(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let t0 = DEFAULT_HALF_SPAN / params.rho;
    let traj = integrate_mode(params, -t0, t0, tol)?;
    extract_bogoliubov(&traj, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::background::{bogoliubov_analytic, sudden_gamma};

    fn p(epsilon: f64, rho: f64, m: f64, k: f64) -> ExpansionParams {
        ExpansionParams::new(epsilon, rho, m, k, 0.0).unwrap()
    }

    #[test]
    fn flat_spacetime_keeps_plane_wave() {
        let params = p(0.0, 1.0, 1.0, 1.0);
        let tol = 1e-10;
        let traj = integrate_mode(&params, -25.0, 25.0, tol).unwrap();
        let (eta, v, _) = traj.end();
        let (want, _) = plane_wave(2f64.sqrt(), eta);
        assert!((v - want).norm() < 100.0 * tol, "{}", (v - want).norm());
        assert!(traj.is_accepted());
        let b = extract_bogoliubov(&traj, &params).unwrap();
        assert!(b.beta.norm() < 1e-8);
        assert!((b.alpha.norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn matches_gamma_quotient() {
        let params = p(1.0, 1.0, 1.0, 1.0);
        let num = numerical_bogoliubov(&params, 1e-12).unwrap();
        let ana = bogoliubov_analytic(&params).unwrap();
        let rel = (num.beta_sq() - ana.beta_sq()).abs() / ana.beta_sq();
        assert!(rel < 1e-6, "{rel:e}");
        let dphase = (num.relative_phase() - ana.relative_phase()).abs();
        assert!(dphase < 1e-5, "phase {} vs {}", num.relative_phase(), ana.relative_phase());
    }

    #[test]
    fn figure_parameters() {
        let params = p(40.0, 1.0, 1.0, 1.0);
        let num = numerical_bogoliubov(&params, 1e-12).unwrap();
        let ana = crate::background::mode_gamma(&params);
        assert!((num.gamma - ana).abs() < 1e-6 * ana, "{} vs {ana}", num.gamma);
    }

    #[test]
    fn fast_expansion_approaches_sudden_limit() {
        // Leading correction to (ω₋/ω₊)² is −π²(ω₊² − ω₋²)/(3ρ²) ≈ −9% at ρ = 10
        // and −0.09% at ρ = 100.
        for (rho, band) in [(10.0, 0.10), (100.0, 0.002)] {
            let params = p(1.0, rho, 1.0, 1.0);
            let num = numerical_bogoliubov(&params, 1e-11).unwrap();
            let sudden = sudden_gamma(&params);
            let rel = (num.gamma - sudden).abs() / sudden;
            assert!(rel < band, "rho {rho}: {} vs {sudden} ({rel})", num.gamma);
        }
    }

    #[test]
    fn window_and_tolerance_checks() {
        let params = p(1.0, 1.0, 1.0, 1.0);
        assert!(integrate_mode(&params, -10.0, 25.0, 1e-8).is_err());
        assert!(integrate_mode(&params, -25.0, 25.0, 1e-3).is_err());
        assert!(integrate_mode(&params, -25.0, 25.0, 1e-14).is_err());
    }

    #[test]
    fn step_cap_reports_stiffness() {
        let params = p(1.0, 1.0, 1.0, 1.0);
        let opts = SolverOptions { max_steps: 10, ..SolverOptions::default() };
        let err = integrate_mode_with(&params, -25.0, 25.0, 1e-10, opts).unwrap_err();
        assert!(matches!(err, Error::Stiffness { .. }));
    }
}
