//! First-order pair-creation amplitude for the λφψ coupling.
//!
//! To lowest order the S-matrix creates one φ quantum of momentum k and one
//! ψ quantum of momentum −k with amplitude λA(k), where
//!
//! A(k) ∝ ∫ dη a²(η) e^{i(k + ω)η} / (2√(kω)).
//!
//! The constant part of a² only contributes a frequency-sum delta that
//! vanishes for positive frequencies, so only ε·tanh(ρη) creates pairs.

use core::f64::consts::PI;

use num_traits::Float;

use crate::background::{frequencies, ExpansionParams};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, neville_at_zero};
use crate::special::log_sinh;

/// Which closed form to use for A(k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmplitudeModel {
    /// ε π / (√(2kω) ρ (k + ω) sinh(π(k + ω)/(2ρ))), as printed.
    #[default]
    PaperLiteral,
    /// ε / (2√(kω) ρ sinh(π(k + ω)/(2ρ))), the distributional Fourier
    /// transform of tanh; this is what `quadrature_oracle` converges to.
    FourierTransform,
}

/// Which asymptotic ψ frequency enters the amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrequencyChoice {
    /// ω_in, the frequency of the in-region modes inserted in the overlap integral.
    #[default]
    In,
    /// ω_out, for sensitivity studies.
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairAmplitude {
    /// |A(k)| ≥ 0.
    pub value: f64,
    /// c = λ·|A(k)|.
    pub lambda_a: f64,
    pub omega_used: f64,
}

/// Paper-literal A(k) with ω = ω_in.
pub fn pair_amplitude(params: &ExpansionParams) -> PairAmplitude {
    pair_amplitude_with(params, AmplitudeModel::PaperLiteral, FrequencyChoice::In)
}

pub fn pair_amplitude_with(
    params: &ExpansionParams,
    model: AmplitudeModel,
    choice: FrequencyChoice,
) -> PairAmplitude {
    let f = frequencies(params);
    let omega = match choice {
        FrequencyChoice::In => f.omega_in,
        FrequencyChoice::Out => f.omega_out,
    };
    let value = ln_amplitude(params, model, omega).exp();
    PairAmplitude { value, lambda_a: params.lambda * value, omega_used: omega }
}

fn ln_amplitude(params: &ExpansionParams, model: AmplitudeModel, omega: f64) -> f64 {
    if params.epsilon == 0.0 {
        return f64::NEG_INFINITY;
    }
    let s = params.k + omega;
    let ln_sinh = match log_sinh(PI * s / (2.0 * params.rho)) {
        Ok(v) => v,
        Err(_) => return f64::NEG_INFINITY,
    };
    let common = params.epsilon.ln() - params.rho.ln() - ln_sinh;
    match model {
        AmplitudeModel::PaperLiteral => {
            common + PI.ln() - 0.5 * (2.0 * params.k * omega).ln() - s.ln()
        }
        AmplitudeModel::FourierTransform => common - (2.0 * (params.k * omega).sqrt()).ln(),
    }
}

/// |A_paper / A_fourier| = √2 π / (k + ω), independent of ε and ρ.
pub fn paper_to_fourier_ratio(params: &ExpansionParams, choice: FrequencyChoice) -> f64 {
    let f = frequencies(params);
    let omega = match choice {
        FrequencyChoice::In => f.omega_in,
        FrequencyChoice::Out => f.omega_out,
    };
    core::f64::consts::SQRT_2 * PI / (params.k + omega)
}

/// Default damping sequence for the Richardson cross-check.
pub const DEFAULT_DAMPING: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

/// [`DEFAULT_DAMPING`] shrunk by min(ρ, 1). The damped remainder is analytic in
/// δ only out to a distance of order ρ, so slow expansions need smaller δ.
pub fn damping_for(rho: f64) -> [f64; 5] {
    DEFAULT_DAMPING.map(|d| d * rho.min(1.0))
}

const ORACLE_SPAN: f64 = 50.0;
const ORACLE_REL_TOL: f64 = 1e-6;

/// Numerical |A(k)| from the conformal-time overlap integral (ω = ω_in).
///
/// With tanh = sgn + (tanh − sgn), the sgn piece has principal value
/// ∫ sgn(η) e^{isη} dη = 2i/s and the remainder is a rapidly decaying odd
/// function handled by adaptive quadrature on [0, 50/ρ]. The damped variant
/// (extra factor e^{−δ|η|}) is evaluated along `damping` and extrapolated to
/// δ → 0; disagreement with the undamped value beyond 1e-6 relative is a
/// `Convergence` error.
///
/// The result is a difference of O(1/s) terms, so it loses relative accuracy
/// like e^{πs/2ρ}; beyond πs/(2ρ) ≈ 12 the extrapolation check fails.
pub fn quadrature_oracle(params: &ExpansionParams, damping: &[f64]) -> Result<f64> {
    params.validate()?;
    if damping.len() < 2
        || damping.iter().any(|d| !(*d > 0.0))
        || damping.windows(2).any(|w| !(w[1] < w[0]))
    {
        return Err(Error::Domain("damping sequence must be positive and strictly decreasing"));
    }
    if params.epsilon == 0.0 {
        return Ok(0.0);
    }
    let f = frequencies(params);
    let s = params.k + f.omega_in;

    let transform = |delta: f64| -> Result<f64> {
        let rho = params.rho;
        // 1 − tanh x = 2 / (e^{2x} + 1)
        let remainder = integrate(
            |eta| 2.0 / ((2.0 * rho * eta).exp() + 1.0) * (s * eta).sin() * (-delta * eta).exp(),
            0.0,
            ORACLE_SPAN / rho,
            1e-16,
            1e-14,
            20_000,
        )?;
        Ok(s / (s * s + delta * delta) - remainder.value)
    };

    let undamped = transform(0.0)?;
    let damped: alloc::vec::Vec<f64> = damping.iter().map(|&d| transform(d)).collect::<Result<_>>()?;
    let extrapolated = neville_at_zero(damping, &damped);
    let discrepancy = (extrapolated - undamped).abs() / undamped.abs();
    if !(discrepancy <= ORACLE_REL_TOL) {
        return Err(Error::Convergence { what: "damped transform extrapolation", discrepancy });
    }
    // |A| = ε / (2π√(kω)) · |2i (1/s − J)|
    Ok(params.epsilon * undamped.abs() / (PI * (params.k * f.omega_in).sqrt()))
}

/// State normalization N with N⁻² = 1 + c², c = λA.
pub fn state_normalization(amp: &PairAmplitude) -> f64 {
    let c = amp.lambda_a;
    1.0 / (1.0 + c * c).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(epsilon: f64, rho: f64, m: f64, k: f64, lambda: f64) -> ExpansionParams {
        ExpansionParams::new(epsilon, rho, m, k, lambda).unwrap()
    }

    #[test]
    fn zero_volume_gives_zero_amplitude() {
        let params = p(0.0, 1.0, 1.0, 1.0, 0.001);
        assert_eq!(pair_amplitude(&params).value, 0.0);
        assert_eq!(quadrature_oracle(&params, &DEFAULT_DAMPING).unwrap(), 0.0);
    }

    #[test]
    fn reference_values() {
        // mpmath: printed closed form and quadosc of the overlap integral
        let params = p(1.0, 1.0, 1.0, 1.0, 0.001);
        let paper = pair_amplitude(&params);
        assert!((paper.value - 0.034_906_357_905_593_54).abs() < 1e-15);
        assert!((paper.lambda_a - 0.001 * paper.value).abs() < 1e-20);
        let ft = pair_amplitude_with(&params, AmplitudeModel::FourierTransform, FrequencyChoice::In);
        assert!((ft.value - 0.018_967_729_702_026_504).abs() < 1e-15);
        let fig = pair_amplitude(&p(40.0, 1.0, 1.0, 1.0, 0.001));
        assert!((fig.value - 1.396_254_316_223_741_6).abs() < 1e-13);
    }

    #[test]
    fn quadrature_fixture() {
        // Frozen from the oracle's first run, cross-checked against mpmath quadosc.
        let params = p(1.0, 1.0, 1.0, 1.0, 0.0);
        let a = quadrature_oracle(&params, &DEFAULT_DAMPING).unwrap();
        assert!((a - 0.018_967_729_702_026_504).abs() < 1e-13, "{a}");
        let mixed = quadrature_oracle(&p(3.0, 2.0, 0.5, 2.0, 0.0), &DEFAULT_DAMPING).unwrap();
        assert!((mixed - 0.030_468_023_067_288_94).abs() < 1e-13, "{mixed}");
    }

    #[test]
    fn quadrature_is_linear_in_epsilon() {
        let base = p(1.0, 0.8, 1.3, 0.6, 0.0);
        let one = quadrature_oracle(&base, &DEFAULT_DAMPING).unwrap();
        let two = quadrature_oracle(&base.with_epsilon(2.0), &DEFAULT_DAMPING).unwrap();
        assert!((two / one - 2.0).abs() < 1e-10);
    }

    #[test]
    fn sudden_limit_of_paper_amplitude() {
        let params = p(40.0, 1.0, 1.0, 1.0, 0.0);
        let f = frequencies(&params);
        let s = params.k + f.omega_in;
        let fast = params.with_rho(1e6 * s);
        let limit = 2.0 * params.epsilon / ((2.0 * params.k * f.omega_in).sqrt() * s * s);
        assert!((pair_amplitude(&fast).value - limit).abs() < 1e-6 * limit);
    }

    #[test]
    fn ratio_is_geometric_only() {
        let params = p(5.0, 0.3, 1.0, 1.0, 0.0);
        let paper = pair_amplitude(&params).value;
        let ft = pair_amplitude_with(&params, AmplitudeModel::FourierTransform, FrequencyChoice::In).value;
        let r = paper_to_fourier_ratio(&params, FrequencyChoice::In);
        assert!((paper / ft - r).abs() < 1e-13 * r);
    }

    #[test]
    fn out_frequency_variant_differs() {
        let params = p(2.0, 1.0, 1.0, 1.0, 0.0);
        let a_in = pair_amplitude(&params);
        let a_out = pair_amplitude_with(&params, AmplitudeModel::PaperLiteral, FrequencyChoice::Out);
        assert_eq!(a_out.omega_used, frequencies(&params).omega_out);
        assert!(a_out.value < a_in.value);
    }

    #[test]
    fn normalization_values() {
        let amp = |c: f64| PairAmplitude { value: 1.0, lambda_a: c, omega_used: 1.0 };
        assert_eq!(state_normalization(&amp(0.0)), 1.0);
        let n = state_normalization(&amp(1.0));
        assert!((1.0 / (n * n) - 2.0).abs() < 1e-15);
        assert!((state_normalization(&amp(1e-3)) - (1.0 - 5e-7)).abs() < 1e-12);
    }

    #[test]
    fn bad_damping_sequence() {
        let params = p(1.0, 1.0, 1.0, 1.0, 0.0);
        assert!(quadrature_oracle(&params, &[0.1, 0.2]).is_err());
        assert!(quadrature_oracle(&params, &[0.1]).is_err());
        assert!(quadrature_oracle(&params, &[0.1, -0.05]).is_err());
    }
}
