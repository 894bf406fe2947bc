//! The tanh-expansion background: a²(η) = 1 + ε(1 + tanh ρη).
//!
//! The massive field sees the frequencies ω_in = √(k² + m²) in the far past and
//! ω_out = √(k² + (1 + 2ε)m²) in the far future. The exact in and out modes are
//! hypergeometric; their Bogoliubov overlap is a quotient of Gamma functions on
//! the lines Re z ∈ {0, 1}, evaluated here in log-domain.

use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::special::{log_gamma_complex, log_sinh, ComplexValue};

/// Coupling above which first-order perturbation theory is flagged.
pub const LAMBDA_WARN: f64 = 0.01;
/// Coupling at or above which parameters are rejected.
pub const LAMBDA_MAX: f64 = 0.1;

/// Physical knobs of the model, in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionParams {
    /// Expansion volume ε (a² goes from 1 to 1 + 2ε).
    pub epsilon: f64,
    /// Expansion rapidity ρ, inverse conformal time.
    pub rho: f64,
    /// Mass of the ψ field.
    pub m: f64,
    /// Mode momentum magnitude.
    pub k: f64,
    /// φψ coupling.
    pub lambda: f64,
}

impl ExpansionParams {
    pub fn new(epsilon: f64, rho: f64, m: f64, k: f64, lambda: f64) -> Result<Self> {
        let p = ExpansionParams { epsilon, rho, m, k, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.epsilon, self.rho, self.m, self.k, self.lambda]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("parameters must be finite"));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidParams("epsilon must be >= 0"));
        }
        if !(self.rho > 0.0) {
            return Err(Error::InvalidParams("rho must be > 0"));
        }
        if !(self.m >= 0.0) {
            return Err(Error::InvalidParams("m must be >= 0"));
        }
        if !(self.k > 0.0) {
            return Err(Error::InvalidParams("k must be > 0"));
        }
        if !(self.lambda >= 0.0) {
            return Err(Error::InvalidParams("lambda must be >= 0"));
        }
        if self.lambda >= LAMBDA_MAX {
            return Err(Error::InvalidParams("lambda must be < 0.1 (perturbative regime)"));
        }
        Ok(())
    }

    /// True when λ is large enough that the first-order S-matrix is suspect.
    pub fn perturbative_warning(&self) -> bool {
        self.lambda > LAMBDA_WARN
    }

    /// Returns a copy with ε scaled, for linearity checks.
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = rho;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    /// No particle creation at all: flat spacetime or a conformally coupled field.
    pub fn is_conformally_trivial(&self) -> bool {
        self.epsilon == 0.0 || self.m == 0.0
    }
}

/// a²(η) = 1 + ε(1 + tanh ρη).
pub fn scale_factor_sq(eta: f64, params: &ExpansionParams) -> f64 {
    1.0 + params.epsilon * (1.0 + (params.rho * eta).tanh())
}

/// Asymptotic frequencies of one ψ mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFrequencies {
    pub omega_in: f64,
    pub omega_out: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
}

pub fn frequencies(params: &ExpansionParams) -> ModeFrequencies {
    let k2 = params.k * params.k;
    let m2 = params.m * params.m;
    let omega_in = (k2 + m2).sqrt();
    let omega_out = (k2 + (1.0 + 2.0 * params.epsilon) * m2).sqrt();
    // ω_out − ω_in without cancellation: 2εm² / (ω_out + ω_in)
    let omega_minus = params.epsilon * m2 / (omega_out + omega_in);
    ModeFrequencies {
        omega_in,
        omega_out,
        omega_plus: 0.5 * (omega_out + omega_in),
        omega_minus,
    }
}

/// Bogoliubov coefficients relating the in-mode to the out-modes,
/// v_in = α v_out + β v_out*.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovCoefficients {
    pub alpha: ComplexValue,
    pub beta: ComplexValue,
    /// γ = |β/α|²
    pub gamma: f64,
    pub log_abs_alpha: f64,
    /// −∞ when β vanishes identically.
    pub log_abs_beta: f64,
}

impl BogoliubovCoefficients {
    /// |α|² − |β|² − 1, evaluated as |α|²·(1 − γ) − 1 so it stays meaningful
    /// when |β| has underflowed.
    pub fn normalization_deviation(&self) -> f64 {
        let ratio = 2.0 * (self.log_abs_beta - self.log_abs_alpha);
        let one_minus_gamma = if ratio == f64::NEG_INFINITY { 1.0 } else { -ratio.exp_m1() };
        (2.0 * self.log_abs_alpha).exp() * one_minus_gamma - 1.0
    }

    /// |β|², may underflow to zero.
    pub fn beta_sq(&self) -> f64 {
        (2.0 * self.log_abs_beta).exp()
    }

    /// Relative phase arg(α β̄), the convention-independent part of the phases.
    pub fn relative_phase(&self) -> f64 {
        (self.alpha * self.beta.conj()).arg()
    }

    pub(crate) fn from_parts(alpha: ComplexValue, beta: ComplexValue) -> Self {
        let log_abs_alpha = alpha.norm().ln();
        let log_abs_beta = if beta.norm() == 0.0 { f64::NEG_INFINITY } else { beta.norm().ln() };
        BogoliubovCoefficients {
            alpha,
            beta,
            gamma: (2.0 * (log_abs_beta - log_abs_alpha)).exp(),
            log_abs_alpha,
            log_abs_beta,
        }
    }
}

const NORMALIZATION_LIMIT: f64 = 1e-8;

/// α, β from the Gamma-function quotients of the exact tanh-model modes:
///
/// α = √(ω_out/ω_in) Γ(1 − iω_in/ρ) Γ(−iω_out/ρ) / [Γ(−iω₊/ρ) Γ(1 − iω₊/ρ)]
/// β = √(ω_out/ω_in) Γ(1 − iω_in/ρ) Γ(iω_out/ρ) / [Γ(iω₋/ρ) Γ(1 + iω₋/ρ)]
pub fn bogoliubov_analytic(params: &ExpansionParams) -> Result<BogoliubovCoefficients> {
    params.validate()?;
    if params.is_conformally_trivial() {
        return Ok(BogoliubovCoefficients {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
            gamma: 0.0,
            log_abs_alpha: 0.0,
            log_abs_beta: f64::NEG_INFINITY,
        });
    }
    let f = frequencies(params);
    let i_over = |w: f64| Complex64::new(0.0, w / params.rho);
    let one = Complex64::new(1.0, 0.0);
    let prefactor = 0.5 * (f.omega_out.ln() - f.omega_in.ln());

    let common = log_gamma_complex(one - i_over(f.omega_in))?;
    let log_alpha = prefactor + common + log_gamma_complex(-i_over(f.omega_out))?
        - log_gamma_complex(-i_over(f.omega_plus))?
        - log_gamma_complex(one - i_over(f.omega_plus))?;

    let (log_beta, beta_vanishes) = match log_gamma_complex(i_over(f.omega_minus)) {
        Ok(lg_minus) => (
            prefactor + common + log_gamma_complex(i_over(f.omega_out))?
                - lg_minus
                - log_gamma_complex(one + i_over(f.omega_minus))?,
            false,
        ),
        // 1/Γ at a pole is zero.
        Err(Error::Pole { .. }) => (Complex64::new(f64::NEG_INFINITY, 0.0), true),
        Err(e) => return Err(e),
    };

    let alpha = log_alpha.exp();
    let beta = if beta_vanishes { Complex64::new(0.0, 0.0) } else { log_beta.exp() };
    let coeffs = BogoliubovCoefficients {
        alpha,
        beta,
        gamma: (2.0 * (log_beta.re - log_alpha.re)).exp(),
        log_abs_alpha: log_alpha.re,
        log_abs_beta: log_beta.re,
    };
    let deviation = coeffs.normalization_deviation();
    if !(deviation.abs() <= NORMALIZATION_LIMIT) {
        return Err(Error::Numerical { what: "|alpha|^2 - |beta|^2 = 1", deviation });
    }
    Ok(coeffs)
}

/// ln γ = 2[ln sinh(πω₋/ρ) − ln sinh(πω₊/ρ)]; −∞ when no particles are made.
pub fn ln_mode_gamma(params: &ExpansionParams) -> f64 {
    if params.is_conformally_trivial() {
        return f64::NEG_INFINITY;
    }
    let f = frequencies(params);
    let s = PI / params.rho;
    match (log_sinh(s * f.omega_minus), log_sinh(s * f.omega_plus)) {
        (Ok(num), Ok(den)) => 2.0 * (num - den),
        _ => f64::NEG_INFINITY,
    }
}

/// Squeezing weight γ = |β/α|² = sinh²(πω₋/ρ) / sinh²(πω₊/ρ).
///
/// Flushes to zero (not subnormal-checked) deep in the adiabatic regime, where
/// ln γ ≈ −2πω_in/ρ.
pub fn mode_gamma(params: &ExpansionParams) -> f64 {
    ln_mode_gamma(params).exp()
}

/// ln|β|² = 2 ln sinh(πω₋/ρ) − ln sinh(πω_in/ρ) − ln sinh(πω_out/ρ).
pub fn ln_beta_sq_closed_form(params: &ExpansionParams) -> f64 {
    if params.is_conformally_trivial() {
        return f64::NEG_INFINITY;
    }
    let f = frequencies(params);
    let s = PI / params.rho;
    match (
        log_sinh(s * f.omega_minus),
        log_sinh(s * f.omega_in),
        log_sinh(s * f.omega_out),
    ) {
        (Ok(a), Ok(b), Ok(c)) => 2.0 * a - b - c,
        _ => f64::NEG_INFINITY,
    }
}

/// ln|α|² = 2 ln sinh(πω₊/ρ) − ln sinh(πω_in/ρ) − ln sinh(πω_out/ρ).
pub fn ln_alpha_sq_closed_form(params: &ExpansionParams) -> f64 {
    if params.is_conformally_trivial() {
        return 0.0;
    }
    let f = frequencies(params);
    let s = PI / params.rho;
    match (
        log_sinh(s * f.omega_plus),
        log_sinh(s * f.omega_in),
        log_sinh(s * f.omega_out),
    ) {
        (Ok(a), Ok(b), Ok(c)) => 2.0 * a - b - c,
        _ => 0.0,
    }
}

/// γ in the sudden limit ρ → ∞: (ω₋/ω₊)².
pub fn sudden_gamma(params: &ExpansionParams) -> f64 {
    let f = frequencies(params);
    let r = f.omega_minus / f.omega_plus;
    r * r
}
