//! Complex log-Gamma and log-domain hyperbolic helpers.
//!
//! Every Gamma quotient that enters the Bogoliubov coefficients is assembled
//! as `exp(Σ log Γ)`; for slow expansions the raw Gamma values on the
//! imaginary axis are far outside double range while their quotients are O(1).

use core::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln(2π)/2
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// Principal branch of log Γ(z).
///
/// Lanczos (g = 7, n = 9) for Re z ≥ 1/2; smaller real parts are lifted
/// with log Γ(z) = log Γ(z + 1) − log z, so the imaginary axis never goes
/// through the reflection formula.
pub fn log_gamma_complex(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("log_gamma_complex: non-finite argument"));
    }
    if z.re <= 0.5 {
        let nearest = z.re.round();
        let scale = nearest.abs().max(1.0);
        if nearest <= 0.0
            && (z.re - nearest).abs() <= 4.0 * f64::EPSILON * scale
            && z.im.abs() <= 4.0 * f64::EPSILON * scale
        {
            return Err(Error::Pole { re: nearest });
        }
    }

    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 0.5 {
        shift += w.ln();
        w += 1.0;
    }
    Ok(lanczos_ln_gamma(w) - shift)
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    let t = x + (LANCZOS_G + 0.5);
    (x + 0.5) * t.ln() - t + HALF_LN_TWO_PI + series.ln()
}

/// log(sinh x) for x > 0 without overflow.
pub fn log_sinh(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("log_sinh requires x > 0"));
    }
    if x > 20.0 {
        Ok(x - LN_2 + (-(-2.0 * x).exp()).ln_1p())
    } else if x < 1e-4 {
        let x2 = x * x;
        Ok(x.ln() + (x2 / 6.0 + x2 * x2 / 120.0).ln_1p())
    } else {
        // sinh x = e^x (1 − e^{−2x}) / 2
        Ok(x - LN_2 + (-(-2.0 * x).exp_m1()).ln())
    }
}

/// Upper bound on Σ_{n ≥ n0} (1 − γ) γⁿ c √(n + 1).
///
/// Uses concavity of the square root, √(n0 + 1 + j) ≤ √(n0 + 1)·(1 + j / (2(n0 + 1))),
/// and sums the resulting arithmetic-geometric series in closed form.
pub fn geometric_weighted_tail_bound(gamma: f64, c: f64, n0: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::Domain("tail bound requires 0 <= gamma < 1"));
    }
    if !(c >= 0.0) {
        return Err(Error::Domain("tail bound requires c >= 0"));
    }
    if c == 0.0 || (gamma == 0.0 && n0 > 0) {
        return Ok(0.0);
    }
    let m = (n0 + 1) as f64;
    let lead = c * pow_usize(gamma, n0) * m.sqrt();
    Ok(lead * (1.0 + gamma / (2.0 * m * (1.0 - gamma))))
}

/// γⁿ for a count exponent; 0⁰ = 1.
pub(crate) fn pow_usize(base: f64, n: usize) -> f64 {
    match i32::try_from(n) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(n as f64),
    }
}

/// |Γ(ix)|² = π / (x sinh πx), returned as a logarithm.
pub fn ln_abs_gamma_imag_sq(x: f64) -> Result<f64> {
    let ax = x.abs();
    Ok(PI.ln() - ax.ln() - log_sinh(PI * ax)?)
}
