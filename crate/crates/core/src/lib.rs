//! Entanglement generated between a massless and a massive scalar field by a
//! λφψ coupling while a 1+1 dimensional universe expands as
//! a²(η) = 1 + ε(1 + tanh ρη).
//!
//! The pipeline runs [`background`] (frequencies, Bogoliubov coefficients and
//! the squeezing weight γ) → [`interaction`] (first-order pair amplitude
//! c = λA) → [`entanglement`] (partial-transpose spectrum and logarithmic
//! negativity). [`mode_solver`], [`interaction::quadrature_oracle`] and
//! [`entanglement::dense_pt_oracle`] are independent numerical routes used to
//! check the closed forms.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `num_traits::Float` provides f64 math without std. rustc flags those imports
// as unused because it first sees core's unstable inherent float methods.
#![allow(unused_imports)]

extern crate alloc;

pub mod background;
pub mod entanglement;
mod error;
pub mod interaction;
pub mod linalg;
pub mod mode_solver;
pub mod quadrature;
pub mod special;

pub use background::{
    bogoliubov_analytic, frequencies, mode_gamma, scale_factor_sq, BogoliubovCoefficients, ExpansionParams,
    ModeFrequencies,
};
pub use entanglement::{
    block_eigenvalues, dense_pt_oracle, negativity, pt_block, Mode, NegativityResult, PtBlock, PtBlockSpectrum,
    ReducedState,
};
pub use error::{Error, Result};
pub use interaction::{pair_amplitude, quadrature_oracle, state_normalization, AmplitudeModel, FrequencyChoice, PairAmplitude};
pub use special::{geometric_weighted_tail_bound, log_gamma_complex, log_sinh, ComplexValue};

/// Squeezing weight and effective coupling for one parameter point.
pub fn reduced_state(
    params: &ExpansionParams,
    mode: Mode,
    model: AmplitudeModel,
    choice: FrequencyChoice,
) -> Result<ReducedState> {
    params.validate()?;
    let gamma = mode_gamma(params);
    let amp = interaction::pair_amplitude_with(params, model, choice);
    ReducedState::new(gamma, amp.lambda_a, mode)
}
