use proptest::prelude::*;
use scalarent_core::interaction::{damping_for, pair_amplitude_with, paper_to_fourier_ratio};
use scalarent_core::{
    frequencies, pair_amplitude, quadrature_oracle, AmplitudeModel, ExpansionParams, FrequencyChoice,
};

fn p(epsilon: f64, rho: f64, m: f64, k: f64) -> ExpansionParams {
    ExpansionParams::new(epsilon, rho, m, k, 0.0).unwrap()
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp()).collect()
}

#[test]
fn amplitude_decreases_with_momentum() {
    for &rho in &logspace(0.05, 50.0, 9) {
        for &m in &[0.0, 0.5, 1.0, 4.0] {
            let values: Vec<f64> = logspace(0.1, 10.0, 25).iter().map(|&k| pair_amplitude(&p(40.0, rho, m, k)).value).collect();
            for w in values.windows(2) {
                if w[0] > 0.0 {
                    assert!(w[1] < w[0], "rho {rho}, m {m}: {values:?}");
                }
            }
        }
    }
}

/// With tanh switching, A(ρ) rises monotonically from zero to its sudden-limit
/// value 2ε/(√(2kω)(k+ω)²); there is no interior maximum.
#[test]
fn amplitude_rises_monotonically_in_rho() {
    for &(m, k) in &[(1.0, 1.0), (0.3, 2.0), (3.0, 0.2)] {
        let params = p(40.0, 1.0, m, k);
        let f = frequencies(&params);
        let s = k + f.omega_in;
        let sudden = 2.0 * params.epsilon / ((2.0 * k * f.omega_in).sqrt() * s * s);
        let values: Vec<f64> = logspace(0.01, 1e4, 200).iter().map(|&r| pair_amplitude(&params.with_rho(r)).value).collect();
        for w in values.windows(2) {
            assert!(w[1] >= w[0], "m {m}, k {k}");
        }
        assert!(values.iter().all(|&a| a <= sudden * (1.0 + 1e-12)));
        assert!((values[199] - sudden).abs() < 1e-6 * sudden);
    }
}

#[test]
fn amplitude_vanishes_in_adiabatic_limit() {
    let params = p(40.0, 1.0, 1.0, 1.0);
    let mut previous = f64::INFINITY;
    for rho in [1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001] {
        let a = pair_amplitude(&params.with_rho(rho)).value;
        assert!(a < previous || a == 0.0);
        previous = a;
    }
    assert!(previous < 1e-300);
    assert_eq!(pair_amplitude(&params.with_rho(1e-5)).value, 0.0);
}

#[test]
fn quadrature_to_paper_ratio_is_constant_in_epsilon() {
    for &(rho, m, k) in &[(1.0, 1.0, 1.0), (0.4, 2.0, 0.7), (5.0, 0.5, 3.0)] {
        let ratios: Vec<f64> = [0.5, 1.0, 10.0, 40.0, 100.0]
            .iter()
            .map(|&e| {
                let params = p(e, rho, m, k);
                quadrature_oracle(&params, &damping_for(rho)).unwrap() / pair_amplitude(&params).value
            })
            .collect();
        for r in &ratios {
            assert!((r / ratios[0] - 1.0).abs() < 1e-8, "{ratios:?}");
        }
        // and equals the inverse of the geometric factor √2π/(k + ω)
        let geometric = paper_to_fourier_ratio(&p(1.0, rho, m, k), FrequencyChoice::In);
        assert!((ratios[0] * geometric - 1.0).abs() < 1e-9, "{}", ratios[0] * geometric);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_are_linear_in_epsilon(eps in 0.01f64..100.0, scale in 0.1f64..10.0,
                                          rho in 0.05f64..50.0, m in 0.0f64..5.0, k in 0.1f64..10.0) {
        for model in [AmplitudeModel::PaperLiteral, AmplitudeModel::FourierTransform] {
            let one = pair_amplitude_with(&p(eps, rho, m, k), model, FrequencyChoice::In).value;
            let two = pair_amplitude_with(&p(eps * scale, rho, m, k), model, FrequencyChoice::In).value;
            if one > 1e-290 && two > 1e-290 {
                prop_assert!((two / (one * scale) - 1.0).abs() < 1e-12);
            }
        }
    }
}
