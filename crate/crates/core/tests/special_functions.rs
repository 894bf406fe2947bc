use core::f64::consts::PI;

use proptest::prelude::*;
use scalarent_core::special::ln_abs_gamma_imag_sq;
use scalarent_core::{geometric_weighted_tail_bound, log_gamma_complex, log_sinh, ComplexValue};

fn z(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

#[test]
fn gamma_on_imaginary_axis_matches_reflection_identity() {
    for x in [0.1, 1.0, 10.0, 100.0, 500.0] {
        let lg = log_gamma_complex(z(0.0, x)).unwrap();
        // ln|Γ(ix)|² + ln x + ln sinh(πx) = ln π
        let lhs = 2.0 * lg.re + f64::ln(x) + log_sinh(PI * x).unwrap();
        assert!((lhs - PI.ln()).abs() <= 1e-12 * lhs.abs().max(1.0), "x = {x}: {lhs}");
        let closed = ln_abs_gamma_imag_sq(x).unwrap();
        assert!((2.0 * lg.re - closed).abs() <= 1e-12 * closed.abs().max(1.0), "x = {x}");
    }
}

#[test]
fn log_sinh_exponentiates_back() {
    let mut x = 1e-6;
    while x <= 30.0 {
        let got = log_sinh(x).unwrap().exp();
        let want = x.sinh();
        assert!((got - want).abs() <= 1e-13 * want, "x = {x}: {got} vs {want}");
        x *= 1.037;
    }
}

fn explicit_tail(gamma: f64, c: f64, n0: usize) -> f64 {
    let mut sum = 0.0;
    let mut weight = (1.0 - gamma) * gamma.powi(n0 as i32);
    let mut n = n0;
    while weight > 0.0 {
        let term = weight * c * ((n + 1) as f64).sqrt();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        weight *= gamma;
        n += 1;
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn log_gamma_recurrence(im in -300.0f64..300.0, re in prop::sample::select(vec![0.0, 0.5, 1.0])) {
        prop_assume!(re != 0.0 || im.abs() > 1e-3);
        let w = z(re, im);
        let lhs = log_gamma_complex(w + 1.0).unwrap();
        let rhs = log_gamma_complex(w).unwrap() + w.ln();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn log_sinh_is_increasing(x in 1e-8f64..800.0, step in 1e-6f64..1.0) {
        let y = x * (1.0 + step);
        prop_assert!(log_sinh(y).unwrap() > log_sinh(x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tail_bound_dominates(gamma in 0.0f64..0.995, c in 0.0f64..10.0, n0 in 0usize..300) {
        let bound = geometric_weighted_tail_bound(gamma, c, n0).unwrap();
        let tail = explicit_tail(gamma, c, n0);
        // subnormal results carry too few digits for a relative comparison
        prop_assume!(tail == 0.0 || tail >= f64::MIN_POSITIVE);
        prop_assert!(bound >= tail * (1.0 - 1e-14), "bound {bound} < tail {tail}");
    }
}
