use std::f64::consts::PI;

use proptest::prelude::*;
use torus_identities::dilog::{lasso, li2, rogers_l, ROGERS_L_ONE};

fn l(z: f64) -> f64 {
    rogers_l(z).unwrap()
}

proptest! {
    #[test]
    fn euler(x in 0.0..=1.0f64) {
        prop_assert!((l(x) + l(1.0 - x) - ROGERS_L_ONE).abs() <= 1e-12);
    }

    #[test]
    fn inversion(log_x in -8.0..8.0f64) {
        let x = 10f64.powf(log_x);
        prop_assert!((l(-x) + l(-1.0 / x) + ROGERS_L_ONE).abs() <= 1e-12);
    }

    #[test]
    fn landen(x in 0.0..=(1.0 - 1e-8f64)) {
        prop_assert!((l(-x / (1.0 - x)) + l(x)).abs() <= 1e-12);
    }

    #[test]
    fn pentagon(x in 1e-12..1.0f64, y in 1e-12..1.0f64) {
        let d = 1.0 - x * y;
        let lhs = l(x) + l(y) + l((1.0 - x) / d) + l((1.0 - y) / d);
        prop_assert!((lhs - l(x * y) - PI * PI / 3.0).abs() <= 1e-11);
    }

    #[test]
    fn monotone(a in -1e4..=1.0f64, b in -1e4..=1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(l(lo) <= l(hi));
    }

    #[test]
    fn normalisation(z in -10.0..1.0f64) {
        prop_assume!(z != 0.0);
        let want = li2(z).unwrap() + 0.5 * z.abs().ln() * (1.0 - z).ln();
        prop_assert!((l(z) - want).abs() <= 1e-12);
    }

    #[test]
    fn lasso_on_diagonal(x in 0.0..1.0f64) {
        prop_assert!((lasso(x, x).unwrap() - l(x)).abs() <= 1e-13);
    }
}

/// `L(z) = -1/2 int_0^z (log u/(1-u) + log(1-u)/u) du` on `[0, 1)`, with the
/// substitution `u = z s^4` removing the logarithmic endpoint singularity.
fn rogers_by_quadrature(z: f64) -> f64 {
    let n = 4000;
    let h = 1.0 / n as f64;
    let f = |s: f64| {
        if s == 0.0 {
            return 0.0;
        }
        let u = z * s.powi(4);
        let integrand = u.ln() / (1.0 - u) + (-u).ln_1p() / u;
        integrand * 4.0 * z * s.powi(3)
    };
    let mut acc = f(0.0) + f(1.0);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    -0.5 * acc * h / 3.0
}

#[test]
fn integral_definition() {
    for &z in &[0.05, 0.3, 0.5, 0.75, 0.9] {
        let got = l(z);
        let want = rogers_by_quadrature(z);
        assert!((got - want).abs() < 1e-11, "z={z}: {got} vs {want}");
    }
}

/// `Li2(z) = -int_0^z log(1 - u)/u du`, smooth for `z < 1`.
fn li2_by_quadrature(z: f64) -> f64 {
    let n = 20_000;
    let h = z / n as f64;
    let f = |u: f64| if u == 0.0 { -1.0 } else { (-u).ln_1p() / u };
    let mut acc = f(0.0) + f(z);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    -acc * h / 3.0
}

#[test]
fn negative_axis_against_quadrature() {
    for &z in &[-10.0, -6.5, -3.0, -1.7, -1.0, -0.6, -0.2] {
        let want = li2_by_quadrature(z) + 0.5 * (-z).ln() * (1.0 - z).ln();
        let got = l(z);
        assert!((got - want).abs() < 1e-12, "z={z}: {got} vs {want}");
    }
    assert!((l(-1e8) + ROGERS_L_ONE).abs() < 1e-6);
}
