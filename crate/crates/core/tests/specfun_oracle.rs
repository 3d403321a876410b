//! Bessel functions against slow quadrature oracles built on the integral
//! representations, which the trapezoidal rule integrates to machine precision:
//!   J_n(x) = (1/2π) ∫_0^{2π} cos(nτ − x sin τ) dτ   (periodic, analytic)
//!   K_n(x) = ∫_0^∞ exp(−x cosh t) cosh(nt) dt         (double-exponential decay)

use fibertrap::specfun::{bessel_j, bessel_j_prime, bessel_k, bessel_k_prime};
use proptest::prelude::*;

fn oracle_j(n: u32, x: f64) -> f64 {
    let points = 1024;
    let step = 2.0 * std::f64::consts::PI / points as f64;
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for i in 0..points {
        let tau = i as f64 * step;
        let y = (n as f64 * tau - x * tau.sin()).cos() - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum / points as f64
}

fn oracle_k(n: u32, x: f64) -> f64 {
    let step = 0.02;
    let f = |t: f64| (-x * t.cosh()).exp() * (n as f64 * t).cosh();
    let mut sum = 0.5 * f(0.0);
    let mut i = 1;
    loop {
        let v = f(i as f64 * step);
        sum += v;
        if v < 1e-20 * sum {
            break;
        }
        i += 1;
    }
    sum * step
}

fn assert_rel(actual: f64, expected: f64, tol: f64, what: &str) {
    let err = (actual - expected).abs();
    // Near zeros of J only absolute accuracy is meaningful.
    assert!(
        err <= tol * expected.abs() + 1e-15,
        "{what}: got {actual:e}, oracle {expected:e}, err {err:e}"
    );
}

#[test]
fn oracle_reproduces_published_values() {
    assert_rel(oracle_j(0, 1.0), 0.765_197_686_557_966_6, 1e-14, "J0(1)");
    assert_rel(oracle_k(0, 1.0), 0.421_024_438_240_708_3, 1e-14, "K0(1)");
    assert_rel(oracle_k(2, 1.0), 1.624_838_898_635_177_4, 1e-14, "K2(1)");
}

#[test]
fn j_matches_oracle_on_dense_grid() {
    for i in 0..=2000 {
        let x = i as f64 * 0.025;
        for n in 0..3 {
            assert_rel(bessel_j(n, x).unwrap(), oracle_j(n, x), 1e-12, &format!("J{n}({x})"));
        }
    }
}

#[test]
fn k_matches_oracle_on_log_grid() {
    for i in 0..=400 {
        let x = 1e-3 * (50.0_f64 / 1e-3).powf(i as f64 / 400.0);
        for n in 0..3 {
            assert_rel(bessel_k(n, x).unwrap(), oracle_k(n, x), 1e-12, &format!("K{n}({x})"));
        }
    }
}

#[test]
fn k_strictly_positive_and_decreasing() {
    for n in 0..3 {
        let mut prev = f64::INFINITY;
        for i in 0..=2000 {
            let x = 1e-3 + i as f64 * 0.025;
            let v = bessel_k(n, x).unwrap();
            assert!(v > 0.0 && v < prev, "K{n} at {x}");
            prev = v;
        }
    }
}

#[test]
fn j1_prime_at_two_matches_finite_difference() {
    let h = 1e-6;
    let fd = (bessel_j(1, 2.0 + h).unwrap() - bessel_j(1, 2.0 - h).unwrap()) / (2.0 * h);
    let exact = bessel_j(0, 2.0).unwrap() - bessel_j(1, 2.0).unwrap() / 2.0;
    assert!((fd - exact).abs() <= 1e-8);
    assert!((bessel_j_prime(1, 2.0).unwrap() - exact).abs() <= 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn zeroth_order_derivative_identities(x in 1e-3f64..50.0) {
        let j1 = bessel_j(1, x).unwrap();
        let k1 = bessel_k(1, x).unwrap();
        prop_assert!((bessel_j_prime(0, x).unwrap() + j1).abs() <= 1e-12 * j1.abs() + 1e-16);
        prop_assert!((bessel_k_prime(0, x).unwrap() + k1).abs() <= 1e-12 * k1);
    }

    #[test]
    fn order_two_recurrences(x in 1e-3f64..50.0) {
        let (j0, j1, j2) = (bessel_j(0, x).unwrap(), bessel_j(1, x).unwrap(), bessel_j(2, x).unwrap());
        let (k0, k1, k2) = (bessel_k(0, x).unwrap(), bessel_k(1, x).unwrap(), bessel_k(2, x).unwrap());
        let j_rhs = 2.0 * j1 / x - j0;
        prop_assert!((j2 - j_rhs).abs() <= 1e-10 * j2.abs() + 1e-14);
        prop_assert!((k2 - (k0 + 2.0 * k1 / x)).abs() <= 1e-10 * k2);
    }

    #[test]
    fn derivatives_match_central_differences(x in 0.05f64..50.0, n in 0u32..3) {
        let h = 1e-5 * x.max(1.0);
        let fd_j = (bessel_j(n, x + h).unwrap() - bessel_j(n, x - h).unwrap()) / (2.0 * h);
        let fd_k = (bessel_k(n, x + h).unwrap() - bessel_k(n, x - h).unwrap()) / (2.0 * h);
        let dj = bessel_j_prime(n, x).unwrap();
        let dk = bessel_k_prime(n, x).unwrap();
        // J' vanishes at extrema, so its relative check carries an absolute floor.
        prop_assert!((fd_j - dj).abs() <= 1e-6 * dj.abs() + 1e-9);
        prop_assert!((fd_k - dk).abs() <= 1e-6 * dk.abs());
    }
}
