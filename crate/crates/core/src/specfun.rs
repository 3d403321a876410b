//! Ordinary (J) and modified second-kind (K) Bessel functions of orders 0–2.
//!
//! J uses the power series for x ≤ 2, Miller's backward recurrence normalized by
//! `J0 + 2ΣJ2k = 1` up to x = 30, and the Hankel asymptotic expansion beyond.
//! K uses the logarithmic power series for x ≤ 2 and Temme's continued fraction
//! (Steed's CF2) above. Orders 1 and 2 follow from the standard recurrences.

use crate::constants::{EULER_GAMMA, PI};
use crate::error::{Error, Result};

/// A Bessel function value together with its derivative at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub order: u32,
    pub argument: f64,
    pub value: f64,
    pub derivative: f64,
}

impl BesselEval {
    pub fn j(order: u32, argument: f64) -> Result<Self> {
        Ok(Self {
            order,
            argument,
            value: bessel_j(order, argument)?,
            derivative: bessel_j_prime(order, argument)?,
        })
    }

    pub fn k(order: u32, argument: f64) -> Result<Self> {
        Ok(Self {
            order,
            argument,
            value: bessel_k(order, argument)?,
            derivative: bessel_k_prime(order, argument)?,
        })
    }
}

fn check_order(n: u32) -> Result<usize> {
    if n > 2 {
        return Err(Error::domain("order", format!("{n} (supported: 0, 1, 2)")));
    }
    Ok(n as usize)
}

fn check_j_arg(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain("argument", format!("{x} is not finite")));
    }
    Ok(())
}

fn check_k_arg(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "argument",
            format!("{x} (K_n requires a finite positive argument)"),
        ));
    }
    Ok(())
}

/// J_n(x), n ∈ {0, 1, 2}.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    let n = check_order(n)?;
    check_j_arg(x)?;
    Ok(j012(x)[n])
}

/// K_n(x), n ∈ {0, 1, 2}, x > 0.
pub fn bessel_k(n: u32, x: f64) -> Result<f64> {
    let n = check_order(n)?;
    check_k_arg(x)?;
    Ok(k012(x)[n])
}

/// Exponentially scaled e^x·K_n(x); finite for arguments where K_n underflows.
pub fn bessel_k_scaled(n: u32, x: f64) -> Result<f64> {
    let n = check_order(n)?;
    check_k_arg(x)?;
    Ok(k012_scaled(x)[n])
}

/// dJ_n/dx.
pub fn bessel_j_prime(n: u32, x: f64) -> Result<f64> {
    let n = check_order(n)?;
    check_j_arg(x)?;
    let j = j012(x);
    Ok(j_prime_from(n, x, &j))
}

/// dK_n/dx.
pub fn bessel_k_prime(n: u32, x: f64) -> Result<f64> {
    let n = check_order(n)?;
    check_k_arg(x)?;
    let k = k012(x);
    Ok(k_prime_from(n, x, &k))
}

pub(crate) fn j_prime_from(n: usize, x: f64, j: &[f64; 3]) -> f64 {
    match n {
        0 => -j[1],
        1 => {
            if x == 0.0 {
                0.5
            } else {
                j[0] - j[1] / x
            }
        }
        _ => {
            if x == 0.0 {
                0.0
            } else {
                j[1] - 2.0 * j[2] / x
            }
        }
    }
}

pub(crate) fn k_prime_from(n: usize, x: f64, k: &[f64; 3]) -> f64 {
    match n {
        0 => -k[1],
        1 => -k[0] - k[1] / x,
        _ => -k[1] - 2.0 * k[2] / x,
    }
}

/// [J0(x), J1(x), J2(x)] for any finite x.
pub(crate) fn j012(x: f64) -> [f64; 3] {
    if x < 0.0 {
        let [j0, j1, j2] = j012(-x);
        return [j0, -j1, j2];
    }
    if x == 0.0 {
        return [1.0, 0.0, 0.0];
    }
    let [j0, j1] = if x <= 2.0 {
        j01_series(x)
    } else if x <= 30.0 {
        return j012_miller(x);
    } else {
        [hankel_j(0.0, x), hankel_j(1.0, x)]
    };
    [j0, j1, 2.0 * j1 / x - j0]
}

fn j01_series(x: f64) -> [f64; 2] {
    let y = -0.25 * x * x;
    let mut t0 = 1.0;
    let mut t1 = 0.5 * x;
    let (mut s0, mut s1) = (t0, t1);
    for k in 1..40 {
        let kf = k as f64;
        t0 *= y / (kf * kf);
        t1 *= y / (kf * (kf + 1.0));
        s0 += t0;
        s1 += t1;
        if t0.abs() < 1e-18 * s0.abs() && t1.abs() < 1e-18 * s1.abs().max(1e-300) {
            break;
        }
    }
    [s0, s1]
}

fn j012_miller(x: f64) -> [f64; 3] {
    // Even starting order far enough above x that J_m(x) is negligible.
    let start = 2 * (((x + 25.0 + 12.0 * x.cbrt()) as usize) / 2 + 1);
    let two_over_x = 2.0 / x;
    let mut above = 0.0;
    let mut cur = 1e-30;
    let mut norm = 0.0;
    let mut out = [0.0; 3];
    for m in (1..=start).rev() {
        let below = m as f64 * two_over_x * cur - above;
        above = cur;
        cur = below;
        let idx = m - 1;
        if idx <= 2 {
            out[idx] = cur;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += out[0];
    [out[0] / norm, out[1] / norm, out[2] / norm]
}

fn hankel_j(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        // Terms alternate in sign pairwise between P and Q.
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// [K0(x), K1(x), K2(x)], x > 0.
pub(crate) fn k012(x: f64) -> [f64; 3] {
    if x <= 2.0 {
        let [k0, k1] = k01_series(x);
        [k0, k1, k0 + 2.0 * k1 / x]
    } else {
        let scale = (-x).exp();
        let [k0, k1, k2] = k012_scaled(x);
        [k0 * scale, k1 * scale, k2 * scale]
    }
}

/// [e^x K0(x), e^x K1(x), e^x K2(x)], x > 0.
pub(crate) fn k012_scaled(x: f64) -> [f64; 3] {
    let [k0, k1] = if x <= 2.0 {
        let s = x.exp();
        let [k0, k1] = k01_series(x);
        [k0 * s, k1 * s]
    } else {
        k01_scaled_cf(x)
    };
    [k0, k1, k0 + 2.0 * k1 / x]
}

fn k01_series(x: f64) -> [f64; 2] {
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln();
    // K0 = -(ln(x/2)+γ) I0 + Σ y^k/(k!)² H_k
    // K1 = 1/x + ln(x/2) I1 - (x/4) Σ y^k/(k!(k+1)!) (ψ(k+1)+ψ(k+2))
    let mut t = 1.0; // y^k/(k!)²
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut s0 = 0.0;
    let mut u = 1.0; // y^k/(k!(k+1)!)
    let mut i1_sum = 1.0;
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    let mut s1 = u * (psi_k1 + (psi_k1 + 1.0));
    for k in 1..60 {
        let kf = k as f64;
        t *= y / (kf * kf);
        u *= y / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        psi_k1 += 1.0 / kf;
        i0 += t;
        i1_sum += u;
        s0 += t * harmonic;
        s1 += u * (2.0 * psi_k1 + 1.0 / (kf + 1.0));
        if t < 1e-18 * i0 && u < 1e-18 * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    let k0 = -(log_half + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * s1;
    [k0, k1]
}

fn k01_scaled_cf(x: f64) -> [f64; 2] {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    [k0, k1]
}
