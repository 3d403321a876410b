//! One-dimensional root finding, minimization and quadrature.

use crate::error::{Error, Result};

/// A refined root of a bracketed scalar function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Refines a sign-changing bracket: bisection until the bracket has shrunk by
/// 1e-3, then secant steps that fall back to bisection whenever the secant
/// estimate leaves the current bracket.
pub fn bisect_secant<F>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Root { x: a, fx: fa, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, fx: fb, iterations: 0 });
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Solver(format!(
            "no sign change on [{a:e}, {b:e}]: f = ({fa:e}, {fb:e})"
        )));
    }
    let coarse = (b - a).abs() * 1e-3;
    let mut iterations = 0;
    while (b - a).abs() > coarse.max(xtol) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        iterations += 1;
        if fm == 0.0 {
            return Ok(Root { x: m, fx: fm, iterations });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    while (b - a).abs() > xtol && iterations < 500 {
        let mut x = b - fb * (b - a) / (fb - fa);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if !(x > lo && x < hi) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        iterations += 1;
        if fx == 0.0 {
            return Ok(Root { x, fx, iterations });
        }
        // Keep the sign change while moving the far end in, so a one-sided
        // secant sequence cannot stall.
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if (b - a).abs() > 0.5 * (hi - lo) {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                    fb = fm;
                }
            }
        } else {
            b = x;
            fb = fx;
            if (b - a).abs() > 0.5 * (hi - lo) {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                    fb = fm;
                }
            }
        }
    }
    let (x, fx) = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    Ok(Root { x, fx, iterations })
}

/// A located minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
}

/// Brent's parabolic/golden-section minimization on `[lo, hi]` starting from an
/// interior point `guess` with `f(guess)` below both ends.
pub fn brent_minimize<F>(mut f: F, lo: f64, guess: f64, hi: f64, xtol: f64) -> Result<Minimum>
where
    F: FnMut(f64) -> f64,
{
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    if !(lo < guess && guess < hi) {
        return Err(Error::Solver(format!(
            "minimum bracket not ordered: {lo:e} < {guess:e} < {hi:e}"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut x = guess;
    let mut w = x;
    let mut v = x;
    let mut fx = f(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..500 {
        let xm = 0.5 * (a + b);
        let tol1 = xtol + 1e-15 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(Minimum { x, fx });
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::Solver("Brent minimization did not converge".into()))
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Returns (∫f, error estimate, ∫|f|) on one interval.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut absolute = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        kronrod += WGK[j] * (f1 + f2);
        absolute += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs(), absolute * half.abs())
}

/// Result of an adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`, bisecting the
/// interval with the largest error until the total estimate meets `rel_tol`, or
/// falls to the rounding level of ∫|f| when the integrand cancels.
pub fn integrate<F>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64) -> f64,
{
    const MAX_INTERVALS: usize = 2000;
    let (v, e, m) = gk15(&mut f, a, b);
    let mut pieces = vec![(a, b, v, e, m)];
    loop {
        let value: f64 = pieces.iter().map(|p| p.2).sum();
        let error: f64 = pieces.iter().map(|p| p.3).sum();
        let magnitude: f64 = pieces.iter().map(|p| p.4).sum();
        if !value.is_finite() {
            return Err(Error::Numerical(format!(
                "integrand not finite on [{a:e}, {b:e}]"
            )));
        }
        if error <= rel_tol * value.abs() || error <= 50.0 * f64::EPSILON * magnitude || error < 1e-300 {
            return Ok(Quadrature {
                value,
                error_estimate: error,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::Numerical(format!(
                "quadrature did not converge on [{a:e}, {b:e}]: value {value:e}, \
                 error estimate {error:e} after {} intervals",
                pieces.len()
            )));
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, ..) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1, m1) = gk15(&mut f, lo, mid);
        let (v2, e2, m2) = gk15(&mut f, mid, hi);
        pieces.push((lo, mid, v1, e1, m1));
        pieces.push((mid, hi, v2, e2, m2));
    }
}
