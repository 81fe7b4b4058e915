//! Root finding and 1D maximization used by the chemical-potential and
//! entropy-matching solvers. Nothing here knows about physics.

use crate::error::{Error, Result};

pub(crate) const MAX_ITER: usize = 200;

/// Brent's method on a bracketing interval [a, b] with f(a)·f(b) ≤ 0.
/// Converges the interval to ~`rel_tol`·|x| (plus a tiny absolute floor) and
/// returns the best root estimate.
pub(crate) fn brent_root(
    mut f: impl FnMut(f64) -> f64,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    rel_tol: f64,
    context: &'static str,
) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::numerical(
            context,
            format!("root not bracketed: f({a:e}) = {fa:e}, f({b:e}) = {fb:e}"),
        ));
    }
    let (mut c, mut fc) = (a, fa);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs().max(1e-300);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic / secant
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
    }
    Err(Error::numerical(context, "Brent iteration limit reached"))
}

/// Expands [lo, hi] (multiplicatively in x when `log_expand`, else additively
/// by widening steps) until g(lo) ≤ 0 ≤ g(hi) for an increasing g.
/// Returns (lo, hi, g(lo), g(hi)).
pub(crate) fn expand_bracket_increasing(
    mut g: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    grow: f64,
    max_expansions: usize,
    context: &'static str,
) -> Result<(f64, f64, f64, f64)> {
    debug_assert!(lo < hi && grow > 1.0);
    let mut glo = g(lo);
    let mut ghi = g(hi);
    let mut k = 0;
    while glo > 0.0 {
        if k >= max_expansions {
            return Err(Error::numerical(context, "lower bracket expansion exhausted"));
        }
        hi = lo;
        ghi = glo;
        lo /= grow;
        glo = g(lo);
        k += 1;
    }
    while ghi < 0.0 {
        if k >= max_expansions {
            return Err(Error::numerical(context, "upper bracket expansion exhausted"));
        }
        lo = hi;
        glo = ghi;
        hi *= grow;
        ghi = g(hi);
        k += 1;
    }
    Ok((lo, hi, glo, ghi))
}

/// Golden-section maximization of a unimodal f on [a, b] to relative x-tolerance.
pub(crate) fn golden_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()).max(1e-12) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// ln(1 + e^x), stable for any x.
#[inline]
pub(crate) fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// ln(1 − e^{−x}) for x > 0, stable near both ends.
#[inline]
pub(crate) fn ln_one_minus_exp_neg(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x > std::f64::consts::LN_2 {
        (-(-x).exp()).ln_1p()
    } else {
        (-(-x).exp_m1()).ln()
    }
}
