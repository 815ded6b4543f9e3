//! Step-doubling trapezoidal quadrature on a finite window, used for the
//! double-exponentially decaying integrands of the Bessel and Mellin
//! kernels. The caller fixes the window so the analytic truncation error
//! is below target; the reported error estimate combines the step-doubling
//! difference with that truncation allowance.

use crate::complex::Cplx;
use rug::Float;

/// Integrate f over [a, b] by trapezoid sums with successive halving.
/// Returns (value, error_estimate). `target` is the absolute accuracy to
/// aim for; doubling stops once two successive levels agree to target or
/// `max_levels` is reached.
pub fn trapezoid_doubling<F: Fn(&Float) -> Cplx>(
    f: F,
    a: f64,
    b: f64,
    prec: u32,
    min_levels: u32,
    max_levels: u32,
    target: &Float,
) -> (Cplx, Float) {
    assert!(b > a);
    let fa = Float::with_val(prec, a);
    let fb = Float::with_val(prec, b);
    let width = Float::with_val(prec, &fb - &fa);
    let mut n: u64 = 8;
    let ends = f(&fa).add(&f(&fb)).mul_real(&Float::with_val(prec, 0.5f32));
    let mut inner = Cplx::zero(prec);
    for i in 1..n {
        let t = Float::with_val(prec, &fa + &Float::with_val(prec, i as f64 / n as f64 * (b - a)));
        inner = inner.add(&f(&t));
    }
    let h = Float::with_val(prec, &width / &Float::with_val(prec, n));
    let mut current = ends.add(&inner).mul_real(&h);
    let mut err = Float::with_val(prec, f64::INFINITY);
    for level in 0..max_levels {
        // add midpoints
        let mut mids = Cplx::zero(prec);
        for i in 0..n {
            let frac = (2 * i + 1) as f64 / (2 * n) as f64;
            let t = Float::with_val(prec, &fa + &Float::with_val(prec, frac * (b - a)));
            mids = mids.add(&f(&t));
        }
        n *= 2;
        let h2 = Float::with_val(prec, &width / &Float::with_val(prec, n));
        inner = inner.add(&mids);
        let next = ends.add(&inner).mul_real(&h2);
        let new_err = next.dist(&current);
        current = next;
        if level + 1 >= min_levels {
            // stop at target, or once halving no longer shrinks the
            // difference (rounding floor reached)
            let plateau = new_err > Float::with_val(prec, &err / &Float::with_val(prec, 4u32));
            err = new_err;
            if err <= *target || plateau {
                break;
            }
        } else {
            err = new_err;
        }
    }
    (current, err)
}
