//! Order-zero Bessel functions and the zeros of J0.
//!
//! J0/Y0 come from `libm` (FreeBSD msun rational approximations, absolute
//! error near 1e-16 on (0, 50]). J1 is only used as the derivative of J0
//! during zero refinement.

use crate::error::{Error, Result};

pub fn j0(x: f64) -> f64 {
    libm::j0(x)
}

/// Y0 for x > 0.
pub fn y0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Y0 requires x > 0, got {x}")));
    }
    Ok(libm::y0(x))
}

/// (J0(x), Y0(x)) for x > 0.
pub fn bessel_j0_y0(x: f64) -> Result<(f64, f64)> {
    Ok((j0(x), y0(x)?))
}

/// Bisection on a sign-changing bracket until the bracket width is below
/// `tol`. Returns the final bracket; the midpoint is the root estimate.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return (lo, lo);
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return (mid, mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// The n-th positive zero of J0 (n ≥ 1), with its final bracket.
///
/// McMahon's estimate (n − 1/4)π lies within 0.05 of the true zero, so a
/// ±0.5 bracket always isolates exactly one root. Bisection narrows it and
/// a Newton step with J0' = −J1 polishes the midpoint.
pub fn j0_zero(n: usize) -> Result<(f64, (f64, f64))> {
    if n == 0 {
        return Err(Error::InvalidArgument("zero index must be >= 1".into()));
    }
    let guess = (n as f64 - 0.25) * std::f64::consts::PI;
    let (lo, hi) = bisect(j0, guess - 0.5, guess + 0.5, 1e-13);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..2 {
        let step = j0(x) / -libm::j1(x);
        if step.is_finite() && (x - step) >= lo - 1e-13 && (x - step) <= hi + 1e-13 {
            x -= step;
        }
    }
    Ok((x, (lo, hi)))
}
