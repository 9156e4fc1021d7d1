//! Double-exponential (tanh-sinh) quadrature for integrands with endpoint
//! singularities, used for norms, Gram matrices and verification.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Integrate `f` over `[a, b]` to relative tolerance `tol`.
///
/// The integrand may be singular (integrably) at either endpoint; it is
/// never evaluated exactly at `a` or `b`. `f` receives the abscissa and the
/// distance to the nearer endpoint is kept to full relative precision.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::InvalidRange { op: "tanh_sinh", lo: a, hi: b });
    }
    let half = 0.5 * (b - a);
    let mid = a + half;
    let mut sum = f(mid)? * FRAC_PI_2;
    let mut prev = sum * half;
    let max_level = 10;
    let mut h = 1.0;
    for level in 0..=max_level {
        // Level 0 takes all integer multiples of h=1; finer levels add odd
        // multiples of the halved step.
        let (first, incr): (f64, f64) = if level == 0 { (1.0, 1.0) } else { (h, 2.0 * h) };
        let mut t = first;
        loop {
            let u = FRAC_PI_2 * t.sinh();
            let e = (2.0 * u).exp();
            let delta = (b - a) / (1.0 + e);
            let cu = u.cosh();
            let w = FRAC_PI_2 * t.cosh() / (cu * cu);
            if !(delta > 1e-280 * (b - a).max(1.0)) || w < 1e-300 {
                break;
            }
            let fl = f(a + delta)?;
            let fr = f(b - delta)?;
            let add = (fl + fr) * w;
            sum += add;
            if add.norm() * half < 1e-18 * (sum.norm() * half).max(1e-300) && t > 3.0 {
                break;
            }
            t += incr;
        }
        let est = sum * half * if level == 0 { 1.0 } else { h };
        if level == 0 {
            prev = est;
            h = 0.5;
            continue;
        }
        if (est - prev).norm() <= tol * est.norm() || est.norm() == 0.0 {
            return Ok(est);
        }
        prev = est;
        h *= 0.5;
    }
    Err(Error::NoConvergence {
        op: "tanh_sinh",
        iterations: max_level,
    })
}

/// Real-valued convenience wrapper.
pub fn tanh_sinh_real<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok(tanh_sinh(|x| f(x).map(|v| Complex64::new(v, 0.0)), a, b, tol)?.re)
}
