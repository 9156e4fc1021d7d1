//! Special functions: the gamma function and Bessel functions of real order.
//!
//! Real-argument `J`, `Y` and `H^(1)` come from [`bessel_jy`]; complex
//! modified functions `I`, `K` from an independent complex-arithmetic
//! scheme. Accuracy is validated for `|arg z| <= pi/2`; the left half-plane
//! is reached by analytic continuation.

mod complex;
mod gamma;
mod real;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use complex::{bessel_ik_scaled, ScaledIK};
pub use gamma::gamma;
pub use real::{bessel_j_sequence, bessel_jy, JY};

pub(crate) use gamma::{cos_pi, sin_pi};

/// A strictly positive, finite Bessel order.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > 0.0 {
            Ok(Self(nu))
        } else {
            Err(Error::InvalidOrder {
                op: "BesselOrder::new",
                nu,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `J_nu(x)` for `nu >= 0`, `x >= 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if x == 0.0 && nu >= 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(bessel_jy(nu, x)?.j)
}

/// `Y_nu(x)` for `nu >= 0`, `x > 0`.
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.y)
}

/// Hankel function `H^(1)_nu(x) = J_nu(x) + i Y_nu(x)` for `x > 0`.
pub fn hankel1(nu: f64, x: f64) -> Result<Complex64> {
    let v = bessel_jy(nu, x).map_err(|e| rename(e, "hankel1"))?;
    Ok(Complex64::new(v.j, v.y))
}

fn rename(e: Error, op: &'static str) -> Error {
    match e {
        Error::InvalidOrder { nu, .. } => Error::InvalidOrder { op, nu },
        Error::ZeroArgument { .. } => Error::ZeroArgument { op },
        Error::Overflow { .. } => Error::Overflow { op },
        Error::NonFinite { what, .. } => Error::NonFinite { op, what },
        Error::BranchCut { .. } => Error::BranchCut { op },
        other => other,
    }
}

fn check_arg(op: &'static str, z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { op, what: "z" });
    }
    if z.norm() == 0.0 {
        return Err(Error::ZeroArgument { op });
    }
    if z.re < 0.0 && z.im == 0.0 {
        return Err(Error::BranchCut { op });
    }
    Ok(())
}

/// Scaled values on the principal branch.  For `Re z < 0` the argument is
/// rotated by `-+pi` into the right half-plane; the returned flag is the
/// rotation sign `s` with `z = w e^{i pi s}`.
fn reduce(z: Complex64) -> (Complex64, f64) {
    if z.re >= 0.0 {
        (z, 0.0)
    } else if z.im > 0.0 {
        (-z, 1.0)
    } else {
        (-z, -1.0)
    }
}

/// Modified Bessel function of the first kind `I_nu(z)`, `nu > 0`,
/// principal branch `|arg z| < pi`.
pub fn bessel_i(nu: BesselOrder, z: Complex64) -> Result<Complex64> {
    const OP: &str = "bessel_i";
    check_arg(OP, z)?;
    let nu = nu.value();
    let (w, s) = reduce(z);
    if w.re > 700.0 {
        return Err(Error::Overflow { op: OP });
    }
    let v = bessel_ik_scaled(nu, w).map_err(|e| rename(e, OP))?;
    let iw = v.i * w.exp();
    // I_nu(w e^{i pi s}) = e^{i pi s nu} I_nu(w)
    let phase = Complex64::from_polar(1.0, PI * s * nu);
    Ok(phase * iw)
}

/// Modified Bessel function of the second kind `K_nu(z)`, `nu > 0`,
/// principal branch `|arg z| < pi`.
pub fn bessel_k(nu: BesselOrder, z: Complex64) -> Result<Complex64> {
    const OP: &str = "bessel_k";
    check_arg(OP, z)?;
    let nu = nu.value();
    let (w, s) = reduce(z);
    let v = bessel_ik_scaled(nu, w).map_err(|e| rename(e, OP))?;
    if s == 0.0 {
        if w.re < -700.0 {
            return Err(Error::Overflow { op: OP });
        }
        return Ok(v.k * (-w).exp());
    }
    if w.re > 700.0 {
        return Err(Error::Overflow { op: OP });
    }
    // K_nu(w e^{i pi s}) = e^{-i pi s nu} K_nu(w) - i pi s I_nu(w)
    let kw = v.k * (-w).exp();
    let iw = v.i * w.exp();
    Ok(Complex64::from_polar(1.0, -PI * s * nu) * kw - Complex64::new(0.0, PI * s) * iw)
}

/// Products `I_{mu+n}(a) K_{mu+n}(b)` for `n = 0..count`, where
/// `a = c r_<`, `b = c r_>` share the direction `c`, `Re c >= 0`,
/// `0 < r_< <= r_>`. Computed through ratio recurrences so neither factor
/// is formed on its own.
pub fn ik_product_sequence(
    mu: f64,
    a: Complex64,
    b: Complex64,
    count: usize,
) -> Result<Vec<Complex64>> {
    const OP: &str = "ik_product_sequence";
    if count == 0 {
        return Ok(Vec::new());
    }
    let va = bessel_ik_scaled(mu, a).map_err(|e| rename(e, OP))?;
    let vb = bessel_ik_scaled(mu, b).map_err(|e| rename(e, OP))?;
    let mut out = Vec::with_capacity(count);
    let p0 = va.i * vb.k * (a - b).exp();
    out.push(p0);
    if count == 1 {
        return Ok(out);
    }
    // rho[n] = I_{mu+n+1}(a) / I_{mu+n}(a), from CF1 at the top order and
    // downward recurrence of ratios.
    let top = count - 1;
    let nu_top = mu + top as f64;
    let h = complex::cf1_ik(nu_top, a)?;
    // I'/I = nu/a + I_{nu+1}/I_nu
    let mut rho = vec![Complex64::new(0.0, 0.0); top];
    let mut r = h - nu_top / a;
    for n in (0..top).rev() {
        let nu1 = mu + n as f64 + 1.0;
        // I_{nu1-1} = (2 nu1 / a) I_{nu1} + I_{nu1+1}
        r = 1.0 / (2.0 * nu1 / a + r);
        rho[n] = r;
    }
    // kappa[n] = K_{mu+n+1}(b) / K_{mu+n}(b), forward.
    let mut kappa = vb.k1 / vb.k;
    let mut p = p0;
    for (n, rh) in rho.iter().enumerate() {
        p *= rh * kappa;
        out.push(p);
        let nu1 = mu + n as f64 + 1.0;
        kappa = 2.0 * nu1 / b + 1.0 / kappa;
    }
    Ok(out)
}
