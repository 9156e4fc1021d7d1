//! Modified Bessel functions `I_nu(z)`, `K_nu(z)` for real order `nu >= 0`
//! and complex argument in the closed right half-plane.
//!
//! The scheme follows the real-argument algorithm of Temme and Steed, run in
//! complex arithmetic: CF1 for `I'_nu / I_nu`, downward recurrence to
//! `|mu| <= 1/2`, Temme's series (`|z| < 2`) or Steed's CF2 for `K_mu`,
//! `K_{mu+1}`, the Wronskian for `I_mu`, and upward recurrence for `K`.
//! Values are returned exponentially scaled so that large arguments do not
//! overflow.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{sin_pi, temme_gammas};
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-150;
const ZMIN: f64 = 2.0;

/// Exponentially scaled values: `I = i * exp(z)`, `K = k * exp(-z)`, and
/// likewise for the derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledIK {
    pub i: Complex64,
    pub k: Complex64,
    pub ip: Complex64,
    pub kp: Complex64,
    /// `K_{nu+1}`, scaled like `k`.
    pub k1: Complex64,
}

fn max_iter(z: Complex64) -> usize {
    10_000 + 4 * z.norm() as usize
}

fn guard(c: Complex64) -> Complex64 {
    if c.norm() < FPMIN {
        Complex64::new(FPMIN, 0.0)
    } else {
        c
    }
}

/// CF1 for `I'_nu(z) / I_nu(z)` by the modified Lentz method.
pub(crate) fn cf1_ik(nu: f64, z: Complex64) -> Result<Complex64> {
    let zi = 1.0 / z;
    let zi2 = 2.0 * zi;
    let mut h = guard(nu * zi);
    let mut b = zi2 * nu;
    let mut d = Complex64::new(0.0, 0.0);
    let mut c = h;
    let maxit = max_iter(z);
    for _ in 0..maxit {
        b += zi2;
        d = 1.0 / guard(b + d);
        c = guard(b + 1.0 / c);
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < EPS {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence {
        op: "bessel_i (CF1)",
        iterations: maxit,
    })
}

/// Temme's series: unscaled `K_mu(z)`, `K_{mu+1}(z)` for `|mu| <= 1/2`.
fn temme_k(mu: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let z2 = 0.5 * z;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / sin_pi(mu) };
    let d = -z2.ln();
    let e = mu * d;
    let fact2 = if e.norm() < EPS {
        Complex64::new(1.0, 0.0)
    } else {
        e.sinh() / e
    };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let e = e.exp();
    let mut p = 0.5 * e / gampl;
    let mut q = 0.5 / (e * gammi);
    let mut c = Complex64::new(1.0, 0.0);
    let dd = z2 * z2;
    let mut sum1 = p;
    for i in 1..10_000 {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.norm() < sum.norm() * EPS {
            return Ok((sum, sum1 * 2.0 / z));
        }
    }
    Err(Error::NoConvergence {
        op: "bessel_k (Temme series)",
        iterations: 10_000,
    })
}

/// Steed's CF2: scaled `K_mu(z)`, `K_{mu+1}(z)` for `|mu| <= 1/2`,
/// `|z| >= 2`.
fn steed_k(mu: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = Complex64::new(1.0, 0.0);
    let a1 = 0.25 - mu * mu;
    let mut q = Complex64::new(a1, 0.0);
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let maxit = max_iter(z);
    for i in 1..maxit {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < s.norm() * EPS {
            h *= a1;
            let kmu = (PI / (2.0 * z)).sqrt() / s;
            let k1 = kmu * (mu + z + 0.5 - h) / z;
            return Ok((kmu, k1));
        }
    }
    Err(Error::NoConvergence {
        op: "bessel_k (CF2)",
        iterations: maxit,
    })
}

/// Scaled `K_mu`, `K_{mu+1}` for `|mu| <= 1/2` and `Re z >= 0`.
pub(crate) fn k_pair_scaled(mu: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    if z.norm() < ZMIN {
        let (k0, k1) = temme_k(mu, z)?;
        let s = z.exp();
        Ok((k0 * s, k1 * s))
    } else {
        steed_k(mu, z)
    }
}

/// Scaled `I_nu`, `K_nu` and derivatives for `nu >= 0`, `z != 0`,
/// `Re z >= 0`.
pub fn bessel_ik_scaled(nu: f64, z: Complex64) -> Result<ScaledIK> {
    const OP: &str = "bessel_ik";
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::InvalidOrder { op: OP, nu });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { op: OP, what: "z" });
    }
    if z.norm() == 0.0 {
        return Err(Error::ZeroArgument { op: OP });
    }
    if z.re < 0.0 {
        return Err(Error::BranchCut { op: OP });
    }
    let nl = (nu + 0.5).floor() as usize;
    let mu = nu - nl as f64;
    let zi = 1.0 / z;
    let zi2 = 2.0 * zi;

    let h = cf1_ik(nu, z)?;
    let mut ril = Complex64::new(1.0, 0.0);
    let mut ripl = h * ril;
    let mut ril1 = ril;
    let mut rip1 = ripl;
    let mut fact = nu * zi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= zi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if ril.norm() > 1e150 {
            ril *= 1e-150;
            ripl *= 1e-150;
            ril1 *= 1e-150;
            rip1 *= 1e-150;
        }
    }
    let f = ripl / ril;
    let (mut kmu, mut k1) = k_pair_scaled(mu, z)?;
    let kmup = mu * zi * kmu - k1;
    // Wronskian I K' - I' K = -1/z, in scaled form.
    let imu = zi / (f * kmu - kmup);
    let i = imu * ril1 / ril;
    let ip = imu * rip1 / ril;
    for n in 1..=nl {
        let ktemp = (mu + n as f64) * zi2 * k1 + kmu;
        kmu = k1;
        k1 = ktemp;
        if !(kmu.re.is_finite() && kmu.im.is_finite()) {
            return Err(Error::Overflow { op: OP });
        }
    }
    let k = kmu;
    let kp = nu * zi * kmu - k1;
    if !(k.re.is_finite() && k.im.is_finite() && k1.re.is_finite() && k1.im.is_finite()) {
        return Err(Error::Overflow { op: OP });
    }
    Ok(ScaledIK { i, k, ip, kp, k1 })
}
