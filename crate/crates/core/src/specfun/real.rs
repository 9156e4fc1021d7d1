//! Bessel functions of the first and second kind for real order and real
//! positive argument.
//!
//! Continued fraction CF1 for `J'/J` at the requested order, downward
//! recurrence to an order `mu` near zero, then either Temme's series
//! (`x < 2`) or Steed's continued fraction CF2 for `(J' + iY')/(J + iY)`
//! fixes the normalisation through the Wronskian.

use std::f64::consts::PI;

use super::gamma::{sin_pi, temme_gammas};
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const XMIN: f64 = 2.0;
const XASYM: f64 = 25.0;

/// `J_nu(x)`, `Y_nu(x)` and their derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JY {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

fn max_iter(x: f64) -> usize {
    10_000 + 4 * x as usize
}

/// CF1 for `J'_nu / J_nu`; also returns the sign of `J_nu` relative to the
/// starting normalisation.
fn cf1(nu: f64, x: f64) -> Result<(f64, f64)> {
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let maxit = max_iter(x);
    for _ in 0..maxit {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            return Ok((h, isign));
        }
    }
    Err(Error::NoConvergence {
        op: "bessel_j (CF1)",
        iterations: maxit,
    })
}

/// Returns `(p, q)` with `p + iq = (J'_mu + iY'_mu)/(J_mu + iY_mu)`.
fn cf2(mu: f64, x: f64) -> Result<(f64, f64)> {
    let xi = 1.0 / x;
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let maxit = max_iter(x);
    for i in 1..maxit {
        a += 2.0 * i as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() <= EPS {
            return Ok((p, q));
        }
    }
    Err(Error::NoConvergence {
        op: "bessel_y (CF2)",
        iterations: maxit,
    })
}

/// Temme's series for `Y_mu(x)` and `Y_{mu+1}(x)`, `|mu| <= 1/2`, `x < 2`.
fn temme_y(mu: f64, x: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / sin_pi(mu) };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let e = e.exp();
    let mut p = e / (gampl * PI);
    let mut q = 1.0 / (e * PI * gammi);
    let pimu2 = 0.5 * pimu;
    let fact3 = if pimu2.abs() < EPS {
        1.0
    } else {
        pimu2.sin() / pimu2
    };
    let r = PI * pimu2 * fact3 * fact3;
    let mut c = 1.0;
    let dd = -x2 * x2;
    let mut sum = ff + r * q;
    let mut sum1 = p;
    for i in 1..10_000 {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * (ff + r * q);
        sum += del;
        let del1 = c * p - fi * del;
        sum1 += del1;
        if del.abs() < (1.0 + sum.abs()) * EPS {
            return Ok((-sum, -sum1 * 2.0 / x));
        }
    }
    Err(Error::NoConvergence {
        op: "bessel_y (Temme series)",
        iterations: 10_000,
    })
}

/// `J_nu(x)`, `Y_nu(x)` and derivatives for `nu >= 0`, `x > 0`.
pub fn bessel_jy(nu: f64, x: f64) -> Result<JY> {
    const OP: &str = "bessel_jy";
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::InvalidOrder { op: OP, nu });
    }
    if !x.is_finite() {
        return Err(Error::NonFinite { op: OP, what: "x" });
    }
    if x <= 0.0 {
        return Err(Error::ZeroArgument { op: OP });
    }
    if x >= XASYM {
        return jy_large(nu, x);
    }
    let nl = if x < XMIN {
        (nu + 0.5).floor() as usize
    } else {
        (nu - x + 1.5).floor().max(0.0) as usize
    };
    let mu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let (h, isign) = cf1(nu, x)?;
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let (ym, y1) = temme_y(mu, x)?;
        rymu = ym;
        ry1 = y1;
        let rymup = mu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let (p, q) = cf2(mu, x)?;
        let gam = (p - f) / q;
        let mut j = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            j = -j;
        }
        rjmu = j;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = mu * xi * rymu - rymup;
    }
    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let jp = rjp1 * scale;
    for i in 1..=nl {
        let rytemp = (mu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let y = rymu;
    let yp = nu * xi * rymu - ry1;
    if !(j.is_finite() && jp.is_finite()) {
        return Err(Error::Overflow { op: OP });
    }
    Ok(JY { j, y, jp, yp })
}

/// Hankel's expansion for `J_mu`, `Y_mu`, `0 <= mu < 2`, `x >= 25`.
fn hankel_asymptotic(mu: f64, x: f64) -> (f64, f64) {
    let m4 = 4.0 * mu * mu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let fk = k as f64;
        let odd = 2.0 * fk - 1.0;
        term *= (m4 - odd * odd) / (fk * 8.0 * x);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 * p.abs().max(q.abs()) {
            break;
        }
    }
    // chi = x - (mu/2 + 1/4) pi, with the phase reduced exactly.
    let phi = 0.5 * mu + 0.25;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = (sin_pi(phi), sin_pi(phi + 0.5));
    let cchi = cx * cp + sx * sp;
    let schi = sx * cp - cx * sp;
    let s = (2.0 / (PI * x)).sqrt();
    (s * (p * cchi - q * schi), s * (p * schi + q * cchi))
}

/// Large-argument branch: Hankel expansion at the fractional order, forward
/// recurrence for `Y` (always stable) and for `J` while the order stays
/// below `x`, CF1 plus downward recurrence above.
fn jy_large(nu: f64, x: f64) -> Result<JY> {
    let n = nu.floor() as usize;
    let mu = nu - n as f64;
    let (j0, y0) = hankel_asymptotic(mu, x);
    let (j1, y1) = hankel_asymptotic(mu + 1.0, x);
    let xi2 = 2.0 / x;
    let (mut ya, mut yb) = (y0, y1);
    for i in 1..=n {
        let yt = (mu + i as f64) * xi2 * yb - ya;
        ya = yb;
        yb = yt;
    }
    let (jn, jn1);
    if nu + 1.0 <= x {
        let (mut ja, mut jb) = (j0, j1);
        for i in 1..=n {
            let jt = (mu + i as f64) * xi2 * jb - ja;
            ja = jb;
            jb = jt;
        }
        jn = ja;
        jn1 = jb;
    } else {
        let (h, _) = cf1(nu, x)?;
        let top_ratio = nu / x - h;
        // u at orders mu+i, starting from u_n = 1 and u_{n+1} = top_ratio
        let mut cur = 1.0;
        let mut above = top_ratio;
        let mut scale = 1.0;
        for i in (1..=n).rev() {
            let ord = mu + i as f64;
            let below = 2.0 * ord / x * cur - above;
            above = cur;
            cur = below;
            if cur.abs() > 1e150 {
                cur *= 1e-150;
                above *= 1e-150;
                scale *= 1e-150;
            }
        }
        let m = cur.abs().max(above.abs());
        let (ua, ub) = (cur / m, above / m);
        let norm = (ua * j0 + ub * j1) / (ua * ua + ub * ub) / m;
        jn = scale * norm;
        jn1 = jn * top_ratio;
    }
    let j = jn;
    let y = ya;
    let jp = nu / x * jn - jn1;
    let yp = nu / x * ya - yb;
    if !(j.is_finite() && y.is_finite()) {
        return Err(Error::Overflow { op: "bessel_jy" });
    }
    Ok(JY { j, y, jp, yp })
}

/// `J_{mu+n}(x)` for `n = 0..count`, by downward recurrence normalised
/// against independently computed `J_mu` and `J_{mu+1}`.
pub fn bessel_j_sequence(mu: f64, x: f64, count: usize) -> Result<Vec<f64>> {
    const OP: &str = "bessel_j_sequence";
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::InvalidOrder { op: OP, nu: mu });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    if x == 0.0 {
        let mut v = vec![0.0; count];
        if mu == 0.0 {
            v[0] = 1.0;
        }
        return Ok(v);
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidRange { op: OP, lo: x, hi: x });
    }
    let top = count.max(2) - 1;
    let nu_top = mu + top as f64;
    let (h, _) = cf1(nu_top, x)?;
    // J'_nu / J_nu = nu/x - J_{nu+1}/J_nu
    let ratio_above = nu_top / x - h;
    let mut u = vec![0.0; top + 1];
    let mut above = ratio_above;
    u[top] = 1.0;
    for n in (1..=top).rev() {
        let nu = mu + n as f64;
        let below = 2.0 * nu / x * u[n] - above;
        above = u[n];
        u[n - 1] = below;
        if below.abs() > 1e150 {
            for v in u[n - 1..].iter_mut() {
                *v *= 1e-150;
            }
            above *= 1e-150;
        }
    }
    let j0 = bessel_jy(mu, x)?.j;
    let j1 = bessel_jy(mu + 1.0, x)?.j;
    let m = u[0].abs().max(u[1].abs());
    let (u0, u1) = (u[0] / m, u[1] / m);
    let norm = (u0 * j0 + u1 * j1) / (u0 * u0 + u1 * u1) / m;
    u.truncate(count);
    for v in u.iter_mut() {
        *v *= norm;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.1, 1.0, 1.9, 2.0, 5.0, 20.0, 150.0] {
            let v = bessel_jy(0.5, x).unwrap();
            let j = (2.0 / (PI * x)).sqrt() * x.sin();
            let y = -(2.0 / (PI * x)).sqrt() * x.cos();
            assert!((v.j - j).abs() <= 1e-13 * (2.0 / (PI * x)).sqrt(), "x={x}");
            assert!((v.y - y).abs() <= 1e-13 * (2.0 / (PI * x)).sqrt(), "x={x}");
        }
    }

    #[test]
    fn wronskian_holds() {
        for &nu in &[0.0, 0.25, 0.75, 1.5, 3.3, 12.0] {
            for &x in &[0.3, 1.0, 3.0, 10.0, 47.0] {
                let v = bessel_jy(nu, x).unwrap();
                let w = v.j * v.yp - v.jp * v.y;
                let scale = 2.0 / (PI * x);
                let mag = (v.j.abs() * v.yp.abs() + v.jp.abs() * v.y.abs()).max(scale);
                assert!((w - scale).abs() <= 1e-13 * mag, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn sequence_matches_pointwise() {
        let seq = bessel_j_sequence(0.3, 7.5, 25).unwrap();
        for (n, v) in seq.iter().enumerate() {
            let p = bessel_jy(0.3 + n as f64, 7.5).unwrap().j;
            assert!((v - p).abs() <= 1e-13 * p.abs().max(1e-3), "n={n}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(bessel_jy(-1.0, 1.0), Err(Error::InvalidOrder { .. })));
        assert!(matches!(bessel_jy(1.0, 0.0), Err(Error::ZeroArgument { .. })));
    }
}
