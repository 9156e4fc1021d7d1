//! Generalised eigenfunctions and scattering amplitudes.
//!
//! Sign convention: the `+` eigenfunctions have incoming scattered waves
//! (`e^{-ikr}`) and use the incidence angle `omega_+ = omega`; the `-`
//! eigenfunctions have outgoing scattered waves and `omega_- = omega + pi`.
//! The extension correction of a `+` eigenfunction is built from the
//! boundary values at `z = k^2 - i0` (and vice versa), which is the pairing
//! under which the boundary condition at the origin holds.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::{
    lambda_limit_pm, pow_nu, radial_k, Channel, Charge4, ExtensionParam, FluxAlpha, Polar, Side,
    Spin, Spinor,
};
use crate::resolvent::{inverse_checked, single_layer_m};
use crate::specfun::{bessel_j_sequence, hankel1, sin_pi};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn check_k(op: &'static str, k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { op, what: "k", value: k })
    }
}

fn spinor_in(spin: Spin, v: Complex64) -> Spinor {
    match spin {
        Spin::Up => [v, ZERO],
        Spin::Down => [ZERO, v],
    }
}

/// Incidence angle `omega_+ = omega`, `omega_- = omega + pi`.
pub fn incidence_angle(omega: f64, sign: Side) -> f64 {
    match sign {
        Side::Plus => omega,
        Side::Minus => omega + PI,
    }
}

/// Unperturbed plane wave `e^{i k x . omega} / (2 pi)` in spin `spin`.
pub fn plane_wave(k: f64, omega: f64, spin: Spin, x: Polar) -> Spinor {
    let phase = k * x.r * (x.theta - omega).cos();
    spinor_in(spin, Complex64::from_polar(1.0 / (2.0 * PI), phase))
}

/// Incident part of the Aharonov-Bohm eigenfunctions: the plane wave times
/// the long-range gauge phase `e^{-i alpha phi}`, `phi = theta - omega_+-`
/// reduced to `(-pi, pi]`. The far field of `phi^{Theta,+-}` minus this wave
/// is `f^{Theta,+-} r^{-1/2} e^{-+ikr}`; subtracting the bare plane wave
/// instead leaves an `O(1)` remainder.
pub fn incident_wave(alpha: &FluxAlpha, k: f64, omega: f64, sign: Side, spin: Spin, x: Polar) -> Spinor {
    let mut phi = (x.theta - incidence_angle(omega, sign)).rem_euclid(2.0 * PI);
    if phi > PI {
        phi -= 2.0 * PI;
    }
    let g = Complex64::from_polar(1.0, -alpha.alpha() * phi);
    let p = plane_wave(k, omega, spin, x);
    [p[0] * g, p[1] * g]
}

fn default_terms(kr: f64) -> usize {
    (kr + 30.0 + 6.0 * kr.cbrt()).ceil() as usize
}

/// Partial-wave form `(1/2pi) sum_l e^{i l (theta - omega) + i pi |l|/2} J_|l|(kr)`,
/// `|l| <= lmax`, used to cross-check [`plane_wave`].
pub fn plane_wave_partial(k: f64, omega: f64, x: Polar, lmax: usize) -> Result<Complex64> {
    let j = bessel_j_sequence(0.0, k * x.r, lmax + 1)?;
    let mut s = ZERO;
    for (n, jn) in j.iter().enumerate() {
        let l = n as f64;
        let p = Complex64::from_polar(*jn, l * (x.theta - omega) + PI * l / 2.0);
        let q = Complex64::from_polar(*jn, -l * (x.theta - omega) + PI * l / 2.0);
        s += if n == 0 { p } else { p + q };
    }
    Ok(s / (2.0 * PI))
}

/// Friedrichs generalised eigenfunction
/// `(1/2pi) sum_l e^{i l (theta - omega_+-) +- i pi nu/2} J_nu(kr)`.
pub fn friedrichs_eigenfunction(
    alpha: &FluxAlpha,
    k: f64,
    omega: f64,
    sign: Side,
    spin: Spin,
    x: Polar,
    tol: f64,
) -> Result<Spinor> {
    const OP: &str = "friedrichs_eigenfunction";
    check_k(OP, k)?;
    if !(x.r >= 0.0 && x.r.is_finite()) {
        return Err(Error::NonFinite { op: OP, what: "r" });
    }
    let s = sign.sign();
    let w = incidence_angle(omega, sign);
    let kr = k * x.r;
    let a = alpha.alpha();
    let mut count = default_terms(kr);
    loop {
        let jp = bessel_j_sequence(a, kr, count)?;
        let jm = bessel_j_sequence(1.0 - a, kr, count)?;
        let tail = jp[count - 1].abs().max(jm[count - 1].abs());
        if tail <= tol * 1e-3 || kr == 0.0 {
            let mut sum = ZERO;
            for n in 0..count {
                let lp = n as f64;
                let nup = lp + a;
                sum += Complex64::from_polar(jp[n], lp * (x.theta - w) + s * PI * nup / 2.0);
                let lm = -1.0 - n as f64;
                let num = n as f64 + 1.0 - a;
                sum += Complex64::from_polar(jm[n], lm * (x.theta - w) + s * PI * num / 2.0);
            }
            return Ok(spinor_in(spin, sum / (2.0 * PI)));
        }
        count *= 2;
        if count > 1_000_000 {
            return Err(Error::NoConvergence { op: OP, iterations: count });
        }
    }
}

/// Trace of the Friedrichs eigenfunction on the four channels:
/// `(+- i k)^nu e^{-i l omega_+-} / sqrt(2 pi)` in the incident spin.
pub fn tau_trace(alpha: &FluxAlpha, k: f64, omega: f64, sign: Side, spin: Spin) -> Result<Charge4> {
    check_k("tau_trace", k)?;
    let m = Complex64::new(0.0, sign.sign() * k);
    let w = incidence_angle(omega, sign);
    let mut t = Charge4::zeros();
    for ch in Channel::ALL {
        if ch.spin != spin {
            continue;
        }
        let nu = alpha.order(ch.l);
        t[ch.index()] = pow_nu(m, nu) * Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), -(ch.l as f64) * w);
    }
    Ok(t)
}

/// Boundary value `G(lambda +- i0) q`, evaluated as the limit of
/// `m^nu K_nu(m r)` at `m = e^{-+ i pi/2} sqrt(lambda)`.
pub fn single_layer_limit(
    alpha: &FluxAlpha,
    lambda: f64,
    side: Side,
    q: &Charge4,
    x: Polar,
) -> Result<Spinor> {
    const OP: &str = "single_layer_limit";
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositive { op: OP, what: "lambda", value: lambda });
    }
    if !(x.r > 0.0) {
        return Err(Error::NonPositive { op: OP, what: "r", value: x.r });
    }
    single_layer_m(alpha, side.m(lambda), q, x)
}

/// Same boundary value through Hankel functions:
/// `(i pi/2) lambda^{nu/2} H^(1)_nu(sqrt(lambda) r)` on the `+` side and
/// `-(i pi/2) lambda^{nu/2} H^(2)_nu(sqrt(lambda) r)` on the `-` side.
pub fn single_layer_limit_hankel(
    alpha: &FluxAlpha,
    lambda: f64,
    side: Side,
    q: &Charge4,
    x: Polar,
) -> Result<Spinor> {
    let kk = lambda.sqrt();
    let mut out = [ZERO; 2];
    for ch in Channel::ALL {
        let nu = alpha.order(ch.l);
        let h = hankel1(nu, kk * x.r)?;
        let h = match side {
            Side::Plus => I * (PI / 2.0) * h,
            Side::Minus => -I * (PI / 2.0) * h.conj(),
        };
        let v = h * kk.powf(nu) * Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), ch.l as f64 * x.theta);
        out[ch.spin.index()] += q[ch.index()] * v;
    }
    Ok(out)
}

/// Charges `[Lambda(k^2 -+ i0) + Theta]^{-1} tau` of the extension
/// correction to the `+-` eigenfunction. `None` for Friedrichs.
pub fn correction_charges(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    k: f64,
    omega: f64,
    sign: Side,
    spin: Spin,
) -> Result<Option<Charge4>> {
    const OP: &str = "theta_eigenfunction";
    let theta = match ext.theta(alpha) {
        None => return Ok(None),
        Some(t) => t,
    };
    let tau = tau_trace(alpha, k, omega, sign, spin)?;
    let a = lambda_limit_pm(alpha, k * k, sign.opposite())? + theta.matrix();
    let inv = inverse_checked(OP, &a)?;
    Ok(Some(inv * tau))
}

/// Generalised eigenfunction of `H^Theta`:
/// `phi^F + G(k^2 -+ i0) [Lambda(k^2 -+ i0) + Theta]^{-1} tau phi^F`.
#[allow(clippy::too_many_arguments)]
pub fn theta_eigenfunction(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    k: f64,
    omega: f64,
    sign: Side,
    spin: Spin,
    x: Polar,
    tol: f64,
) -> Result<Spinor> {
    let mut f = friedrichs_eigenfunction(alpha, k, omega, sign, spin, x, tol)?;
    if let Some(q) = correction_charges(alpha, ext, k, omega, sign, spin)? {
        if !(x.r > 0.0) {
            return Err(Error::NonPositive { op: "theta_eigenfunction", what: "r", value: x.r });
        }
        let g = single_layer_m(alpha, sign.opposite().m(k * k), &q, x)?;
        f[0] += g[0];
        f[1] += g[1];
    }
    Ok(f)
}

fn reduce_angle(t: f64) -> f64 {
    let r = t.rem_euclid(2.0 * PI);
    r.min(2.0 * PI - r)
}

/// Far-field amplitude of the Friedrichs eigenfunction, the coefficient of
/// `r^{-1/2} e^{-+ikr}` in `phi^{F,+-} - incident_wave` (Abel-summed):
/// `e^{+- i pi/4} / ((2pi)^{3/2} sqrt k) * (+- 2i sin pi alpha) / (1 + e^{i(theta - omega_+-)})`.
pub fn friedrichs_far_field(alpha: &FluxAlpha, k: f64, omega: f64, sign: Side, theta: f64) -> Result<Complex64> {
    const OP: &str = "friedrichs_far_field";
    check_k(OP, k)?;
    let s = sign.sign();
    let d = theta - incidence_angle(omega, sign);
    if reduce_angle(d - PI) < 1e-12 {
        return Err(Error::ForwardDirection { op: OP, theta });
    }
    let pref = Complex64::from_polar(1.0 / ((2.0 * PI).powf(1.5) * k.sqrt()), s * PI / 4.0);
    let sum = Complex64::new(0.0, 2.0 * s * sin_pi(alpha.alpha())) / (1.0 + Complex64::from_polar(1.0, d));
    Ok(pref * sum)
}

/// Extension part of the far-field amplitude for incident spin `s_in` and
/// outgoing component `s_out`. Zero for Friedrichs.
#[allow(clippy::too_many_arguments)]
pub fn extension_far_field(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    k: f64,
    omega: f64,
    sign: Side,
    s_in: Spin,
    s_out: Spin,
    theta: f64,
) -> Result<Complex64> {
    let q = match correction_charges(alpha, ext, k, omega, sign, s_in)? {
        None => return Ok(ZERO),
        Some(q) => q,
    };
    let m = sign.opposite().m(k * k);
    let decay = (PI / (2.0 * m)).sqrt();
    let mut sum = ZERO;
    for ch in Channel::ALL {
        if ch.spin != s_out {
            continue;
        }
        let nu = alpha.order(ch.l);
        sum += q[ch.index()] * pow_nu(m, nu) * Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), ch.l as f64 * theta);
    }
    Ok(decay * sum)
}

/// Far-field amplitude `f^{Theta,+-}_{s_in s_out}(theta)`: the coefficient
/// of `r^{-1/2} e^{-+ikr}` in `phi^{Theta,+-} - incident_wave`.
#[allow(clippy::too_many_arguments)]
pub fn theta_amplitude(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    k: f64,
    omega: f64,
    sign: Side,
    s_in: Spin,
    s_out: Spin,
    theta: f64,
) -> Result<Complex64> {
    let mut f = extension_far_field(alpha, ext, k, omega, sign, s_in, s_out, theta)?;
    if s_in == s_out {
        f += friedrichs_far_field(alpha, k, omega, sign, theta)?;
    }
    Ok(f)
}

/// Friedrichs scattering amplitude off the forward direction,
/// `(2pi / (i sqrt lambda))^{1/2} (i/pi) sin(pi alpha) / (e^{i delta} - 1)`.
pub fn friedrichs_amplitude(alpha: &FluxAlpha, lambda: f64, delta: f64) -> Result<Complex64> {
    const OP: &str = "friedrichs_amplitude";
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositive { op: OP, what: "lambda", value: lambda });
    }
    if reduce_angle(delta) < 1e-12 {
        return Err(Error::ForwardDirection { op: OP, theta: delta });
    }
    let pref = (Complex64::new(2.0 * PI, 0.0) / (I * lambda.sqrt())).sqrt();
    Ok(pref * I / PI * sin_pi(alpha.alpha()) / (Complex64::from_polar(1.0, delta) - 1.0))
}

/// Aharonov-Bohm cross section `sin^2(pi alpha) / (2 pi sqrt(lambda) sin^2(delta/2))`.
pub fn friedrichs_cross_section(alpha: &FluxAlpha, lambda: f64, delta: f64) -> Result<f64> {
    const OP: &str = "friedrichs_cross_section";
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositive { op: OP, what: "lambda", value: lambda });
    }
    if reduce_angle(delta) < 1e-12 {
        return Err(Error::ForwardDirection { op: OP, theta: delta });
    }
    let s = sin_pi(alpha.alpha());
    let h = (0.5 * delta).sin();
    Ok(s * s / (2.0 * PI * lambda.sqrt() * h * h))
}

/// Partial-wave S-matrix phases `e^{i pi (l - |l + alpha|)}` for `|l| <= lmax`.
pub fn s_matrix_phases(alpha: &FluxAlpha, lmax: i64) -> Vec<(i64, Complex64)> {
    (-lmax..=lmax)
        .map(|l| {
            let p = l as f64 - alpha.order(l);
            (l, Complex64::new(crate::specfun::cos_pi(p), sin_pi(p)))
        })
        .collect()
}

/// Abel-regularised partial-wave amplitude
/// `(2pi/(i sqrt lambda))^{1/2} (1/2pi) sum_l e^{-eps|l|} (S_l - 1) e^{i l delta}`.
pub fn abel_partial_wave_amplitude(alpha: &FluxAlpha, lambda: f64, delta: f64, eps: f64) -> Result<Complex64> {
    const OP: &str = "abel_partial_wave_amplitude";
    if !(eps > 0.0) {
        return Err(Error::NonPositive { op: OP, what: "eps", value: eps });
    }
    let lmax = (40.0 / eps).ceil() as i64;
    let mut s = ZERO;
    for (l, sl) in s_matrix_phases(alpha, lmax) {
        let w = (-eps * l.abs() as f64).exp();
        s += w * (sl - 1.0) * Complex64::from_polar(1.0, l as f64 * delta);
    }
    let pref = (Complex64::new(2.0 * PI, 0.0) / (I * lambda.sqrt())).sqrt();
    Ok(pref * s / (2.0 * PI))
}

/// Polynomial extrapolation to `eps -> 0` of the Abel-regularised sums.
pub fn abel_extrapolated_amplitude(alpha: &FluxAlpha, lambda: f64, delta: f64, eps: &[f64]) -> Result<Complex64> {
    let vals: Vec<Complex64> = eps
        .iter()
        .map(|&e| abel_partial_wave_amplitude(alpha, lambda, delta, e))
        .collect::<Result<_>>()?;
    Ok(extrapolate_to_zero(eps, &vals))
}

/// Value at zero of the interpolating polynomial through `(x_i, y_i)`.
pub fn extrapolate_to_zero(x: &[f64], y: &[Complex64]) -> Complex64 {
    let mut acc = ZERO;
    for i in 0..x.len() {
        let mut w = 1.0;
        for j in 0..x.len() {
            if i != j {
                w *= x[j] / (x[j] - x[i]);
            }
        }
        acc += y[i] * w;
    }
    acc
}

/// Scattering amplitude in the `(2pi/(i k))^{1/2}` normalisation for
/// incidence along `omega = 0`, scattering angle `omega_out`, and spins
/// `s_in -> s_out`, with its differential cross section `|f|^2`.
pub fn scattering_amplitude(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    lambda: f64,
    omega_out: f64,
    s_in: Spin,
    s_out: Spin,
) -> Result<(Complex64, f64)> {
    let k = lambda.sqrt();
    let mut f = 2.0 * PI * extension_far_field(alpha, ext, k, 0.0, Side::Minus, s_in, s_out, omega_out)?;
    if s_in == s_out {
        f += friedrichs_amplitude(alpha, lambda, omega_out)?;
    }
    Ok((f, f.norm_sqr()))
}

/// Radial factor used by tests for the extension correction at `m`.
pub fn correction_radial(nu: f64, m: Complex64, r: f64) -> Result<Complex64> {
    radial_k(nu, m, r)
}
