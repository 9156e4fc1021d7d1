//! Helpers shared by the integration suites.
#![allow(dead_code)]

use std::f64::consts::PI;

use abpauli::extension::{Herm4, Mat4, Polar, Spinor};
use abpauli::quadrature::tanh_sinh;
use abpauli::Result;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_ab01;

pub fn rng(stream: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// Random Hermitian 4x4 with entries of size `scale`.
pub fn random_herm4(r: &mut ChaCha8Rng, scale: f64) -> Herm4 {
    let mut m = Mat4::zeros();
    for i in 0..4 {
        m[(i, i)] = Complex64::new(scale * r.gen_range(-1.0..1.0), 0.0);
        for j in (i + 1)..4 {
            let v = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)) * scale;
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    Herm4::new(m).unwrap()
}

/// Fourth-order central differences of a spinor field in `(r, theta)`.
fn d1(f: &dyn Fn(f64) -> Result<Spinor>, x: f64, h: f64) -> Result<[Complex64; 2]> {
    let (a, b, c, d) = (f(x - 2.0 * h)?, f(x - h)?, f(x + h)?, f(x + 2.0 * h)?);
    Ok([0, 1].map(|s| (a[s] - 8.0 * b[s] + 8.0 * c[s] - d[s]) / (12.0 * h)))
}

fn d2(f: &dyn Fn(f64) -> Result<Spinor>, x: f64, h: f64) -> Result<[Complex64; 2]> {
    let (a, b, m, c, d) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
    Ok([0, 1].map(|s| (-a[s] + 16.0 * b[s] - 30.0 * m[s] + 16.0 * c[s] - d[s]) / (12.0 * h * h)))
}

/// Relative residual of `-[f_rr + f_r/r + (d_theta + i alpha)^2 f / r^2] = energy f`,
/// measured against `|energy| |f| + |f_rr| + |f_r|/r`.
pub fn pauli_residual(f: &dyn Fn(Polar) -> Result<Spinor>, alpha: f64, energy: Complex64, x: Polar) -> Result<f64> {
    let h = 1e-3 * x.r.max(0.1);
    let ht = 1e-3;
    let fr = |r: f64| f(Polar::new(r, x.theta));
    let ft = |t: f64| f(Polar::new(x.r, t));
    let v = f(x)?;
    let (frr, f1) = (d2(&fr, x.r, h)?, d1(&fr, x.r, h)?);
    let (ftt, ft1) = (d2(&ft, x.theta, ht)?, d1(&ft, x.theta, ht)?);
    let ia = Complex64::new(0.0, alpha);
    let mut worst = 0.0f64;
    for s in 0..2 {
        let ang = ftt[s] + 2.0 * ia * ft1[s] + ia * ia * v[s];
        let hf = -(frr[s] + f1[s] / x.r + ang / (x.r * x.r));
        let scale = energy.norm() * v[s].norm() + frr[s].norm() + f1[s].norm() / x.r + ang.norm() / (x.r * x.r);
        if scale > 0.0 {
            worst = worst.max((hf - energy * v[s]).norm() / scale);
        }
    }
    Ok(worst)
}

/// Integral over `[0, inf)` of a function decaying like `e^{-decay r}`,
/// split into panels of width at most `width`.
pub fn half_line(f: impl Fn(f64) -> Result<Complex64>, decay: f64, width: f64, tol: f64) -> Result<Complex64> {
    let end = 45.0 / decay;
    let mut sum = tanh_sinh(&f, 0.0, width.min(end), tol)?;
    let mut a = width.min(end);
    while a < end {
        let b = (a + width).min(end);
        sum += tanh_sinh(&f, a, b, tol)?;
        a = b;
    }
    Ok(sum)
}

/// `r` rounded to the nearest multiple of `pi / k`.
pub fn snap(r: f64, k: f64) -> f64 {
    (r * k / PI).round() * PI / k
}

/// Coefficients `(A, B)` of `r^{-nu}` and `r^{nu}` in the projection of
/// spin component `spin` onto `e^{i l theta}/sqrt(2 pi)`, by angular
/// quadrature and a least-squares fit in `r` with the next even powers.
pub fn singular_regular(f: &dyn Fn(Polar) -> Result<Spinor>, nu: f64, spin: usize, l: i64) -> Result<(Complex64, Complex64)> {
    use nalgebra::{DMatrix, DVector};
    const N: usize = 64;
    let radii: Vec<f64> = (0..10).map(|i| 0.004 * (50.0f64).powf(i as f64 / 9.0)).collect();
    let exps = [-nu, nu, 2.0 - nu, 2.0 + nu, 4.0 - nu, 4.0 + nu];
    let mut a = DMatrix::<Complex64>::zeros(radii.len(), exps.len());
    let mut b = DVector::<Complex64>::zeros(radii.len());
    for (i, &r) in radii.iter().enumerate() {
        let mut p = Complex64::new(0.0, 0.0);
        for j in 0..N {
            let t = 2.0 * PI * j as f64 / N as f64;
            p += f(Polar::new(r, t))?[spin] * Complex64::from_polar(1.0, -(l as f64) * t);
        }
        // Row scaling by r^nu keeps the fit well conditioned.
        let w = r.powf(nu);
        b[i] = p * (2.0 * PI).sqrt() / N as f64 * w;
        for (k, e) in exps.iter().enumerate() {
            a[(i, k)] = Complex64::from(r.powf(*e) * w);
        }
    }
    let sol = a.svd(true, true).solve(&b, 1e-14).unwrap();
    Ok((sol[0], sol[1]))
}

/// Relative residual of the boundary condition
/// `2^nu Gamma(nu + 1) B = beta q`, `q = A / (Gamma(nu) 2^{nu - 1})`, over the
/// four channels.
pub fn boundary_condition_residual(
    f: &dyn Fn(Polar) -> Result<Spinor>,
    alpha: &abpauli::extension::FluxAlpha,
    beta: &Herm4,
) -> Result<f64> {
    use abpauli::extension::{Channel, Charge4};
    use abpauli::specfun::gamma;
    let mut q = Charge4::zeros();
    let mut lhs = Charge4::zeros();
    for ch in Channel::ALL {
        let nu = alpha.order(ch.l);
        let (a, b) = singular_regular(f, nu, ch.spin.index(), ch.l)?;
        q[ch.index()] = a / (gamma(nu)? * 2f64.powf(nu - 1.0));
        lhs[ch.index()] = b * 2f64.powf(nu) * gamma(nu + 1.0)?;
    }
    let rhs = beta.matrix() * q;
    Ok((lhs - rhs).norm() / (lhs.norm() + rhs.norm()).max(1e-300))
}
