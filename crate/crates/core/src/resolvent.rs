//! Resolvent kernels, the single-layer map, the negative point spectrum and
//! zero-energy resonances of a self-adjoint extension.

use std::f64::consts::PI;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::{
    lambda_at_zero, lambda_weyl, radial_k, weyl_from_m, Channel, Charge4, ExtensionParam,
    FluxAlpha, Herm4, Mat4, Polar, Side, SpectralPoint, Spinor,
};
use crate::specfun::{gamma, ik_product_sequence};

/// 2x2 spin block of an integral kernel, indexed `[s][s']`.
pub type KernelBlock = [[Complex64; 2]; 2];

const MAX_TERMS: usize = 200_000;
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn angular(l: i64, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), l as f64 * theta)
}

/// Sum over one family of orders `mu + n` of `I K e^{i l(n) dtheta}`.
fn family_sum(
    mu: f64,
    m: Complex64,
    rs: f64,
    rl: f64,
    dtheta: f64,
    l_of: impl Fn(usize) -> i64,
    tol: f64,
) -> Result<Complex64> {
    const OP: &str = "friedrichs_kernel";
    let q = rs / rl;
    if q >= 1.0 {
        return Err(Error::NoConvergence {
            op: OP,
            iterations: 0,
        });
    }
    let decay = (tol * (1.0 - q) * 1e-3).ln() / q.ln();
    let mut count = ((m.norm() * rl) + decay.max(0.0) + 16.0).ceil() as usize;
    loop {
        if count > MAX_TERMS {
            return Err(Error::NoConvergence {
                op: OP,
                iterations: MAX_TERMS,
            });
        }
        let seq = ik_product_sequence(mu, m * rs, m * rl, count)?;
        let mut sum = ZERO;
        let mut mag = 0.0;
        for (n, p) in seq.iter().enumerate() {
            sum += p * Complex64::from_polar(1.0, l_of(n) as f64 * dtheta);
            mag += p.norm();
        }
        let last = seq.last().map(|p| p.norm()).unwrap_or(0.0);
        let tail = last * q / (1.0 - q);
        if tail <= tol * mag.max(f64::MIN_POSITIVE) {
            return Ok(sum);
        }
        count *= 2;
    }
}

fn check_points(op: &'static str, x: Polar, y: Polar) -> Result<()> {
    for p in [x, y] {
        if !(p.r.is_finite() && p.theta.is_finite() && p.r >= 0.0) {
            return Err(Error::NonFinite { op, what: "point" });
        }
    }
    let d = (x.theta - y.theta).rem_euclid(2.0 * PI);
    let same_angle = d.min(2.0 * PI - d) < 1e-14;
    if x.r == y.r && (same_angle || x.r == 0.0) {
        return Err(Error::CoincidentPoints { op });
    }
    Ok(())
}

/// Kernel of the Friedrichs resolvent `(H_F - z)^{-1}`:
/// `sum_l I_nu(m r_<) K_nu(m r_>) e^{i l (theta - theta')} / (2 pi)`,
/// diagonal in spin, with `m = -i sqrt z` and `nu = |l + alpha|`.
///
/// The angular series is truncated once the geometric tail estimate falls
/// below `tol` relative to the absolute series. Equal radii are not
/// supported (the series then converges only conditionally).
pub fn friedrichs_kernel(
    alpha: &FluxAlpha,
    z: &SpectralPoint,
    x: Polar,
    y: Polar,
    tol: f64,
) -> Result<KernelBlock> {
    const OP: &str = "friedrichs_kernel";
    check_points(OP, x, y)?;
    let (rs, rl) = if x.r <= y.r { (x.r, y.r) } else { (y.r, x.r) };
    if rs == 0.0 {
        return Ok([[ZERO; 2]; 2]);
    }
    if rs == rl {
        return Err(Error::Invalid {
            op: OP,
            message: "equal radii: angular series does not converge absolutely".into(),
        });
    }
    let m = z.m();
    let dt = x.theta - y.theta;
    let a = alpha.alpha();
    let pos = family_sum(a, m, rs, rl, dt, |n| n as i64, tol)?;
    let neg = family_sum(1.0 - a, m, rs, rl, dt, |n| -1 - n as i64, tol)?;
    let v = (pos + neg) / (2.0 * PI);
    Ok([[v, ZERO], [ZERO, v]])
}

/// The single angular term `l` of [`friedrichs_kernel`] (spin-diagonal).
pub fn friedrichs_kernel_term(
    alpha: &FluxAlpha,
    z: &SpectralPoint,
    l: i64,
    x: Polar,
    y: Polar,
) -> Result<Complex64> {
    let (rs, rl) = if x.r <= y.r { (x.r, y.r) } else { (y.r, x.r) };
    let m = z.m();
    let nu = alpha.order(l);
    let p = ik_product_sequence(nu, m * rs, m * rl, 1)?[0];
    Ok(p * Complex64::from_polar(1.0, l as f64 * (x.theta - y.theta)) / (2.0 * PI))
}

/// Single-layer map `G(m) q = sum_a q_a m^{nu} K_nu(m r) e^{i l theta}/sqrt(2 pi)`
/// for an arbitrary `m` with `Re m >= 0`.
pub(crate) fn single_layer_m(alpha: &FluxAlpha, m: Complex64, q: &Charge4, x: Polar) -> Result<Spinor> {
    let mut out = [ZERO; 2];
    for ch in Channel::ALL {
        let c = q[ch.index()];
        if c == ZERO {
            continue;
        }
        let v = radial_k(alpha.order(ch.l), m, x.r)? * angular(ch.l, x.theta);
        out[ch.spin.index()] += c * v;
    }
    Ok(out)
}

/// `G(z) q`, the defect solution of `(H^* - z) u = 0` with charges `q`.
pub fn single_layer(alpha: &FluxAlpha, z: &SpectralPoint, q: &Charge4, x: Polar) -> Result<Spinor> {
    if !(x.r > 0.0 && x.r.is_finite()) {
        return Err(Error::NonPositive { op: "single_layer", what: "r", value: x.r });
    }
    single_layer_m(alpha, z.m(), q, x)
}

/// Channel values of `G(m)` at `x`: the spin-`s` component of the
/// single-layer potential of each unit charge.
fn channel_values(alpha: &FluxAlpha, m: Complex64, x: Polar, conj_phase: bool) -> Result<[Complex64; 4]> {
    let mut v = [ZERO; 4];
    for ch in Channel::ALL {
        let th = if conj_phase { -x.theta } else { x.theta };
        v[ch.index()] = radial_k(alpha.order(ch.l), m, x.r)? * angular(ch.l, th);
    }
    Ok(v)
}

/// Smallest singular value of a 4x4 complex matrix.
pub fn sigma_min(m: &Mat4) -> f64 {
    m.svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// `[Lambda + Theta]^{-1}`, failing when the matrix is numerically singular.
pub(crate) fn inverse_checked(op: &'static str, a: &Mat4) -> Result<Mat4> {
    let s = sigma_min(a);
    let scale = a.norm().max(1.0);
    if !(s > 1e-13 * scale) {
        return Err(Error::Singular { op, sigma: s });
    }
    a.try_inverse().ok_or(Error::Singular { op, sigma: s })
}

/// Extension part `G(z) [Lambda(z) + Theta]^{-1} G(conj z)^*` of the
/// resolvent kernel.
pub fn krein_correction(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    z: &SpectralPoint,
    x: Polar,
    y: Polar,
) -> Result<KernelBlock> {
    const OP: &str = "krein_kernel";
    let theta = match ext.theta(alpha) {
        None => return Ok([[ZERO; 2]; 2]),
        Some(t) => t,
    };
    if !(x.r > 0.0 && y.r > 0.0) {
        return Err(Error::NonPositive { op: OP, what: "r", value: x.r.min(y.r) });
    }
    let a = lambda_weyl(alpha, z) + theta.matrix();
    let inv = inverse_checked(OP, &a)?;
    let m = z.m();
    let gx = channel_values(alpha, m, x, false)?;
    let gy = channel_values(alpha, m, y, true)?;
    let mut out = [[ZERO; 2]; 2];
    for ca in Channel::ALL {
        for cb in Channel::ALL {
            let (i, j) = (ca.index(), cb.index());
            out[ca.spin.index()][cb.spin.index()] += gx[i] * inv[(i, j)] * gy[j];
        }
    }
    Ok(out)
}

/// Full kernel of `(H^Theta - z)^{-1}` by the Krein formula.
pub fn krein_kernel(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    z: &SpectralPoint,
    x: Polar,
    y: Polar,
    tol: f64,
) -> Result<KernelBlock> {
    let mut k = friedrichs_kernel(alpha, z, x, y, tol)?;
    let c = krein_correction(alpha, ext, z, x, y)?;
    for s in 0..2 {
        for t in 0..2 {
            k[s][t] += c[s][t];
        }
    }
    Ok(k)
}

/// One negative eigenvalue `-mu` with its multiplicity and an orthonormal
/// basis of `ker[Lambda(-mu) + Theta]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRecord {
    pub mu: f64,
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub kernel_basis: Vec<Charge4>,
}

/// Scan parameters for [`point_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub mu_min: f64,
    pub mu_max: f64,
    pub points_per_decade: usize,
    /// Roots closer than this (relative) are merged into one eigenvalue.
    pub merge_rel: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            mu_min: 1e-8,
            mu_max: 1e8,
            points_per_decade: 400,
            merge_rel: 1e-8,
        }
    }
}

fn sorted_eigen(h: &Mat4) -> (Vector4<f64>, Matrix4<Complex64>) {
    let SymmetricEigen {
        eigenvalues,
        eigenvectors,
    } = h.symmetric_eigen();
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by(|&a, &b| eigenvalues[a].partial_cmp(&eigenvalues[b]).unwrap());
    let mut vals = Vector4::zeros();
    let mut vecs = Matrix4::zeros();
    for (k, &i) in idx.iter().enumerate() {
        vals[k] = eigenvalues[i];
        vecs.set_column(k, &eigenvectors.column(i));
    }
    (vals, vecs)
}

/// `Lambda(-mu) + Theta`, Hermitian for `mu > 0`.
pub fn bound_state_matrix(alpha: &FluxAlpha, theta: &Herm4, mu: f64) -> Mat4 {
    weyl_from_m(alpha, Complex64::new(mu.sqrt(), 0.0)) + theta.matrix()
}

/// Negative eigenvalues `-mu`, `mu` in `[mu_min, mu_max]`, as the roots of
/// `det[Lambda(-mu) + Theta] = 0`.
///
/// `Lambda(-mu)` is increasing in `mu`, so each ordered eigenvalue branch of
/// `Lambda(-mu) + Theta` crosses zero at most once; crossings are bracketed
/// on a logarithmic grid and bisected to machine precision.
pub fn point_spectrum(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    opts: &SpectrumOptions,
) -> Result<Vec<SpectrumRecord>> {
    const OP: &str = "point_spectrum";
    if !(opts.mu_min > 0.0 && opts.mu_max > opts.mu_min && opts.mu_max.is_finite()) {
        return Err(Error::InvalidRange { op: OP, lo: opts.mu_min, hi: opts.mu_max });
    }
    if opts.points_per_decade == 0 {
        return Err(Error::Invalid { op: OP, message: "points_per_decade must be positive".into() });
    }
    let theta = match ext.theta(alpha) {
        None => return Ok(Vec::new()),
        Some(t) => t,
    };
    let eig = |mu: f64| sorted_eigen(&bound_state_matrix(alpha, &theta, mu)).0;
    let l0 = opts.mu_min.log10();
    let l1 = opts.mu_max.log10();
    let n = ((l1 - l0) * opts.points_per_decade as f64).ceil() as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|i| {
            if i == n {
                opts.mu_max
            } else {
                10f64.powf(l0 + i as f64 / opts.points_per_decade as f64)
            }
        })
        .collect();
    let values: Vec<Vector4<f64>> = grid.iter().map(|&mu| eig(mu)).collect();
    let mut roots: Vec<f64> = Vec::new();
    for k in 0..4 {
        for i in 0..n {
            let (lo_v, hi_v) = (values[i][k], values[i + 1][k]);
            if !(lo_v < 0.0 && hi_v >= 0.0) {
                continue;
            }
            let (mut lo, mut hi) = (grid[i], grid[i + 1]);
            if hi_v == 0.0 {
                roots.push(hi);
                continue;
            }
            for _ in 0..200 {
                let mid = (lo * hi).sqrt();
                if mid <= lo || mid >= hi {
                    break;
                }
                let v = eig(mid)[k];
                if v == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if v < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for r in roots {
        match clusters.last_mut() {
            Some(c) if (r - c[0]).abs() <= opts.merge_rel * r => c.push(r),
            _ => clusters.push(vec![r]),
        }
    }
    let mut out = Vec::with_capacity(clusters.len());
    for c in clusters {
        let mu = c.iter().sum::<f64>() / c.len() as f64;
        let mult = c.len();
        let h = bound_state_matrix(alpha, &theta, mu);
        let (vals, vecs) = sorted_eigen(&h);
        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&a, &b| vals[a].abs().partial_cmp(&vals[b].abs()).unwrap());
        let basis = order[..mult]
            .iter()
            .map(|&k| Charge4::from(vecs.column(k)))
            .collect();
        out.push(SpectrumRecord {
            mu,
            eigenvalue: -mu,
            multiplicity: mult,
            kernel_basis: basis,
        });
    }
    Ok(out)
}

/// Bound state `G(-mu) q` for `q` in `ker[Lambda(-mu) + Theta]`.
pub fn bound_state(
    alpha: &FluxAlpha,
    ext: &ExtensionParam,
    mu: f64,
    q: &Charge4,
    x: Polar,
) -> Result<Spinor> {
    const OP: &str = "bound_state";
    let theta = ext.theta(alpha).ok_or(Error::Invalid {
        op: OP,
        message: "the Friedrichs extension has no bound states".into(),
    })?;
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::NonPositive { op: OP, what: "mu", value: mu });
    }
    let h = bound_state_matrix(alpha, &theta, mu);
    let residual = (h * q).norm();
    let scale = q.norm() * h.norm().max(1.0);
    if !(residual <= 1e-8 * scale) {
        return Err(Error::NotInKernel { op: OP, residual: residual / q.norm().max(f64::MIN_POSITIVE) });
    }
    if !(x.r > 0.0) {
        return Err(Error::NonPositive { op: OP, what: "r", value: x.r });
    }
    single_layer_m(alpha, Complex64::new(mu.sqrt(), 0.0), q, x)
}

/// Zero-energy resonances: charges in `ker[Lambda(0) + Theta]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroResonance {
    pub alpha: FluxAlpha,
    pub charges: Vec<Charge4>,
}

impl ZeroResonance {
    pub fn dimension(&self) -> usize {
        self.charges.len()
    }

    /// Profile `sum_a q_a 2^{nu-1} Gamma(nu) r^{-nu} e^{i l theta}/sqrt(2 pi)`
    /// of the resonance with charges `q`.
    pub fn profile(&self, q: &Charge4, x: Polar) -> Result<Spinor> {
        resonance_profile(&self.alpha, q, x)
    }
}

pub fn resonance_profile(alpha: &FluxAlpha, q: &Charge4, x: Polar) -> Result<Spinor> {
    if !(x.r > 0.0) {
        return Err(Error::NonPositive { op: "resonance_profile", what: "r", value: x.r });
    }
    let mut out = [ZERO; 2];
    for ch in Channel::ALL {
        let nu = alpha.order(ch.l);
        let radial = 2f64.powf(nu - 1.0) * gamma(nu)? * x.r.powf(-nu);
        out[ch.spin.index()] += q[ch.index()] * radial * angular(ch.l, x.theta);
    }
    Ok(out)
}

pub fn zero_resonance(alpha: &FluxAlpha, ext: &ExtensionParam) -> ZeroResonance {
    let charges = match ext.theta(alpha) {
        None => Vec::new(),
        Some(theta) => {
            let h = lambda_at_zero(alpha) + theta.matrix();
            let (vals, vecs) = sorted_eigen(&h);
            let scale = theta.matrix().norm().max(1.0);
            (0..4)
                .filter(|&k| vals[k].abs() <= 1e-10 * scale)
                .map(|k| Charge4::from(vecs.column(k)))
                .collect()
        }
    };
    ZeroResonance {
        alpha: *alpha,
        charges,
    }
}

/// A positive energy at which `Lambda(lambda +- i0) + Theta` is singular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalPoint {
    pub lambda: f64,
    pub side: Side,
    pub sigma_min: f64,
}

/// Smallest singular value of `Lambda(lambda +- i0) + Theta`.
pub fn boundary_sigma_min(alpha: &FluxAlpha, theta: &Herm4, lambda: f64, side: Side) -> Result<f64> {
    let a = crate::extension::lambda_limit_pm(alpha, lambda, side)? + theta.matrix();
    Ok(sigma_min(&a))
}

/// Lower bound `(pi/2) min(lambda^alpha, lambda^{1-alpha})` on
/// [`boundary_sigma_min`], valid for every Hermitian `Theta`.
pub fn sigma_floor(alpha: &FluxAlpha, lambda: f64) -> f64 {
    let a = alpha.alpha();
    0.5 * PI * lambda.powf(a).min(lambda.powf(1.0 - a))
}

/// Scan `[lambda_min, lambda_max]` on a log grid for positive energies where
/// the boundary matrices become singular (`sigma_min < 1e-10`).
pub fn exceptional_points(
    alpha: &FluxAlpha,
    theta: &Herm4,
    lambda_min: f64,
    lambda_max: f64,
    points: usize,
) -> Result<Vec<ExceptionalPoint>> {
    const OP: &str = "exceptional_points";
    if !(lambda_min > 0.0 && lambda_max > lambda_min && points >= 2) {
        return Err(Error::InvalidRange { op: OP, lo: lambda_min, hi: lambda_max });
    }
    let (l0, l1) = (lambda_min.ln(), lambda_max.ln());
    let grid: Vec<f64> = (0..points)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp())
        .collect();
    let mut out = Vec::new();
    for side in [Side::Plus, Side::Minus] {
        let s: Vec<f64> = grid
            .iter()
            .map(|&l| boundary_sigma_min(alpha, theta, l, side))
            .collect::<Result<_>>()?;
        for i in 0..points {
            let left = if i > 0 { s[i - 1] } else { f64::INFINITY };
            let right = if i + 1 < points { s[i + 1] } else { f64::INFINITY };
            if s[i] <= left && s[i] <= right && s[i] < 1e-10 {
                out.push(ExceptionalPoint { lambda: grid[i], side, sigma_min: s[i] });
            }
        }
    }
    Ok(out)
}

/// Convenience: unit charge in one channel.
pub fn unit_charge(ch: Channel) -> Charge4 {
    let mut q = Charge4::zeros();
    q[ch.index()] = Complex64::new(1.0, 0.0);
    q
}
