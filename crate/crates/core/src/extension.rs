//! Flux reduction, the four singular channels, and the Hermitian 4x4
//! parametrisation of the self-adjoint extensions.
//!
//! Channels are ordered `(up,0), (up,-1), (down,0), (down,-1)`; every 4x4
//! matrix and charge vector in the crate uses this flat order.

use std::f64::consts::PI;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_k, gamma, sin_pi, BesselOrder};

pub type Mat4 = Matrix4<Complex64>;
pub type Charge4 = Vector4<Complex64>;
/// Two-component spinor value `(up, down)`.
pub type Spinor = [Complex64; 2];

const ALPHA_GUARD: f64 = 1e-6;
const HERMITIAN_TOL: f64 = 1e-12;

/// Polar coordinates of a point in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub r: f64,
    pub theta: f64,
}

impl Polar {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta }
    }
}

/// Flux reduced to the open unit interval, together with the winding that
/// was removed by the gauge transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxAlpha {
    alpha: f64,
    winding: i64,
}

impl FluxAlpha {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    /// Order `|l + alpha|` of angular mode `l`.
    pub fn order(&self, l: i64) -> f64 {
        (l as f64 + self.alpha).abs()
    }

    pub fn sin_pi_alpha(&self) -> f64 {
        sin_pi(self.alpha)
    }

    /// `pi / (2 sin(pi alpha))`, the constant in front of the Weyl function.
    pub fn weyl_constant(&self) -> f64 {
        PI / (2.0 * self.sin_pi_alpha())
    }
}

/// Reduce a raw flux to `alpha` in `(0, 1)`. Integer flux (within `1e-6`)
/// has no singular channels and is rejected.
pub fn reduce_flux(alpha_raw: f64) -> Result<FluxAlpha> {
    const OP: &str = "reduce_flux";
    if !alpha_raw.is_finite() {
        return Err(Error::NonFinite { op: OP, what: "alpha" });
    }
    let winding = alpha_raw.floor();
    let alpha = alpha_raw - winding;
    if alpha <= ALPHA_GUARD || alpha >= 1.0 - ALPHA_GUARD {
        return Err(Error::IntegerFlux { op: OP, alpha: alpha_raw });
    }
    Ok(FluxAlpha {
        alpha,
        winding: winding as i64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

/// One of the four singular channels `(spin, l)` with `l` in `{0, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Channel {
    pub spin: Spin,
    pub l: i64,
}

impl Channel {
    pub const ALL: [Channel; 4] = [
        Channel { spin: Spin::Up, l: 0 },
        Channel { spin: Spin::Up, l: -1 },
        Channel { spin: Spin::Down, l: 0 },
        Channel { spin: Spin::Down, l: -1 },
    ];

    pub fn new(spin: Spin, l: i64) -> Result<Self> {
        if l == 0 || l == -1 {
            Ok(Self { spin, l })
        } else {
            Err(Error::Invalid {
                op: "Channel::new",
                message: format!("angular mode {l} is not singular"),
            })
        }
    }

    pub fn index(self) -> usize {
        2 * self.spin.index() + if self.l == 0 { 0 } else { 1 }
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }
}

/// A 4x4 Hermitian matrix in the flat channel order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Herm4(Mat4);

impl Herm4 {
    /// Accepts `m` if `||m - m^*||_F <= 1e-12 max(1, ||m||_F)`; the stored
    /// matrix is the exact Hermitian part.
    pub fn new(m: Mat4) -> Result<Self> {
        let dev = (m - m.adjoint()).norm();
        let scale = m.norm().max(1.0);
        if !(dev <= HERMITIAN_TOL * scale) {
            return Err(Error::NotHermitian {
                op: "Herm4::new",
                deviation: dev,
            });
        }
        Ok(Self((m + m.adjoint()) * Complex64::new(0.5, 0.0)))
    }

    pub fn zero() -> Self {
        Self(Mat4::zeros())
    }

    pub fn scalar(c: f64) -> Self {
        Self(Mat4::identity() * Complex64::new(c, 0.0))
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = Mat4::zeros();
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = Complex64::new(*v, 0.0);
        }
        Self(m)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }
}

/// How a self-adjoint extension is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtensionParam {
    /// The Friedrichs extension (`Theta = infinity`).
    Friedrichs,
    /// Boundary matrix in the Krein parametrisation; `Theta = 0` is the
    /// Krein extension.
    Theta(Herm4),
    /// Boundary-condition matrix `beta` relating regular and singular
    /// coefficients at the origin.
    Beta(Herm4),
}

impl ExtensionParam {
    /// The Krein `Theta` of this extension, `None` for Friedrichs.
    pub fn theta(&self, alpha: &FluxAlpha) -> Option<Herm4> {
        match self {
            ExtensionParam::Friedrichs => None,
            ExtensionParam::Theta(t) => Some(*t),
            ExtensionParam::Beta(b) => Some(theta_from_beta(alpha, b)),
        }
    }
}

/// `Theta = beta + pi/(2 sin pi alpha) I`.
pub fn theta_from_beta(alpha: &FluxAlpha, beta: &Herm4) -> Herm4 {
    let c = Complex64::new(alpha.weyl_constant(), 0.0);
    Herm4(beta.0 + Mat4::identity() * c)
}

/// Inverse of [`theta_from_beta`].
pub fn beta_from_theta(alpha: &FluxAlpha, theta: &Herm4) -> Herm4 {
    let c = Complex64::new(alpha.weyl_constant(), 0.0);
    Herm4(theta.0 - Mat4::identity() * c)
}

/// A point of the resolvent set `C \ [0, inf)`, with `sqrt z` taken on the
/// branch `Im sqrt z > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    z: Complex64,
    sqrt_z: Complex64,
}

impl SpectralPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        const OP: &str = "SpectralPoint::new";
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { op: OP, what: "z" });
        }
        if z.im == 0.0 && z.re >= 0.0 {
            return Err(Error::OnSpectrum {
                op: OP,
                re: z.re,
                im: z.im,
            });
        }
        let mut s = z.sqrt();
        if s.im < 0.0 {
            s = -s;
        }
        Ok(Self { z, sqrt_z: s })
    }

    pub fn real(z: f64) -> Result<Self> {
        Self::new(Complex64::new(z, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn sqrt_z(&self) -> Complex64 {
        self.sqrt_z
    }

    /// `-i sqrt z`, which has positive real part.
    pub fn m(&self) -> Complex64 {
        let s = self.sqrt_z;
        Complex64::new(s.im, -s.re)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.z.conj()).expect("conjugate of a resolvent point")
    }
}

/// Side of the spectrum from which a boundary value is taken:
/// `Plus` is `z = lambda + i0`, `Minus` is `z = lambda - i0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }

    /// Boundary value of `-i sqrt z` at `z = lambda +- i0`: `-+ i sqrt lambda`.
    pub fn m(self, lambda: f64) -> Complex64 {
        Complex64::new(0.0, -self.sign() * lambda.sqrt())
    }
}

fn check_positive(op: &'static str, what: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { op, what, value: v })
    }
}

/// `m^{2 nu}` on the principal branch.
fn pow2nu(m: Complex64, nu: f64) -> Complex64 {
    if m.im == 0.0 && m.re > 0.0 {
        Complex64::new(m.re.powf(2.0 * nu), 0.0)
    } else {
        m.powf(2.0 * nu)
    }
}

/// Diagonal Weyl matrix `pi/(2 sin pi alpha) (m^{2 nu} - 1)` for a given
/// value of `m = -i sqrt z` (or its boundary limit).
pub fn weyl_from_m(alpha: &FluxAlpha, m: Complex64) -> Mat4 {
    let c = alpha.weyl_constant();
    let mut out = Mat4::zeros();
    for ch in Channel::ALL {
        let nu = alpha.order(ch.l);
        out[(ch.index(), ch.index())] = c * (pow2nu(m, nu) - 1.0);
    }
    out
}

/// `L(lambda) = diag(pi lambda^{2 nu} / (2 sin pi alpha))`.
pub fn l_matrix(alpha: &FluxAlpha, lambda: f64) -> Result<Mat4> {
    check_positive("l_matrix", "lambda", lambda)?;
    let c = alpha.weyl_constant();
    let mut out = Mat4::zeros();
    for ch in Channel::ALL {
        let nu = alpha.order(ch.l);
        out[(ch.index(), ch.index())] = Complex64::new(c * lambda.powf(2.0 * nu), 0.0);
    }
    Ok(out)
}

/// Weyl function `Lambda(z)`.
pub fn lambda_weyl(alpha: &FluxAlpha, z: &SpectralPoint) -> Mat4 {
    weyl_from_m(alpha, z.m())
}

/// Boundary values `Lambda(lambda +- i0)`.
pub fn lambda_limit_pm(alpha: &FluxAlpha, lambda: f64, side: Side) -> Result<Mat4> {
    check_positive("lambda_limit_pm", "lambda", lambda)?;
    Ok(weyl_from_m(alpha, side.m(lambda)))
}

/// `Lambda(0) = -pi/(2 sin pi alpha) I`.
pub fn lambda_at_zero(alpha: &FluxAlpha) -> Mat4 {
    Mat4::identity() * Complex64::new(-alpha.weyl_constant(), 0.0)
}

fn angular(l: i64, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), l as f64 * theta)
}

fn spinor_in(spin: Spin, v: Complex64) -> Spinor {
    let zero = Complex64::new(0.0, 0.0);
    match spin {
        Spin::Up => [v, zero],
        Spin::Down => [zero, v],
    }
}

/// Radial factor `m^nu K_nu(m r)` shared by the defect functions and the
/// single-layer potentials.
pub(crate) fn radial_k(nu: f64, m: Complex64, r: f64) -> Result<Complex64> {
    let k = bessel_k(BesselOrder::new(nu)?, m * r)?;
    Ok(pow_nu(m, nu) * k)
}

pub(crate) fn pow_nu(m: Complex64, nu: f64) -> Complex64 {
    if m.im == 0.0 && m.re > 0.0 {
        Complex64::new(m.re.powf(nu), 0.0)
    } else {
        m.powf(nu)
    }
}

/// Defect function `lambda^nu K_nu(lambda r) e^{i l theta} / sqrt(2 pi)` in
/// the given channel.
pub fn defect_g(alpha: &FluxAlpha, lambda: f64, ch: Channel, x: Polar) -> Result<Spinor> {
    const OP: &str = "defect_g";
    check_positive(OP, "lambda", lambda)?;
    check_positive(OP, "r", x.r)?;
    let nu = alpha.order(ch.l);
    let v = radial_k(nu, Complex64::new(lambda, 0.0), x.r)? * angular(ch.l, x.theta);
    Ok(spinor_in(ch.spin, v))
}

/// `||g||^2 = pi nu lambda^{2 nu - 2} / (2 sin pi alpha)`.
pub fn defect_norm(alpha: &FluxAlpha, lambda: f64, ch: Channel) -> Result<f64> {
    check_positive("defect_norm", "lambda", lambda)?;
    let nu = alpha.order(ch.l);
    Ok(PI * nu * lambda.powf(2.0 * nu - 2.0) / (2.0 * alpha.sin_pi_alpha()))
}

/// Leading small-`r` coefficients of the radial part of a defect function:
/// `radial ~ singular r^{-nu} + regular r^{nu} + O(r^{2-nu})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallR {
    pub nu: f64,
    pub singular: f64,
    pub regular: f64,
}

pub fn small_r_expansion(alpha: &FluxAlpha, lambda: f64, ch: Channel) -> Result<SmallR> {
    check_positive("small_r_expansion", "lambda", lambda)?;
    let nu = alpha.order(ch.l);
    Ok(SmallR {
        nu,
        singular: gamma(nu)? / 2f64.powf(1.0 - nu),
        regular: gamma(-nu)? * lambda.powf(2.0 * nu) / 2f64.powf(1.0 + nu),
    })
}

/// Normalised von Neumann defect functions spanning `ker(H^* -+ i)`:
/// `e^{-+ i pi nu/4} sqrt((4/pi) cos(pi nu/2)) K_nu(e^{-+ i pi/4} r) e^{i l theta}/sqrt(2 pi)`.
pub fn defect_g_vn(alpha: &FluxAlpha, side: Side, ch: Channel, x: Polar) -> Result<Spinor> {
    check_positive("defect_g_vn", "r", x.r)?;
    let nu = alpha.order(ch.l);
    let s = side.sign();
    let pref = Complex64::from_polar((4.0 / PI * (PI * nu / 2.0).cos()).sqrt(), -s * PI * nu / 4.0);
    let arg = Complex64::from_polar(x.r, -s * PI / 4.0);
    let k = bessel_k(BesselOrder::new(nu)?, arg)?;
    Ok(spinor_in(ch.spin, pref * k * angular(ch.l, x.theta)))
}

/// JSON description of an extension: `kind` is one of `theta`, `beta`,
/// `friedrichs`, `krein`; `re`/`im` are 4x4 row-major in flat channel order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<[[f64; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<[[f64; 4]; 4]>,
}

impl ExtensionFile {
    pub fn from_param(p: &ExtensionParam) -> Self {
        let split = |m: &Herm4| {
            let mut re = [[0.0; 4]; 4];
            let mut im = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    re[i][j] = m.0[(i, j)].re;
                    im[i][j] = m.0[(i, j)].im;
                }
            }
            (Some(re), Some(im))
        };
        match p {
            ExtensionParam::Friedrichs => Self {
                kind: "friedrichs".into(),
                re: None,
                im: None,
            },
            ExtensionParam::Theta(t) => {
                let (re, im) = split(t);
                Self {
                    kind: "theta".into(),
                    re,
                    im,
                }
            }
            ExtensionParam::Beta(b) => {
                let (re, im) = split(b);
                Self {
                    kind: "beta".into(),
                    re,
                    im,
                }
            }
        }
    }

    pub fn to_param(&self) -> Result<ExtensionParam> {
        const OP: &str = "extension";
        let matrix = || -> Result<Herm4> {
            let re = self.re.ok_or_else(|| Error::Invalid {
                op: OP,
                message: format!("kind '{}' requires a 're' matrix", self.kind),
            })?;
            let im = self.im.unwrap_or([[0.0; 4]; 4]);
            let mut m = Mat4::zeros();
            for i in 0..4 {
                for j in 0..4 {
                    if !(re[i][j].is_finite() && im[i][j].is_finite()) {
                        return Err(Error::NonFinite { op: OP, what: "matrix entry" });
                    }
                    m[(i, j)] = Complex64::new(re[i][j], im[i][j]);
                }
            }
            Herm4::new(m)
        };
        match self.kind.as_str() {
            "friedrichs" => Ok(ExtensionParam::Friedrichs),
            "krein" => Ok(ExtensionParam::Theta(Herm4::zero())),
            "theta" => Ok(ExtensionParam::Theta(matrix()?)),
            "beta" => Ok(ExtensionParam::Beta(matrix()?)),
            other => Err(Error::Invalid {
                op: OP,
                message: format!("unknown extension kind '{other}'"),
            }),
        }
    }

    pub fn parse(json: &str) -> Result<ExtensionParam> {
        let f: ExtensionFile = serde_json::from_str(json).map_err(|e| Error::Invalid {
            op: "extension",
            message: e.to_string(),
        })?;
        f.to_param()
    }
}
