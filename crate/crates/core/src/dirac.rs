//! Self-adjoint realisations of the Aharonov-Bohm Dirac operator: defect
//! spinors, boundary traces at the origin, domain membership, and the charge
//! conditions imposed on a Pauli domain element by `psi in D((H_D^gamma)^2)`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::{defect_g, Channel, Charge4, FluxAlpha, Mat4, Polar, Side, Spin, Spinor};
use crate::specfun::{bessel_k, gamma, BesselOrder};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const MEMBERSHIP_TOL: f64 = 1e-9;
/// Radii used for the numerical `r -> 0` limit of the traces.
pub const TRACE_RADII: [f64; 3] = [1e-3, 1e-4, 1e-5];
const ANGLES: usize = 16;

/// `xi_+-(r, theta) = (K_{1-alpha}(r) e^{-i theta}, +- K_alpha(r))`, spanning
/// `ker(H_D^* -+ i)`.
pub fn dirac_defect_xi(alpha: &FluxAlpha, side: Side, r: f64, theta: f64) -> Result<Spinor> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::NonPositive { op: "dirac_defect_xi", what: "r", value: r });
    }
    let a = alpha.alpha();
    let x = Complex64::new(r, 0.0);
    let up = bessel_k(BesselOrder::new(1.0 - a)?, x)? * Complex64::from_polar(1.0, -theta);
    let down = bessel_k(BesselOrder::new(a)?, x)? * side.sign();
    Ok([up, down])
}

/// Pauli charges of a spinor in the named Dirac convention; stored in the flat
/// channel order of [`Charge4`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracCharges {
    pub q_up0: Complex64,
    pub q_up_m1: Complex64,
    pub q_down0: Complex64,
    pub q_down_m1: Complex64,
}

impl DiracCharges {
    pub fn zero() -> Self {
        Self::from(Charge4::zeros())
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        Charge4::from(*self).norm() <= tol
    }
}

impl From<Charge4> for DiracCharges {
    fn from(q: Charge4) -> Self {
        Self { q_up0: q[0], q_up_m1: q[1], q_down0: q[2], q_down_m1: q[3] }
    }
}

impl From<DiracCharges> for Charge4 {
    fn from(q: DiracCharges) -> Self {
        Charge4::new(q.q_up0, q.q_up_m1, q.q_down0, q.q_down_m1)
    }
}

/// `psi = a xi_+ + b xi_- + sum_j q_j g_j + phi`, where `g_j` are the Pauli
/// defect functions at scale `lambda` and `phi` is a regular part. Only the
/// flag for `phi` is carried: it must vanish at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracSpinor {
    pub xi_plus: Complex64,
    pub xi_minus: Complex64,
    pub pauli: Option<(f64, DiracCharges)>,
    pub regular_vanishes: bool,
}

impl DiracSpinor {
    /// `mu (xi_+ + e^{i gamma} xi_-)`.
    pub fn gamma_family(mu: Complex64, gamma: f64) -> Self {
        Self {
            xi_plus: mu,
            xi_minus: mu * Complex64::from_polar(1.0, gamma),
            pauli: None,
            regular_vanishes: true,
        }
    }

    /// Purely regular spinor (all singular coefficients zero).
    pub fn regular() -> Self {
        Self { xi_plus: ZERO, xi_minus: ZERO, pauli: None, regular_vanishes: true }
    }

    pub fn with_pauli(lambda: f64, q: DiracCharges) -> Self {
        Self { xi_plus: ZERO, xi_minus: ZERO, pauli: Some((lambda, q)), regular_vanishes: true }
    }

    /// The singular part at `x` (the regular part is not represented).
    pub fn singular_part(&self, alpha: &FluxAlpha, x: Polar) -> Result<Spinor> {
        let p = dirac_defect_xi(alpha, Side::Plus, x.r, x.theta)?;
        let m = dirac_defect_xi(alpha, Side::Minus, x.r, x.theta)?;
        let mut out = [
            self.xi_plus * p[0] + self.xi_minus * m[0],
            self.xi_plus * p[1] + self.xi_minus * m[1],
        ];
        if let Some((lambda, q)) = self.pauli {
            let q = Charge4::from(q);
            for ch in Channel::ALL {
                if q[ch.index()] != ZERO {
                    let g = defect_g(alpha, lambda, ch, x)?;
                    out[0] += q[ch.index()] * g[0];
                    out[1] += q[ch.index()] * g[1];
                }
            }
        }
        Ok(out)
    }
}

/// The four boundary functionals: `c^s_{-alpha} = lim r^alpha <psi_s>` and
/// `c^s_{alpha-1} = lim r^{1-alpha} <e^{i theta} psi_s>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    UpMinusAlpha,
    UpAlphaMinusOne,
    DownMinusAlpha,
    DownAlphaMinusOne,
}

impl TraceKind {
    pub const ALL: [TraceKind; 4] = [
        TraceKind::UpMinusAlpha,
        TraceKind::UpAlphaMinusOne,
        TraceKind::DownMinusAlpha,
        TraceKind::DownAlphaMinusOne,
    ];

    pub fn spin(self) -> Spin {
        match self {
            TraceKind::UpMinusAlpha | TraceKind::UpAlphaMinusOne => Spin::Up,
            _ => Spin::Down,
        }
    }

    /// `l` of the Pauli channel feeding this trace: 0 for `-alpha`, -1 for
    /// `alpha - 1`.
    pub fn mode(self) -> i64 {
        match self {
            TraceKind::UpMinusAlpha | TraceKind::DownMinusAlpha => 0,
            _ => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TraceKind::UpMinusAlpha => "c_up_-alpha",
            TraceKind::UpAlphaMinusOne => "c_up_alpha-1",
            TraceKind::DownMinusAlpha => "c_down_-alpha",
            TraceKind::DownAlphaMinusOne => "c_down_alpha-1",
        }
    }
}

/// `2^{nu - 1} Gamma(nu)`, the coefficient of `r^{-nu}` in `K_nu(r)`.
fn k_leading(nu: f64) -> Result<f64> {
    Ok(2f64.powf(nu - 1.0) * gamma(nu)?)
}

/// Closed-form trace. For `psi = a xi_+ + b xi_-`:
/// `c^up_{alpha-1} = (a + b) 2^{-alpha} Gamma(1 - alpha)`,
/// `c^down_{-alpha} = (a - b) 2^{alpha - 1} Gamma(alpha)`, and the other two
/// vanish. Pauli charges add `q 2^{nu-1} Gamma(nu) / sqrt(2 pi)` from the
/// matching channel.
pub fn dirac_traces(alpha: &FluxAlpha, spinor: &DiracSpinor, which: TraceKind) -> Result<Complex64> {
    if !spinor.regular_vanishes {
        return Err(Error::NonVanishingRegularPart { op: "dirac_traces" });
    }
    let a = alpha.alpha();
    let mut c = match which {
        TraceKind::UpAlphaMinusOne => (spinor.xi_plus + spinor.xi_minus) * k_leading(1.0 - a)?,
        TraceKind::DownMinusAlpha => (spinor.xi_plus - spinor.xi_minus) * k_leading(a)?,
        _ => ZERO,
    };
    if let Some((_, q)) = spinor.pauli {
        let ch = Channel { spin: which.spin(), l: which.mode() };
        let nu = alpha.order(ch.l);
        c += Charge4::from(q)[ch.index()] * k_leading(nu)? / (2.0 * PI).sqrt();
    }
    Ok(c)
}

/// The same trace evaluated from the spinor: angular projection by the
/// trapezoidal rule, then a fit of `r^p <...>(r) = c + c_1 r^{2 nu} + c_2 r^2`
/// through the radii in [`TRACE_RADII`].
pub fn dirac_traces_numeric(alpha: &FluxAlpha, spinor: &DiracSpinor, which: TraceKind) -> Result<Complex64> {
    if !spinor.regular_vanishes {
        return Err(Error::NonVanishingRegularPart { op: "dirac_traces_numeric" });
    }
    let nu = alpha.order(which.mode());
    let s = which.spin().index();
    let weight = -(which.mode() as f64);
    let mut a = Matrix3::<Complex64>::zeros();
    let mut rhs = Vector3::<Complex64>::zeros();
    for (i, &r) in TRACE_RADII.iter().enumerate() {
        let mut avg = ZERO;
        for j in 0..ANGLES {
            let theta = 2.0 * PI * j as f64 / ANGLES as f64;
            let psi = spinor.singular_part(alpha, Polar::new(r, theta))?;
            avg += psi[s] * Complex64::from_polar(1.0, weight * theta);
        }
        avg /= ANGLES as f64;
        rhs[i] = avg * r.powf(nu);
        a[(i, 0)] = ONE;
        a[(i, 1)] = Complex64::from(r.powf(2.0 * nu));
        a[(i, 2)] = Complex64::from(r * r);
    }
    let sol = a.lu().solve(&rhs).ok_or(Error::Singular { op: "dirac_traces_numeric", sigma: 0.0 })?;
    Ok(sol[0])
}

/// `2^{1 - 2 alpha} Gamma(1 - alpha) / Gamma(alpha)`.
pub fn dirac_kappa(alpha: &FluxAlpha) -> Result<f64> {
    let a = alpha.alpha();
    Ok(2f64.powf(1.0 - 2.0 * a) * gamma(1.0 - a)? / gamma(a)?)
}

/// Membership in `D(H_D^gamma)`: `c^up_{-alpha} = c^down_{alpha-1} = 0` and
/// `(1 - e^{i gamma}) c^up_{alpha-1} = (1 + e^{i gamma}) kappa c^down_{-alpha}`,
/// the pole-free form of `c^up_{alpha-1} = i cot(gamma/2) kappa c^down_{-alpha}`,
/// all to `1e-9`.
pub fn dirac_membership(alpha: &FluxAlpha, gamma: f64, spinor: &DiracSpinor) -> Result<bool> {
    let t = |k| dirac_traces(alpha, spinor, k);
    let up_m = t(TraceKind::UpMinusAlpha)?;
    let up_a = t(TraceKind::UpAlphaMinusOne)?;
    let dn_m = t(TraceKind::DownMinusAlpha)?;
    let dn_a = t(TraceKind::DownAlphaMinusOne)?;
    let e = Complex64::from_polar(1.0, gamma);
    let kappa = dirac_kappa(alpha)?;
    let scale = up_a.norm().max(kappa * dn_m.norm()).max(1.0);
    let ratio = ((ONE - e) * up_a - (ONE + e) * kappa * dn_m).norm();
    Ok(up_m.norm() <= MEMBERSHIP_TOL * scale
        && dn_a.norm() <= MEMBERSHIP_TOL * scale
        && ratio <= MEMBERSHIP_TOL * scale)
}

/// Linear conditions on the Pauli charges of `psi in D((H_D^gamma)^2)`,
/// with the defect functions taken at unit scale.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareCharges {
    pub gamma: f64,
    /// Pole-free rows in flat channel order:
    /// `q_up0 = 0`, `(1 - e^{i gamma}) q_up_m1 = (1 + e^{i gamma}) q_down0`,
    /// `(1 + e^{i gamma}) q_up_m1 = (1 - e^{i gamma}) q_down0`, `q_down_m1 = 0`.
    pub rows: Mat4,
    /// Determinant `4 e^{i gamma}` of the `(q_up_m1, q_down0)` block.
    pub determinant: Complex64,
    /// Determinant `i (cot(gamma/2) + tan(gamma/2)) = 2i / sin(gamma)` of the
    /// cot/tan form `q_up_m1 = i cot(gamma/2) q_down0`,
    /// `q_up_m1 = -i tan(gamma/2) q_down0`; `None` at `gamma` in `{0, pi}`,
    /// where one of the two rows degenerates into `q_down0 = 0` or
    /// `q_up_m1 = 0` directly.
    pub cot_tan_determinant: Option<Complex64>,
    /// Dimension of the solution space of `rows q = 0`.
    pub null_dimension: usize,
}

impl SquareCharges {
    /// Only `q = 0` satisfies all conditions.
    pub fn only_trivial(&self) -> bool {
        self.null_dimension == 0
    }
}

pub fn dirac_square_charges(alpha: &FluxAlpha, gamma: f64) -> Result<SquareCharges> {
    let _ = dirac_kappa(alpha)?;
    if !gamma.is_finite() {
        return Err(Error::NonFinite { op: "dirac_square_charges", what: "gamma" });
    }
    let e = Complex64::from_polar(1.0, gamma);
    let up0 = Channel { spin: Spin::Up, l: 0 }.index();
    let upm = Channel { spin: Spin::Up, l: -1 }.index();
    let dn0 = Channel { spin: Spin::Down, l: 0 }.index();
    let dnm = Channel { spin: Spin::Down, l: -1 }.index();
    let mut rows = Mat4::zeros();
    rows[(0, up0)] = ONE;
    rows[(1, upm)] = ONE - e;
    rows[(1, dn0)] = -(ONE + e);
    rows[(2, upm)] = ONE + e;
    rows[(2, dn0)] = -(ONE - e);
    rows[(3, dnm)] = ONE;
    let block = Matrix2::new(rows[(1, upm)], rows[(1, dn0)], rows[(2, upm)], rows[(2, dn0)]);
    let determinant = block.determinant();
    let half = gamma / 2.0;
    let (s, c) = half.sin_cos();
    let cot_tan_determinant = if s.abs() < 1e-12 || c.abs() < 1e-12 {
        None
    } else {
        Some(Complex64::new(0.0, c / s + s / c))
    };
    let sv = rows.svd(false, false).singular_values;
    let top = sv.max().max(1.0);
    let null_dimension = sv.iter().filter(|&&x| x <= 1e-12 * top).count();
    Ok(SquareCharges { gamma, rows, determinant, cot_tan_determinant, null_dimension })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::reduce_flux;

    #[test]
    fn defect_example() {
        let a = reduce_flux(0.5).unwrap();
        let xi = dirac_defect_xi(&a, Side::Plus, 1.0, 0.0).unwrap();
        let k = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((xi[0].re - k).abs() < 1e-14 && (xi[1].re - k).abs() < 1e-14);
        assert!((xi[0].re - 0.4610685).abs() < 1e-7);
        let xm = dirac_defect_xi(&a, Side::Minus, 0.7, 1.2).unwrap();
        let xp = dirac_defect_xi(&a, Side::Plus, 0.7, 1.2).unwrap();
        assert!((xp[0] - xm[0]).norm() < 1e-15);
        assert!(dirac_defect_xi(&a, Side::Plus, 0.0, 0.0).is_err());
    }

    #[test]
    fn trace_examples() {
        let a = reduce_flux(0.5).unwrap();
        let root = (2.0 * PI).sqrt();
        let s0 = DiracSpinor::gamma_family(ONE, 0.0);
        assert!((dirac_traces(&a, &s0, TraceKind::UpAlphaMinusOne).unwrap() - root).norm() < 1e-13);
        assert!(dirac_traces(&a, &s0, TraceKind::DownMinusAlpha).unwrap().norm() < 1e-15);
        let sp = DiracSpinor::gamma_family(ONE, PI);
        assert!(dirac_traces(&a, &sp, TraceKind::UpAlphaMinusOne).unwrap().norm() < 1e-13);
        assert!((dirac_traces(&a, &sp, TraceKind::DownMinusAlpha).unwrap() - root).norm() < 1e-13);
        let bad = DiracSpinor { regular_vanishes: false, ..s0 };
        assert!(matches!(
            dirac_traces(&a, &bad, TraceKind::UpMinusAlpha),
            Err(Error::NonVanishingRegularPart { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let a = reduce_flux(0.3).unwrap();
        for g in [0.0, 0.4, PI, 4.0] {
            assert!(dirac_membership(&a, g, &DiracSpinor::gamma_family(Complex64::new(0.3, -1.2), g)).unwrap());
            assert!(!dirac_membership(&a, g, &DiracSpinor::gamma_family(ONE, g + 0.5)).unwrap());
            assert!(dirac_membership(&a, g, &DiracSpinor::regular()).unwrap());
        }
    }

    #[test]
    fn square_charge_examples() {
        let a = reduce_flux(0.5).unwrap();
        let q = dirac_square_charges(&a, PI / 2.0).unwrap();
        assert!((q.cot_tan_determinant.unwrap() - Complex64::new(0.0, 2.0)).norm() < 1e-14);
        assert!((q.determinant - 4.0 * Complex64::i()).norm() < 1e-14);
        assert!(q.only_trivial());
        let q = dirac_square_charges(&a, PI / 4.0).unwrap();
        assert!((q.cot_tan_determinant.unwrap().im - 2.0 * 2f64.sqrt()).abs() < 1e-13);
        for g in [0.0, PI] {
            let q = dirac_square_charges(&a, g).unwrap();
            assert!(q.cot_tan_determinant.is_none() && q.only_trivial());
        }
    }
}
