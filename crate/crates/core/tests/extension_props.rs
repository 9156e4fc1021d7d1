mod common;

use std::f64::consts::PI;

use abpauli::extension::*;
use abpauli::quadrature::tanh_sinh;
use abpauli::scattering::correction_radial;
use common::{half_line, pauli_residual, random_herm4, rng};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

const ALPHAS: [f64; 3] = [0.25, 0.5, 0.75];

fn off_diagonal_norm(m: &Mat4) -> f64 {
    let mut s = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s = s.max(m[(i, j)].norm());
            }
        }
    }
    s
}

/// Gram entry `int_{R^2} conj(g(conj z)) g(w)` of the defect functions in a
/// channel of order `nu`, by quadrature.
fn gram(nu: f64, z: &SpectralPoint, w: &SpectralPoint) -> Complex64 {
    let (mz, mw) = (z.m(), w.m());
    let f = |r: f64| Ok(r * correction_radial(nu, mz, r)? * correction_radial(nu, mw, r)?);
    half_line(f, (mz + mw).re, 1.0, 1e-11).unwrap()
}

#[test]
fn weyl_difference_identity() {
    let mut r = rng(3);
    for alpha in ALPHAS {
        let a = reduce_flux(alpha).unwrap();
        for _ in 0..10 {
            let mut pick = || {
                let rho = r.gen_range(0.2..5.0);
                let phi = r.gen_range(0.3..(2.0 * PI - 0.3));
                SpectralPoint::new(Complex64::from_polar(rho, phi)).unwrap()
            };
            let (z, w) = (pick(), pick());
            let lhs = lambda_weyl(&a, &z) - lambda_weyl(&a, &w);
            assert!(off_diagonal_norm(&lhs) == 0.0);
            for ch in Channel::ALL {
                let i = ch.index();
                let rhs = (w.z() - z.z()) * gram(a.order(ch.l), &z, &w);
                let err = (lhs[(i, i)] - rhs).norm() / lhs[(i, i)].norm().max(1e-3);
                assert!(err <= 1e-6, "alpha={alpha} z={} w={} err={err:e}", z.z(), w.z());
            }
        }
    }
}

#[test]
fn weyl_reference_point() {
    for alpha in ALPHAS {
        let a = reduce_flux(alpha).unwrap();
        let l = lambda_weyl(&a, &SpectralPoint::real(-1.0).unwrap());
        assert!(l.iter().all(|v| *v == Complex64::new(0.0, 0.0)));
    }
}

#[test]
fn defect_norm_by_quadrature() {
    for alpha in ALPHAS {
        let a = reduce_flux(alpha).unwrap();
        for ch in Channel::ALL {
            for lambda in [0.5, 1.0, 2.0] {
                let f = |r: f64| {
                    let g = defect_g(&a, lambda, ch, Polar::new(r, 0.3))?;
                    Ok(Complex64::from(2.0 * PI * r * (g[0].norm_sqr() + g[1].norm_sqr())))
                };
                let q = half_line(f, 2.0 * lambda, 2.0, 1e-12).unwrap().re;
                let want = defect_norm(&a, lambda, ch).unwrap();
                assert!(((q - want) / want).abs() <= 1e-8, "alpha={alpha} {ch:?} lambda={lambda}: {q} vs {want}");
            }
        }
    }
}

#[test]
fn defect_equation_by_finite_differences() {
    for alpha in ALPHAS {
        let a = reduce_flux(alpha).unwrap();
        for ch in Channel::ALL {
            for lambda in [0.7, 1.6] {
                let f = |x: Polar| defect_g(&a, lambda, ch, x);
                for r in [0.5, 1.2, 3.0] {
                    let res = pauli_residual(&f, alpha, Complex64::from(-lambda * lambda), Polar::new(r, 0.4)).unwrap();
                    assert!(res < 1e-4, "{res:e}");
                }
            }
        }
    }
}

#[test]
fn von_neumann_defects_solve_the_adjoint_equation() {
    let a = reduce_flux(0.35).unwrap();
    for side in [Side::Plus, Side::Minus] {
        for ch in Channel::ALL {
            let f = |x: Polar| defect_g_vn(&a, side, ch, x);
            let e = Complex64::new(0.0, side.sign());
            for r in [0.6, 1.5] {
                assert!(pauli_residual(&f, 0.35, e, Polar::new(r, -0.7)).unwrap() < 1e-4);
            }
            let n = tanh_sinh(
                |r| {
                    let g = f(Polar::new(r, 0.0))?;
                    Ok(Complex64::from(2.0 * PI * r * (g[0].norm_sqr() + g[1].norm_sqr())))
                },
                0.0,
                80.0,
                1e-12,
            )
            .unwrap();
            assert!((n.re - 1.0).abs() < 1e-8, "norm {n}");
        }
    }
}

#[test]
fn small_r_expansion_matches_defect() {
    let a = reduce_flux(0.3).unwrap();
    for ch in Channel::ALL {
        let c = small_r_expansion(&a, 1.4, ch).unwrap();
        let r = 1e-3;
        let g = defect_g(&a, 1.4, ch, Polar::new(r, 0.0)).unwrap()[ch.spin.index()] * (2.0 * PI).sqrt();
        let approx = c.singular * r.powf(-c.nu) + c.regular * r.powf(c.nu);
        // The next term of the expansion is O(r^{2 - nu}).
        assert!((g.re - approx).abs() <= 10.0 * 1.4f64.powi(2) * c.singular * r.powf(2.0 - c.nu));
        assert!(g.im == 0.0);
    }
}

#[test]
fn resonance_shift_cancels() {
    let mut r = rng(4);
    for alpha in ALPHAS {
        let a = reduce_flux(alpha).unwrap();
        let beta = random_herm4(&mut r, 2.0);
        let theta = theta_from_beta(&a, &beta);
        let back = lambda_at_zero(&a) + theta.matrix();
        assert!((back - beta.matrix()).norm() <= 1e-14 * beta.matrix().norm().max(1.0));
        let z = SpectralPoint::real(-1e-40).unwrap();
        let near = lambda_weyl(&a, &z) + theta.matrix();
        assert!((near - beta.matrix()).norm() <= 1e-8 * a.weyl_constant());
    }
}

proptest! {
    #[test]
    fn conjugate_symmetry(alpha in 0.01f64..0.99, rho in 1e-3f64..1e3, phi in 1e-3f64..(2.0 * PI - 1e-3)) {
        let a = reduce_flux(alpha).unwrap();
        let z = SpectralPoint::new(Complex64::from_polar(rho, phi)).unwrap();
        let l = lambda_weyl(&a, &z);
        let lc = lambda_weyl(&a, &z.conj());
        prop_assert!((lc - l.map(|v| v.conj())).norm() <= 1e-13 * l.norm().max(1.0));
        prop_assert!(off_diagonal_norm(&l) == 0.0);
    }

    #[test]
    fn boundary_values_are_diagonal_limits(alpha in 0.01f64..0.99, lambda in 1e-3f64..1e3) {
        let a = reduce_flux(alpha).unwrap();
        for (side, eps) in [(Side::Plus, 1e-13), (Side::Minus, -1e-13)] {
            let lim = lambda_limit_pm(&a, lambda, side).unwrap();
            prop_assert!(off_diagonal_norm(&lim) == 0.0);
            let z = SpectralPoint::new(Complex64::new(lambda, eps * lambda)).unwrap();
            prop_assert!((lambda_weyl(&a, &z) - lim).norm() <= 1e-9 * lim.norm());
        }
    }

    #[test]
    fn beta_theta_shift_roundtrip(alpha in 0.01f64..0.99, seed in 0u64..1000) {
        let a = reduce_flux(alpha).unwrap();
        let beta = random_herm4(&mut rng(100 + seed), 3.0);
        let back = beta_from_theta(&a, &theta_from_beta(&a, &beta));
        prop_assert!((back.matrix() - beta.matrix()).norm() <= 4.0 * f64::EPSILON * (a.weyl_constant() + beta.matrix().norm()));
    }

    #[test]
    fn flux_reduction_keeps_fraction(raw in -50.0f64..50.0) {
        prop_assume!((raw - raw.round()).abs() > 1e-5);
        let a = reduce_flux(raw).unwrap();
        prop_assert!(a.alpha() > 0.0 && a.alpha() < 1.0);
        prop_assert!((a.alpha() + a.winding() as f64 - raw).abs() <= 1e-12 * raw.abs().max(1.0));
    }
}
