use std::f64::consts::PI;

use abpauli::specfun::{bessel_i, bessel_j, bessel_k, bessel_y, hankel1, BesselOrder};
use num_complex::Complex64;
use proptest::prelude::*;

fn half_grid() -> impl Iterator<Item = f64> {
    (0..=600).map(|i| 0.01 * (3000.0f64).powf(i as f64 / 600.0))
}

#[test]
fn half_order_closed_forms() {
    let nu = BesselOrder::new(0.5).unwrap();
    for x in half_grid() {
        let env = (2.0 / (PI * x)).sqrt();
        let j = bessel_j(0.5, x).unwrap();
        let y = bessel_y(0.5, x).unwrap();
        assert!((j - env * x.sin()).abs() <= 1e-12 * env, "J x={x}");
        assert!((y + env * x.cos()).abs() <= 1e-12 * env, "Y x={x}");
        let h = hankel1(0.5, x).unwrap();
        let want = Complex64::new(0.0, -env) * Complex64::from_polar(1.0, x);
        assert!((h - want).norm() <= 1e-12 * env, "H x={x}");
        let z = Complex64::new(x, 0.0);
        let i = bessel_i(nu, z).unwrap();
        let k = bessel_k(nu, z).unwrap();
        assert!((i.re - env * x.sinh()).abs() <= 1e-12 * env * x.cosh() && i.im == 0.0, "I x={x}");
        let kw = (PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!((k.re - kw).abs() <= 1e-12 * kw, "K x={x}");
    }
}

#[test]
fn wronskian_on_real_axis() {
    for nu in [0.25, 0.5, 0.75, 1.25] {
        let o = BesselOrder::new(nu).unwrap();
        let op = BesselOrder::new(nu + 1.0).unwrap();
        for i in 0..=200 {
            let x = 0.01 * (5000.0f64).powf(i as f64 / 200.0);
            let z = Complex64::new(x, 0.0);
            let (iv, kv) = (bessel_i(o, z).unwrap(), bessel_k(o, z).unwrap());
            let (ip1, kp1) = (bessel_i(op, z).unwrap(), bessel_k(op, z).unwrap());
            // I' = I_{nu+1} + nu I / x, K' = -K_{nu+1} + nu K / x.
            let di = ip1 + iv * nu / x;
            let dk = -kp1 + kv * nu / x;
            let w = iv * dk - di * kv;
            let scale = (iv * kv).norm().max(1.0 / x) + (ip1 * kv).norm() + (iv * kp1).norm();
            assert!((w + 1.0 / x).norm() <= 1e-10 * scale * x, "nu={nu} x={x}");
        }
    }
}

#[test]
fn k_recurrences_by_finite_differences() {
    // (d/dx + nu/x) K_nu = -K_{nu-1},  (d/dx - nu/x) K_nu = -K_{nu+1}.
    for nu in [0.25, 0.5, 0.75] {
        let kf = |n: f64, x: f64| {
            let k = bessel_k(BesselOrder::new(n.abs()).unwrap(), Complex64::new(x, 0.0)).unwrap();
            k.re
        };
        for x in [0.3, 0.9, 2.0, 5.0] {
            let h = 1e-3 * x;
            let d = (kf(nu, x - 2.0 * h) - 8.0 * kf(nu, x - h) + 8.0 * kf(nu, x + h) - kf(nu, x + 2.0 * h)) / (12.0 * h);
            let lower = d + nu / x * kf(nu, x) + kf(nu - 1.0, x);
            let upper = d - nu / x * kf(nu, x) + kf(nu + 1.0, x);
            let scale = kf(nu + 1.0, x);
            assert!(lower.abs() <= 1e-8 * scale && upper.abs() <= 1e-8 * scale, "nu={nu} x={x}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn connection_formula(nu in prop_oneof![0.01f64..0.99, 1.01f64..1.99], x in 1e-3f64..100.0) {
        let k = bessel_k(BesselOrder::new(nu).unwrap(), Complex64::from_polar(x, -PI / 2.0)).unwrap();
        let h = hankel1(nu, x).unwrap();
        let want = Complex64::new(0.0, PI / 2.0) * Complex64::from_polar(1.0, nu * PI / 2.0) * h;
        prop_assert!((k - want).norm() <= 1e-9 * want.norm(), "{k} vs {want}");
    }

    #[test]
    fn k_conjugate_symmetry(nu in 0.01f64..1.99, r in 0.05f64..30.0, phi in -1.5f64..1.5) {
        let o = BesselOrder::new(nu).unwrap();
        let z = Complex64::from_polar(r, phi);
        let a = bessel_k(o, z).unwrap();
        let b = bessel_k(o, z.conj()).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-13 * a.norm().max(1e-300));
    }
}
