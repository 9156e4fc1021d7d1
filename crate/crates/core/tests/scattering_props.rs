mod common;

use std::f64::consts::PI;

use abpauli::extension::{beta_from_theta, reduce_flux, ExtensionParam, Herm4, Mat4, Polar, Side, Spin};
use abpauli::scattering::{
    abel_extrapolated_amplitude, extrapolate_to_zero, friedrichs_amplitude, friedrichs_cross_section,
    friedrichs_eigenfunction, incident_wave, plane_wave, plane_wave_partial,
    s_matrix_phases, scattering_amplitude, single_layer_limit, single_layer_limit_hankel,
    theta_amplitude, theta_eigenfunction,
};
use common::{boundary_condition_residual, pauli_residual, random_herm4, rng, snap};
use num_complex::Complex64;
use rand::Rng;

const SPINS: [Spin; 2] = [Spin::Up, Spin::Down];

#[test]
fn amplitude_squares_to_cross_section() {
    let mut r = rng(21);
    for _ in 0..50 {
        let alpha = reduce_flux(r.gen_range(0.01..0.99)).unwrap();
        let lambda = r.gen_range(0.05..20.0);
        let delta = r.gen_range(0.05..2.0 * PI - 0.05);
        let f = friedrichs_amplitude(&alpha, lambda, delta).unwrap();
        let ds = friedrichs_cross_section(&alpha, lambda, delta).unwrap();
        assert!((f.norm_sqr() - ds).abs() <= 1e-10 * ds.max(1.0));
        let (g, g2) = scattering_amplitude(&alpha, &ExtensionParam::Friedrichs, lambda, delta, Spin::Up, Spin::Up).unwrap();
        assert!((g - f).norm() <= 1e-13 * f.norm());
        assert!((g2 - ds).abs() <= 1e-10 * ds.max(1.0));
    }
}

#[test]
fn cross_section_reference_values() {
    let half = reduce_flux(0.5).unwrap();
    assert!((friedrichs_cross_section(&half, 1.0, PI).unwrap() - 1.0 / (2.0 * PI)).abs() <= 1e-12);
    assert!((friedrichs_cross_section(&half, 4.0, PI / 2.0).unwrap() - 1.0 / (2.0 * PI)).abs() <= 1e-12);
    let f = friedrichs_amplitude(&half, 1.0, PI).unwrap();
    assert!((f - Complex64::new(-0.2820948, -0.2820948)).norm() < 1e-7);
}

#[test]
fn cross_section_symmetries() {
    let mut r = rng(22);
    for _ in 0..40 {
        let a = r.gen_range(0.01..0.99);
        let lambda = r.gen_range(0.1..10.0);
        let w = r.gen_range(0.05..2.0 * PI - 0.05);
        let x = friedrichs_cross_section(&reduce_flux(a).unwrap(), lambda, w).unwrap();
        let y = friedrichs_cross_section(&reduce_flux(a).unwrap(), lambda, 2.0 * PI - w).unwrap();
        let z = friedrichs_cross_section(&reduce_flux(1.0 - a).unwrap(), lambda, w).unwrap();
        assert!((x - y).abs() <= 1e-12 * x);
        assert!((x - z).abs() <= 1e-12 * x);
    }
}

#[test]
fn abel_partial_wave_sum_matches_closed_form() {
    let eps = [0.1, 0.05, 0.025];
    let fine = [0.04, 0.02, 0.01, 0.005];
    for &a in &[0.25, 0.5, 0.8] {
        let alpha = reduce_flux(a).unwrap();
        let abel = abel_extrapolated_amplitude(&alpha, 1.7, PI / 2.0, &eps).unwrap();
        let exact = friedrichs_amplitude(&alpha, 1.7, PI / 2.0).unwrap();
        assert!((abel - exact).norm() <= 1e-4 * exact.norm().max(1.0));
        // Away from the reference angle the coarse sweep is near its limit;
        // the finer sweep shows convergence.
        for &delta in &[1.0, 2.5, 4.0] {
            let abel = abel_extrapolated_amplitude(&alpha, 1.7, delta, &fine).unwrap();
            let exact = friedrichs_amplitude(&alpha, 1.7, delta).unwrap();
            let err = (abel - exact).norm();
            assert!(err <= 1e-5 * exact.norm().max(1.0), "a {a} delta {delta}: {err:e}");
        }
    }
}

#[test]
fn partial_wave_s_matrix_is_unitary() {
    let mut r = rng(23);
    let alpha = reduce_flux(0.37).unwrap();
    let phases = s_matrix_phases(&alpha, 60);
    let v: Vec<Complex64> = phases.iter().map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    let n0: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    let n1: f64 = v.iter().zip(&phases).map(|(c, (_, s))| (c * s).norm_sqr()).sum();
    assert!((n0 - n1).abs() <= 1e-13 * n0);
    for (l, s) in phases {
        assert!((s.norm() - 1.0).abs() <= 1e-14, "l = {l}");
    }
}

#[test]
fn plane_wave_partial_waves() {
    let mut r = rng(24);
    for _ in 0..20 {
        let k = r.gen_range(0.1..3.0);
        let x = Polar::new(r.gen_range(0.0..10.0 / k), r.gen_range(-PI..PI));
        let w = r.gen_range(0.0..2.0 * PI);
        let p = plane_wave(k, w, Spin::Up, x)[0];
        let q = plane_wave_partial(k, w, x, (k * x.r + 40.0) as usize).unwrap();
        assert!((p - q).norm() <= 1e-8, "{p} vs {q}");
    }
}

#[test]
fn zero_flux_limit_is_the_plane_wave() {
    // The deviation is first order in alpha.
    let dev = |a: f64, x: Polar| {
        let alpha = reduce_flux(a).unwrap();
        let p = plane_wave(1.4, 0.7, Spin::Down, x)[1];
        let f = friedrichs_eigenfunction(&alpha, 1.4, 0.7, Side::Plus, Spin::Down, x, 1e-14).unwrap()[1];
        (p - f).norm()
    };
    for (r, t) in [(0.5, 0.3), (2.0, -1.0), (4.0, 2.8)] {
        let x = Polar::new(r, t);
        let (d5, d6) = (dev(3e-5, x), dev(1e-5, x));
        assert!(d5 <= 3e-5 && d6 <= 1e-5, "{d5:e} {d6:e}");
        assert!((d5 / d6 - 3.0).abs() < 0.01, "{}", d5 / d6);
    }
}

#[test]
fn hankel_form_of_the_boundary_single_layer() {
    let mut r = rng(25);
    for _ in 0..20 {
        let alpha = reduce_flux(r.gen_range(0.05..0.95)).unwrap();
        let lambda = r.gen_range(0.1..9.0);
        let x = Polar::new(r.gen_range(0.1..6.0), r.gen_range(-PI..PI));
        let q = abpauli::extension::Charge4::from_fn(|_, _| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        for side in [Side::Plus, Side::Minus] {
            let a = single_layer_limit(&alpha, lambda, side, &q, x).unwrap();
            let b = single_layer_limit_hankel(&alpha, lambda, side, &q, x).unwrap();
            for s in 0..2 {
                assert!((a[s] - b[s]).norm() <= 1e-9 * a[s].norm().max(1.0));
            }
        }
    }
}

fn sample_theta() -> Herm4 {
    let mut m = Mat4::zeros();
    let vals = [[0.4, 0.2, -0.3, 0.1], [0.0, -0.7, 0.5, 0.2], [0.0, 0.0, 1.1, -0.4], [0.0, 0.0, 0.0, 0.3]];
    for i in 0..4 {
        for j in i..4 {
            let v = Complex64::new(vals[i][j], if i == j { 0.0 } else { 0.3 * (i as f64 - j as f64) });
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    Herm4::new(m).unwrap()
}

#[test]
fn eigenfunctions_solve_the_pauli_equation() {
    let alpha = reduce_flux(0.3).unwrap();
    let ext = ExtensionParam::Theta(sample_theta());
    let k = 1.3;
    for sign in [Side::Plus, Side::Minus] {
        for spin in SPINS {
            let ff = |x: Polar| friedrichs_eigenfunction(&alpha, k, 0.4, sign, spin, x, 1e-14);
            let ft = |x: Polar| theta_eigenfunction(&alpha, &ext, k, 0.4, sign, spin, x, 1e-14);
            for i in 0..6 {
                let x = Polar::new(0.5 + 0.5 * i as f64, -2.0 + 0.7 * i as f64);
                let e = Complex64::from(k * k);
                assert!(pauli_residual(&ff, 0.3, e, x).unwrap() < 1e-4);
                assert!(pauli_residual(&ft, 0.3, e, x).unwrap() < 1e-4);
            }
        }
    }
}

#[test]
fn theta_eigenfunctions_obey_the_boundary_condition() {
    let mut r = rng(26);
    for &a in &[0.25, 0.6] {
        let alpha = reduce_flux(a).unwrap();
        let theta = random_herm4(&mut r, 1.0);
        let ext = ExtensionParam::Theta(theta);
        let beta = beta_from_theta(&alpha, &theta);
        for sign in [Side::Plus, Side::Minus] {
            let f = |x: Polar| theta_eigenfunction(&alpha, &ext, 0.9, 1.1, sign, Spin::Up, x, 1e-15);
            let bc = boundary_condition_residual(&f, &alpha, &beta).unwrap();
            assert!(bc < 1e-6, "{sign:?}: {bc}");
        }
    }
}

#[test]
fn friedrichs_eigenfunction_at_the_origin() {
    let alpha = reduce_flux(0.5).unwrap();
    let v = friedrichs_eigenfunction(&alpha, 1.0, 0.0, Side::Plus, Spin::Up, Polar::new(0.0, 0.0), 1e-12).unwrap();
    assert_eq!(v, [Complex64::new(0.0, 0.0); 2]);
}

#[test]
fn sommerfeld_pairing() {
    // phi^{-}_omega(r, theta) = conj(phi^{+}_{-omega-pi}(r, -theta)); for an
    // extension the conjugation also replaces Theta by its entrywise conjugate.
    let alpha = reduce_flux(0.42).unwrap();
    let th = sample_theta();
    let th_bar = Herm4::new(th.matrix().map(|c| c.conj())).unwrap();
    let (ext, ext_bar) = (ExtensionParam::Theta(th), ExtensionParam::Theta(th_bar));
    let (k, w) = (1.1, 0.8);
    for (r, t) in [(0.7, 0.2), (2.5, -1.9), (6.0, 3.0)] {
        for spin in SPINS {
            let s = spin.index();
            let m = friedrichs_eigenfunction(&alpha, k, w, Side::Minus, spin, Polar::new(r, t), 1e-14).unwrap()[s];
            let p = friedrichs_eigenfunction(&alpha, k, -w - PI, Side::Plus, spin, Polar::new(r, -t), 1e-14).unwrap()[s];
            assert!((m - p.conj()).norm() <= 1e-12);
            let m = theta_eigenfunction(&alpha, &ext, k, w, Side::Minus, spin, Polar::new(r, t), 1e-14).unwrap();
            let p = theta_eigenfunction(&alpha, &ext_bar, k, -w - PI, Side::Plus, spin, Polar::new(r, -t), 1e-14).unwrap();
            for c in 0..2 {
                assert!((m[c] - p[c].conj()).norm() <= 1e-11);
            }
        }
    }
}

#[test]
fn far_field_matches_theta_amplitude() {
    let alpha = reduce_flux(0.3).unwrap();
    let k = 1.3;
    let omega = 0.4;
    for ext in [ExtensionParam::Friedrichs, ExtensionParam::Theta(sample_theta())] {
        for sign in [Side::Plus, Side::Minus] {
            for s_in in SPINS {
                for s_out in SPINS {
                    for dir in [1.9, -2.0, 5.5] {
                        let f = theta_amplitude(&alpha, &ext, k, omega, sign, s_in, s_out, dir).unwrap();
                        let mut xs = Vec::new();
                        let mut ys = Vec::new();
                        for r0 in [50.0, 100.0, 200.0] {
                            let r = snap(r0, k);
                            let x = Polar::new(r, dir);
                            let phi = theta_eigenfunction(&alpha, &ext, k, omega, sign, s_in, x, 1e-12).unwrap();
                            let inc = incident_wave(&alpha, k, omega, sign, s_in, x);
                            let o = s_out.index();
                            let g = (phi[o] - inc[o]) * r.sqrt() * Complex64::from_polar(1.0, sign.sign() * k * r);
                            xs.push(1.0 / r);
                            ys.push(g);
                        }
                        let ex = extrapolate_to_zero(&xs, &ys);
                        assert!((ex - f).norm() <= 1e-3 * f.norm().max(1e-2), "{sign:?} {s_in:?}->{s_out:?} dir {dir}: {ex} vs {f}");
                    }
                }
            }
        }
    }
}

#[test]
fn diagonal_theta_does_not_flip_spin() {
    let alpha = reduce_flux(0.5).unwrap();
    let ext = ExtensionParam::Theta(Herm4::diagonal([0.3, -1.0, 2.0, 0.1]));
    for dir in [0.3, 2.0, 4.0] {
        let f = theta_amplitude(&alpha, &ext, 1.0, 0.0, Side::Plus, Spin::Up, Spin::Down, dir).unwrap();
        assert_eq!(f, Complex64::new(0.0, 0.0));
    }
}
