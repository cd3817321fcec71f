//! Independent reference computations for the quadrature-based verifiers.

use std::f64::consts::PI;

use num_complex::Complex64;
use pohozaev_core::identities::{poho_r, poho_s1, pole_value};
use pohozaev_core::kernels::{circle_f, circle_f_closed, poisson_g};
use pohozaev_core::planar::{gaussian_pohozaev, HoloField, QuadratureConfig};
use pohozaev_core::poly::ComplexPoly;
use pohozaev_core::zoo::{planar_map, BlaschkeProduct};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (a.abs() + b.abs()).max(1e-300)
}

#[test]
fn kernel_series_matches_closed_form() {
    for t in [0.1, 0.5, 1.0, 2.0] {
        for j in 0..257 {
            let theta = -PI + 2.0 * PI * j as f64 / 256.0;
            let s = circle_f(t, theta).unwrap();
            let c = circle_f_closed(t, theta).unwrap();
            for (a, b) in [(s.value, c.value), (s.d_dt, c.d_dt), (s.d_dspace, c.d_dspace)] {
                assert!(
                    (a - b).abs() <= 1e-12 * b.abs().max(1.0),
                    "t={t} theta={theta}: {a} vs {b}"
                );
            }
        }
    }
}

/// `int_0^{2pi} f` by the trapezoid rule on `m` points.
fn circle_trapezoid<F: Fn(f64) -> [f64; 2]>(m: usize, f: F) -> [f64; 2] {
    let h = 2.0 * PI / m as f64;
    let mut acc = [0.0; 2];
    for j in 0..m {
        let v = f(h * j as f64);
        acc[0] += h * v[0];
        acc[1] += h * v[1];
    }
    acc
}

#[test]
fn circle_identity_against_direct_kernel_quadrature() {
    let b = BlaschkeProduct::new(vec![Complex64::new(0.5, 0.2)], 0.0).unwrap();
    let u = b.trace(512).unwrap();
    let t_grid = [0.5, 1.0, 2.0];
    let reports = poho_s1(&u, &t_grid, 1e-8).unwrap();
    for (t, r) in t_grid.iter().zip(&reports) {
        let value = |theta: f64| {
            let z = b.eval(Complex64::from_polar(1.0, theta));
            [z.re, z.im]
        };
        // the convolution variable sits in the kernel: int u(theta) d F(t, theta) dtheta
        let dt = circle_trapezoid(4096, |th| {
            let k = circle_f_closed(*t, th).unwrap().d_dt;
            let v = value(th);
            [k * v[0], k * v[1]]
        });
        let dx = circle_trapezoid(4096, |th| {
            let k = circle_f_closed(*t, th).unwrap().d_dspace;
            let v = value(th);
            [k * v[0], k * v[1]]
        });
        let lhs = dt[0] * dt[0] + dt[1] * dt[1];
        let rhs = dx[0] * dx[0] + dx[1] * dx[1];
        assert!(rel(r.lhs, lhs) < 1e-12, "t={t}: {} vs {lhs}", r.lhs);
        assert!(rel(r.rhs, rhs) < 1e-12, "t={t}: {} vs {rhs}", r.rhs);
    }
}

/// Double-exponential (sinh-sinh) rule for `int_R f dx` with step `h`.
fn sinh_sinh<F: Fn(f64) -> [f64; 2]>(h: f64, f: F) -> [f64; 2] {
    let mut acc = [0.0; 2];
    let limit = (4.0 / h) as i64;
    for k in -limit..=limit {
        let s = k as f64 * h;
        let inner = 0.5 * PI * s.sinh();
        let x = inner.sinh();
        let jac = 0.5 * PI * s.cosh() * inner.cosh();
        let v = f(x);
        acc[0] += h * jac * v[0];
        acc[1] += h * jac * v[1];
    }
    acc
}

/// `|int d_t G (u - u0) dx|^2` and `|int d_x G (u - u0) dx|^2` for the
/// pullback `u(x) = B(sigma(x))`, `sigma(x) = (2x + i (1 - x^2)) / (1 + x^2)`.
fn line_oracle(b: &BlaschkeProduct, u0: [f64; 2], t: f64) -> (f64, f64) {
    let u = |x: f64| {
        let d = 1.0 + x * x;
        let z = b.eval(Complex64::new(2.0 * x / d, (1.0 - x * x) / d));
        [z.re - u0[0], z.im - u0[1]]
    };
    let weighted = |pick: fn(f64, f64) -> f64| {
        sinh_sinh(1.0 / 64.0, |x| {
            let w = pick(t, x);
            let v = u(x);
            [w * v[0], w * v[1]]
        })
    };
    let dt = weighted(|t, x| poisson_g(t, x).unwrap().d_dt);
    let dx = weighted(|t, x| poisson_g(t, x).unwrap().d_dspace);
    (dt[0] * dt[0] + dt[1] * dt[1], dx[0] * dx[0] + dx[1] * dx[1])
}

#[test]
fn line_identity_against_double_exponential_quadrature() {
    let maps = [
        BlaschkeProduct::identity(),
        BlaschkeProduct::real(&[0.5]).unwrap(),
        BlaschkeProduct::real(&[0.3, -0.2]).unwrap(),
    ];
    let t_grid = [0.5, 1.0, 2.0];
    for b in &maps {
        let v = b.trace(1024).unwrap();
        let pole = pole_value(&v);
        let reports = poho_r(&v, &pole, &t_grid, 1e-6).unwrap();
        for (t, r) in t_grid.iter().zip(&reports) {
            let (lhs, rhs) = line_oracle(b, [pole[0], pole[1]], *t);
            assert!(
                (r.lhs - lhs).abs() <= 1e-8 * lhs.abs().max(1e-3),
                "t={t}: {} vs {lhs}",
                r.lhs
            );
            assert!(
                (r.rhs - rhs).abs() <= 1e-8 * rhs.abs().max(1e-3),
                "t={t}: {} vs {rhs}",
                r.rhs
            );
            assert!(rel(lhs, rhs) < 1e-8, "oracle sides differ at t={t}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn line_identity_closed_form_for_identity_map() {
    let v = BlaschkeProduct::identity().trace(1024).unwrap();
    for t in [0.5, 1.0, 2.0] {
        let expected = 4.0 / (1.0f64 + t).powi(4);
        let (lhs, rhs) = line_oracle(&BlaschkeProduct::identity(), [0.0, -1.0], t);
        assert!(rel(lhs, expected) < 1e-12 && rel(rhs, expected) < 1e-12);
        let r = &poho_r(&v, &[0.0, -1.0], &[t], 1e-6).unwrap()[0];
        assert!(rel(r.lhs, expected) < 1e-10 && rel(r.rhs, expected) < 1e-10);
    }
}

/// `u = (Re z^n, Im z^n)`: returns `(d_x u, d_y u)`.
fn holo_gradient(n: i32, x: f64, y: f64) -> ([f64; 2], [f64; 2]) {
    let d = Complex64::new(x, y).powi(n - 1) * n as f64;
    ([d.re, d.im], [-d.im, d.re])
}

/// Cartesian trapezoid for the Gaussian identity with field `X = z^k`.
fn gaussian_oracle(n: i32, k: i32, x0: [f64; 2], t: f64) -> (f64, f64) {
    let half = 2.0 * (t * 30.0f64.ln() * 4.0).sqrt() + 4.0;
    let m = 600;
    let h = 2.0 * half / m as f64;
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for i in 0..=m {
        for j in 0..=m {
            let x = x0[0] - half + h * i as f64;
            let y = x0[1] - half + h * j as f64;
            let (rx, ry) = (x - x0[0], y - x0[1]);
            let w = (-(rx * rx + ry * ry) / (4.0 * t)).exp();
            let field = Complex64::new(x, y).powi(k);
            let (gx, gy) = holo_gradient(n, x, y);
            let radial: Vec<f64> = (0..2).map(|c| rx * gx[c] + ry * gy[c]).collect();
            let along: Vec<f64> = (0..2).map(|c| field.re * gx[c] + field.im * gy[c]).collect();
            let grad_sq: f64 = gx.iter().chain(&gy).map(|v| v * v).sum();
            lhs += h * h * w * 2.0 * (radial[0] * along[0] + radial[1] * along[1]);
            rhs += h * h * w * (rx * field.re + ry * field.im) * grad_sq;
        }
    }
    (lhs, rhs)
}

#[test]
fn gaussian_identity_against_cartesian_quadrature() {
    let cfg = QuadratureConfig::default();
    for (id, n) in [("holo:z2", 2), ("holo:z3", 3)] {
        let u = planar_map(id).unwrap();
        for k in [1, 2] {
            let field = HoloField::new(ComplexPoly::monomial(k as usize));
            for x0 in [[0.0, 0.0], [0.2, -0.1]] {
                for t in [0.5, 1.0] {
                    let r = &gaussian_pohozaev(u.as_ref(), x0, t, &field, &cfg, 1e-8).unwrap()[0];
                    let (lhs, rhs) = gaussian_oracle(n, k, x0, t);
                    // sides that cancel to zero are compared at the round-off level of the absolute mass
                    let bound: f64 = r.get_param("scale").unwrap().parse().unwrap();
                    let close = |a: f64, b: f64| (a - b).abs() <= 1e-10 * b.abs() + 1e-13 * bound;
                    assert!(close(r.lhs, lhs), "{id} X=z^{k} x0={x0:?} t={t}: {} vs {lhs}", r.lhs);
                    assert!(close(r.rhs, rhs), "{id} X=z^{k} x0={x0:?} t={t}: {} vs {rhs}", r.rhs);
                    assert!(r.pass, "{r:?}");
                }
            }
        }
    }
}
