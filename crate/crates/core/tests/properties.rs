use std::f64::consts::PI;

use num_complex::Complex64;
use pohozaev_core::conformal::{mobius_covariance_residual, MobiusDisk};
use pohozaev_core::flow::{half_harmonic_flow, FlowConfig, ENERGY_SLACK};
use pohozaev_core::identities::{stationarity_residual, FourierData};
use pohozaev_core::planar::{gaussian_pohozaev, HoloField, QuadratureConfig};
use pohozaev_core::poly::ComplexPoly;
use pohozaev_core::report::IdentityReport;
use pohozaev_core::zoo::{holomorphic_planar, perturb_tangent, BlaschkeProduct};
use pohozaev_core::{analyze, synthesize, GridMap1D};
use proptest::prelude::*;

fn disk_point(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, 0.0..2.0 * PI).prop_map(|(r, phi)| Complex64::from_polar(r, phi))
}

fn blaschke() -> impl Strategy<Value = BlaschkeProduct> {
    (prop::collection::vec(disk_point(0.5), 1..3), -PI..PI)
        .prop_map(|(factors, phase)| BlaschkeProduct::new(factors, phase).unwrap())
}

/// Random planar trigonometric polynomial of degree 5.
fn trig_map() -> impl Strategy<Value = Vec<[f64; 4]>> {
    prop::collection::vec([-1.0..1.0f64, -1.0..1.0, -1.0..1.0, -1.0..1.0], 5)
}

fn sample_trig(coeffs: &[[f64; 4]], n: usize, shift: f64) -> GridMap1D {
    GridMap1D::from_fn(n, 2, |theta, out| {
        out[0] = 0.0;
        out[1] = 0.0;
        for (k, c) in coeffs.iter().enumerate() {
            let (s, co) = ((k + 1) as f64 * (theta + shift)).sin_cos();
            out[0] += c[0] * co + c[1] * s;
            out[1] += c[2] * co + c[3] * s;
        }
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fft_round_trip(coeffs in trig_map()) {
        let u = sample_trig(&coeffs, 64, 0.0);
        let back = synthesize(&analyze(&u), 64).unwrap();
        prop_assert!(u.sup_distance(&back).unwrap() < 1e-13);
    }

    #[test]
    fn relations_rotate_covariantly(coeffs in trig_map(), alpha in -PI..PI, n in 2usize..=5) {
        let data = FourierData::of_map(&sample_trig(&coeffs, 64, 0.0), 5).unwrap();
        let (s, t, scale) = data.relation(n).unwrap();
        let (sr, tr, scale_r) = data.rotated(alpha).relation(n).unwrap();
        let (sn, cn) = (n as f64 * alpha).sin_cos();
        prop_assert!((sr - (cn * s + sn * t)).abs() <= 1e-12 * scale.max(1.0));
        prop_assert!((tr - (cn * t - sn * s)).abs() <= 1e-12 * scale.max(1.0));
        // rotation mixes a_k and b_k but keeps |a_k|^2 + |b_k|^2
        let energy = |d: &FourierData, k: usize| {
            d.a(k).iter().chain(d.b(k)).map(|v| v * v).sum::<f64>()
        };
        let rotated = data.rotated(alpha);
        for k in 1..=5 {
            prop_assert!((energy(&data, k) - energy(&rotated, k)).abs() < 1e-12);
        }
        prop_assert!(scale_r >= 0.0);
    }

    #[test]
    fn phase_shift_rotates_relations(coeffs in trig_map(), phi in -PI..PI, n in 2usize..=5) {
        let base = FourierData::of_map(&sample_trig(&coeffs, 64, 0.0), 5).unwrap();
        let shifted = FourierData::of_map(&sample_trig(&coeffs, 64, phi), 5).unwrap();
        let (s, t, scale) = base.relation(n).unwrap();
        let (ss, ts, _) = shifted.relation(n).unwrap();
        let (sn, cn) = (n as f64 * phi).sin_cos();
        prop_assert!((ss - (cn * s + sn * t)).abs() <= 1e-11 * scale.max(1e-3));
        prop_assert!((ts - (cn * t - sn * s)).abs() <= 1e-11 * scale.max(1e-3));
    }

    #[test]
    fn report_gaps_are_normalized(
        lhs in -1e6..1e6f64,
        rhs in -1e6..1e6f64,
        extra in 0.0..1e6f64,
        tol in 1e-14..1.0f64,
    ) {
        let reports = [
            IdentityReport::balanced("x", lhs, rhs, tol),
            IdentityReport::residual("x", lhs, rhs, (lhs - rhs).abs(), extra, tol),
            IdentityReport::bounded("x", lhs, rhs, extra, tol),
        ];
        for r in reports {
            prop_assert!((0.0..=1.0).contains(&r.rel_gap));
            prop_assert_eq!(r.pass, r.rel_gap <= tol);
            prop_assert_eq!(r.tolerance(), tol);
        }
    }

    #[test]
    fn blaschke_traces_are_stationary(b in blaschke()) {
        let u = b.trace(1024).unwrap();
        let res = stationarity_residual(&u);
        prop_assert!(res.sup <= 1e-10, "{}", res.sup);
    }

    #[test]
    fn mobius_composition_matches_pointwise(
        a1 in disk_point(0.8), a2 in disk_point(0.8),
        al1 in -PI..PI, al2 in -PI..PI, theta in -PI..PI,
    ) {
        let m1 = MobiusDisk::new(al1, a1).unwrap();
        let m2 = MobiusDisk::new(al2, a2).unwrap();
        let m = m1.compose(&m2).unwrap();
        let z = Complex64::from_polar(1.0, theta);
        prop_assert!((m.apply(z) - m1.apply(m2.apply(z))).norm() < 1e-12);
        let chain = m1.conformal_factor(m2.apply_angle(theta)) * m2.conformal_factor(theta);
        prop_assert!((m.conformal_factor(theta) - chain).abs() <= 1e-10 * chain);
    }

    #[test]
    fn half_laplacian_covariance_under_mobius(b in blaschke(), a in 0.0..0.5f64, alpha in -PI..PI) {
        let u = b.trace(1024).unwrap();
        let m = MobiusDisk::real(alpha, a).unwrap();
        let r = mobius_covariance_residual(&u, &m, 1e-8).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn flow_energy_never_increases(seed in 0u64..1000, amplitude in 0.01..0.3f64) {
        let base = BlaschkeProduct::identity().trace(64).unwrap();
        let u0 = perturb_tangent(&base, amplitude, seed).unwrap();
        let cfg = FlowConfig { tau: 0.01, max_steps: 40, tol: 1e-12 };
        let trace = half_harmonic_flow(&u0, &cfg).unwrap();
        prop_assert!(trace.max_energy_increase() <= ENERGY_SLACK);
        prop_assert!(trace.state.energy <= trace.rows[0].energy);
        prop_assert!(trace.state.u.is_sphere_valued());
    }

    #[test]
    fn gaussian_identity_is_linear_in_the_field(
        c1 in [-1.0..1.0f64, -1.0..1.0, -1.0..1.0],
        c2 in [-1.0..1.0f64, -1.0..1.0, -1.0..1.0],
        alpha in -2.0..2.0f64,
        beta in -2.0..2.0f64,
        x0 in [-0.3..0.3f64, -0.3..0.3],
    ) {
        let u = holomorphic_planar(ComplexPoly::monomial(2));
        let cfg = QuadratureConfig::default();
        let x = HoloField::new(ComplexPoly::from_real(&c1));
        let y = HoloField::new(ComplexPoly::from_real(&c2));
        let xy = HoloField::linear_combination(alpha, &x, beta, &y).unwrap();
        let run = |f: &HoloField| gaussian_pohozaev(&u, x0, 0.5, f, &cfg, 1e-8).unwrap().remove(0);
        let (rx, ry, rxy) = (run(&x), run(&y), run(&xy));
        let scale = rx.lhs.abs() + rx.rhs.abs() + ry.lhs.abs() + ry.rhs.abs();
        prop_assert!((rxy.lhs - (alpha * rx.lhs + beta * ry.lhs)).abs() <= 1e-10 * (alpha.abs() + beta.abs()) * scale.max(1.0));
        prop_assert!((rxy.rhs - (alpha * rx.rhs + beta * ry.rhs)).abs() <= 1e-10 * (alpha.abs() + beta.abs()) * scale.max(1.0));
        prop_assert!(rxy.pass);
    }

    #[test]
    fn gaussian_identity_translates(
        shift in [-0.5..0.5f64, -0.5..0.5],
        x0 in [-0.3..0.3f64, -0.3..0.3],
        t in 0.5..1.0f64,
    ) {
        let cfg = QuadratureConfig::default();
        let u = holomorphic_planar(ComplexPoly::monomial(2));
        let field = HoloField::new(ComplexPoly::from_real(&[0.5, -1.0, 0.25]));
        let moved = gaussian_pohozaev(&u.shifted(shift), x0, t, &field.shifted(shift), &cfg, 1e-8).unwrap().remove(0);
        let center = [x0[0] + shift[0], x0[1] + shift[1]];
        let direct = gaussian_pohozaev(&u, center, t, &field, &cfg, 1e-8).unwrap().remove(0);
        let norm = direct.lhs.abs() + direct.rhs.abs();
        prop_assert!((moved.lhs - direct.lhs).abs() <= 1e-10 * norm);
        prop_assert!((moved.rhs - direct.rhs).abs() <= 1e-10 * norm);
    }

    #[test]
    fn gaussian_identity_scales_with_time(n in 1usize..=2, t in 0.3..1.0f64) {
        let cfg = QuadratureConfig::default();
        let u = holomorphic_planar(ComplexPoly::monomial(n));
        let field = HoloField::radial([0.0, 0.0]);
        let at = |t: f64| gaussian_pohozaev(&u, [0.0, 0.0], t, &field, &cfg, 1e-8).unwrap().remove(0).lhs;
        let ratio = at(2.0 * t) / at(t);
        let expected = 2f64.powi(n as i32 + 1);
        prop_assert!((ratio - expected).abs() <= 1e-6 * expected, "{ratio} vs {expected}");
    }
}
