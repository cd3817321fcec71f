//! Ball and Gaussian-weighted Pohozaev identities for planar maps satisfying
//! `d_i u . Delta u = 0`, tested against holomorphic vector fields.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::gaussian_weight;
use crate::poly::ComplexPoly;
use crate::quadrature::gauss_legendre_on;
use crate::report::IdentityReport;
use crate::spectral::{dot, fmt_sig17};
use crate::zoo::PlanarMap;

/// Largest admissible hypothesis residual near the integration domain.
pub const HYPOTHESIS_BOUND: f64 = 1e-6;

/// Largest relative change allowed when the quadrature is doubled.
pub const CONVERGENCE_BOUND: f64 = 1e-10;

/// Largest admissible mass fraction of the Gaussian integrands beyond the
/// truncation radius.
pub const TAIL_BOUND: f64 = 1e-8;

const HYPOTHESIS_GRID: usize = 50;

/// Axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Region {
    pub fn square(center: [f64; 2], half_width: f64) -> Self {
        Self {
            min: [center[0] - half_width, center[1] - half_width],
            max: [center[0] + half_width, center[1] + half_width],
        }
    }

    pub fn unit_square() -> Self {
        Self {
            min: [0.0, 0.0],
            max: [1.0, 1.0],
        }
    }
}

/// `(residual, bound)` at a point: the residual is
/// `max(|d_x u . Delta u|, |d_y u . Delta u|)` and the Cauchy-Schwarz bound
/// `|grad u| |Delta u|` dominates it.
fn hypothesis_at(u: &dyn PlanarMap, x: f64, y: f64) -> (f64, f64) {
    let [gx, gy] = u.gradient(x, y);
    let lap = u.laplacian(x, y);
    let residual = dot(&gx, &lap).abs().max(dot(&gy, &lap).abs());
    let bound = (dot(&gx, &gx) + dot(&gy, &gy)).sqrt() * dot(&lap, &lap).sqrt();
    (residual, bound)
}

fn hypothesis_grid(u: &dyn PlanarMap, region: Region) -> (f64, f64) {
    let step = |k: usize| (k as f64) / (HYPOTHESIS_GRID - 1) as f64;
    let mut sup = (0.0f64, 0.0f64);
    for i in 0..HYPOTHESIS_GRID {
        let x = region.min[0] + step(i) * (region.max[0] - region.min[0]);
        for j in 0..HYPOTHESIS_GRID {
            let y = region.min[1] + step(j) * (region.max[1] - region.min[1]);
            let (r, b) = hypothesis_at(u, x, y);
            sup = (sup.0.max(r), sup.1.max(b));
        }
    }
    sup
}

/// Sup over a 50 x 50 grid of `max(|d_x u . Delta u|, |d_y u . Delta u|)`.
pub fn hypothesis_residual(u: &dyn PlanarMap, region: Region) -> f64 {
    hypothesis_grid(u, region).0
}

/// Planar vector field `X = X_1 + i X_2` given by a complex polynomial, or by
/// its conjugate for the anti-holomorphic control.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloField {
    poly: ComplexPoly,
    conjugated: bool,
}

impl HoloField {
    pub fn new(poly: ComplexPoly) -> Self {
        Self {
            poly,
            conjugated: false,
        }
    }

    /// `X = conj(p(z))`, which violates the Cauchy-Riemann equations unless
    /// `p` is constant.
    pub fn anti_holomorphic(poly: ComplexPoly) -> Self {
        Self { poly, conjugated: true }
    }

    /// `X(z) = z - z0`.
    pub fn radial(x0: [f64; 2]) -> Self {
        Self::new(ComplexPoly::new(vec![
            Complex64::new(-x0[0], -x0[1]),
            Complex64::new(1.0, 0.0),
        ]))
    }

    pub fn is_holomorphic(&self) -> bool {
        !self.conjugated || self.poly.degree() == 0
    }

    pub fn eval(&self, x: f64, y: f64) -> [f64; 2] {
        let w = self.poly.eval(Complex64::new(x, y));
        let w = if self.conjugated { w.conj() } else { w };
        [w.re, w.im]
    }

    /// `X(. + shift)`.
    pub fn shifted(&self, shift: [f64; 2]) -> Self {
        Self {
            poly: self.poly.shifted(Complex64::new(shift[0], shift[1])),
            conjugated: self.conjugated,
        }
    }

    /// `alpha X + beta Y` for fields of the same kind.
    pub fn linear_combination(alpha: f64, x: &Self, beta: f64, y: &Self) -> Result<Self> {
        if x.conjugated != y.conjugated {
            return Err(Error::InvalidParameter(
                "cannot combine holomorphic and anti-holomorphic fields".into(),
            ));
        }
        Ok(Self {
            poly: x
                .poly
                .scaled(Complex64::new(alpha, 0.0))
                .add(&y.poly.scaled(Complex64::new(beta, 0.0))),
            conjugated: x.conjugated,
        })
    }

    /// `max(|d1 X1 - d2 X2|, |d2 X1 + d1 X2|)` by central differences.
    pub fn cauchy_riemann_residual(&self, x: f64, y: f64, h: f64) -> f64 {
        let dx = |f: fn([f64; 2]) -> f64| (f(self.eval(x + h, y)) - f(self.eval(x - h, y))) / (2.0 * h);
        let dy = |f: fn([f64; 2]) -> f64| (f(self.eval(x, y + h)) - f(self.eval(x, y - h))) / (2.0 * h);
        let first: fn([f64; 2]) -> f64 = |v| v[0];
        let second: fn([f64; 2]) -> f64 = |v| v[1];
        (dx(first) - dy(second)).abs().max((dy(first) + dx(second)).abs())
    }

    pub fn label(&self) -> String {
        let terms: Vec<String> = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(k, c)| {
                let coeff = if c.im == 0.0 {
                    format!("{}", c.re)
                } else {
                    format!("({}{:+}i)", c.re, c.im)
                };
                match k {
                    0 => coeff,
                    1 => format!("{coeff}z"),
                    _ => format!("{coeff}z^{k}"),
                }
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        };
        if self.conjugated {
            format!("conj({body})")
        } else {
            body
        }
    }
}

/// Angular and radial resolution of the planar quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub circle_points: usize,
    pub radial_nodes: usize,
    pub epsilon: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            circle_points: 128,
            radial_nodes: 64,
            epsilon: 1e-18,
        }
    }
}

impl QuadratureConfig {
    /// `R(t) = 2 sqrt(t ln(1/epsilon))`, where the weight drops to `epsilon`.
    pub fn truncation_radius(&self, t: f64) -> f64 {
        2.0 * (t * (1.0 / self.epsilon).ln()).sqrt()
    }

    pub fn doubled(&self) -> Self {
        Self {
            circle_points: 2 * self.circle_points,
            radial_nodes: 2 * self.radial_nodes,
            ..*self
        }
    }
}

/// Quadrature totals of two integrands and of their absolute values.
#[derive(Debug, Clone, Copy, Default)]
struct Sums {
    lhs: f64,
    rhs: f64,
    lhs_abs: f64,
    rhs_abs: f64,
}

impl Sums {
    fn add(&mut self, w: f64, l: f64, r: f64) {
        self.lhs += w * l;
        self.rhs += w * r;
        self.lhs_abs += w * l.abs();
        self.rhs_abs += w * r.abs();
    }

    fn bound(&self) -> f64 {
        self.lhs_abs + self.rhs_abs
    }

    /// Relative change against a refined computation.
    fn change(&self, fine: &Sums) -> f64 {
        let scale = fine.bound().max(fine.lhs.abs() + fine.rhs.abs());
        if scale == 0.0 {
            return 0.0;
        }
        (self.lhs - fine.lhs).abs().max((self.rhs - fine.rhs).abs()) / scale
    }
}

/// Local frame on the circle of radius `rho` about `x0` at angle `theta`.
struct Frame {
    x: f64,
    y: f64,
    cos: f64,
    sin: f64,
    rho: f64,
}

/// Derivatives of `u` in the polar frame: normal `d_nu u`, angular
/// `d_theta u` (with the factor `rho`), the field derivative `X . grad u`,
/// and `|grad u|^2`.
struct PolarDerivatives {
    normal: Vec<f64>,
    angular: Vec<f64>,
    along_field: Vec<f64>,
    grad_sq: f64,
    field: [f64; 2],
}

fn polar_derivatives(u: &dyn PlanarMap, x_field: &HoloField, f: &Frame) -> PolarDerivatives {
    let [gx, gy] = u.gradient(f.x, f.y);
    let field = x_field.eval(f.x, f.y);
    let combine = |a: f64, b: f64| -> Vec<f64> { gx.iter().zip(&gy).map(|(p, q)| a * p + b * q).collect() };
    PolarDerivatives {
        normal: combine(f.cos, f.sin),
        angular: combine(-f.rho * f.sin, f.rho * f.cos),
        along_field: combine(field[0], field[1]),
        grad_sq: dot(&gx, &gx) + dot(&gy, &gy),
        field,
    }
}

fn circle_frames(x0: [f64; 2], rho: f64, n: usize) -> impl Iterator<Item = Frame> {
    (0..n).map(move |j| {
        let (sin, cos) = (2.0 * PI * j as f64 / n as f64).sin_cos();
        Frame {
            x: x0[0] + rho * cos,
            y: x0[1] + rho * sin,
            cos,
            sin,
            rho,
        }
    })
}

fn check_hypothesis_on(u: &dyn PlanarMap, points: impl Iterator<Item = (f64, f64)>) -> Result<f64> {
    let residual = points.map(|(x, y)| hypothesis_at(u, x, y).0).fold(0.0, f64::max);
    if residual > HYPOTHESIS_BOUND {
        return Err(Error::HypothesisViolated {
            residual,
            bound: HYPOTHESIS_BOUND,
        });
    }
    Ok(residual)
}

fn check_ball(x0: [f64; 2], r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() && x0.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("ball radius {r} about {x0:?}")))
    }
}

fn ball_sums(
    u: &dyn PlanarMap,
    x0: [f64; 2],
    r: f64,
    n: usize,
    integrand: &dyn Fn(&Frame, &PolarDerivatives) -> (f64, f64),
    field: &HoloField,
) -> Sums {
    let w = 2.0 * PI * r / n as f64;
    let mut sums = Sums::default();
    for frame in circle_frames(x0, r, n) {
        let d = polar_derivatives(u, field, &frame);
        let (l, rh) = integrand(&frame, &d);
        sums.add(w, l, rh);
    }
    sums
}

fn finish(name: &str, coarse: Sums, fine: Sums, cfg: &QuadratureConfig, tol: f64) -> IdentityReport {
    let change = coarse.change(&fine);
    let report = IdentityReport::bounded(name, coarse.lhs, coarse.rhs, coarse.bound(), tol)
        .param("Nc", cfg.circle_points)
        .param_f64("convergence", change);
    if change > CONVERGENCE_BOUND {
        report.fail_with("convergence guard")
    } else {
        report
    }
}

fn point_param(p: [f64; 2]) -> String {
    format!("{}/{}", fmt_sig17(p[0]), fmt_sig17(p[1]))
}

/// `2 int_{dB} d_nu u . (X . grad u) dsigma = int_{dB} (X . nu) |grad u|^2 dsigma`
/// on the circle of radius `r` about `x0`.
pub fn ball_pohozaev(
    u: &dyn PlanarMap,
    x0: [f64; 2],
    r: f64,
    field: &HoloField,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<IdentityReport> {
    check_ball(x0, r)?;
    let hyp = check_hypothesis_on(
        u,
        [0.95, 1.0, 1.05]
            .into_iter()
            .flat_map(|s| circle_frames(x0, s * r, 64))
            .map(|f| (f.x, f.y)),
    )?;
    let integrand = |f: &Frame, d: &PolarDerivatives| {
        let x_nu = d.field[0] * f.cos + d.field[1] * f.sin;
        (2.0 * dot(&d.normal, &d.along_field), x_nu * d.grad_sq)
    };
    let coarse = ball_sums(u, x0, r, cfg.circle_points, &integrand, field);
    let fine = ball_sums(u, x0, r, 2 * cfg.circle_points, &integrand, field);
    Ok(finish("ball_pohozaev", coarse, fine, cfg, tol)
        .param("x0", point_param(x0))
        .param_f64("r", r)
        .param("X", field.label())
        .param_f64("hypothesis_residual", hyp))
}

/// `int_{dB} |d_r u|^2 dsigma = r^{-2} int_{dB} |d_theta u|^2 dsigma`.
pub fn ball_pohozaev_radial(
    u: &dyn PlanarMap,
    x0: [f64; 2],
    r: f64,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<IdentityReport> {
    check_ball(x0, r)?;
    let hyp = check_hypothesis_on(
        u,
        [0.95, 1.0, 1.05]
            .into_iter()
            .flat_map(|s| circle_frames(x0, s * r, 64))
            .map(|f| (f.x, f.y)),
    )?;
    let integrand =
        |f: &Frame, d: &PolarDerivatives| (dot(&d.normal, &d.normal), dot(&d.angular, &d.angular) / (f.rho * f.rho));
    let field = HoloField::radial(x0);
    let coarse = ball_sums(u, x0, r, cfg.circle_points, &integrand, &field);
    let fine = ball_sums(u, x0, r, 2 * cfg.circle_points, &integrand, &field);
    Ok(finish("ball_pohozaev_radial", coarse, fine, cfg, tol)
        .param("x0", point_param(x0))
        .param_f64("r", r)
        .param_f64("hypothesis_residual", hyp))
}

/// Polar tensor quadrature over the annulus `r_in <= |x - x0| <= r_out`.
#[allow(clippy::too_many_arguments)]
fn annulus_sums(
    u: &dyn PlanarMap,
    x0: [f64; 2],
    t: f64,
    r_in: f64,
    r_out: f64,
    cfg: &QuadratureConfig,
    field: &HoloField,
    integrand: &dyn Fn(&Frame, &PolarDerivatives) -> (f64, f64),
) -> Result<Sums> {
    let (nodes, weights) = gauss_legendre_on(cfg.radial_nodes, r_in, r_out);
    let dtheta = 2.0 * PI / cfg.circle_points as f64;
    let mut sums = Sums::default();
    for (&rho, &wr) in nodes.iter().zip(&weights) {
        let gauss = gaussian_weight(t, [x0[0] + rho, x0[1]], x0)?;
        for frame in circle_frames(x0, rho, cfg.circle_points) {
            let d = polar_derivatives(u, field, &frame);
            let (l, r) = integrand(&frame, &d);
            sums.add(gauss * wr * rho * dtheta, l, r);
        }
    }
    Ok(sums)
}

fn gaussian_general(f: &Frame, d: &PolarDerivatives) -> (f64, f64) {
    let x_dot = f.rho * (d.field[0] * f.cos + d.field[1] * f.sin);
    (2.0 * f.rho * dot(&d.normal, &d.along_field), x_dot * d.grad_sq)
}

fn gaussian_radial(f: &Frame, d: &PolarDerivatives) -> (f64, f64) {
    (f.rho * f.rho * dot(&d.normal, &d.normal), dot(&d.angular, &d.angular))
}

#[allow(clippy::too_many_arguments)]
fn gaussian_report(
    name: &str,
    u: &dyn PlanarMap,
    x0: [f64; 2],
    t: f64,
    field: &HoloField,
    cfg: &QuadratureConfig,
    tol: f64,
    integrand: &dyn Fn(&Frame, &PolarDerivatives) -> (f64, f64),
) -> Result<IdentityReport> {
    let radius = cfg.truncation_radius(t);
    let coarse = annulus_sums(u, x0, t, 0.0, radius, cfg, field, integrand)?;
    let fine = annulus_sums(u, x0, t, 0.0, radius, &cfg.doubled(), field, integrand)?;
    let tail = annulus_sums(u, x0, t, radius, 2.0 * radius, cfg, field, integrand)?;
    let tail_fraction = if coarse.bound() == 0.0 {
        0.0
    } else {
        tail.bound() / coarse.bound()
    };
    if tail_fraction > TAIL_BOUND {
        return Err(Error::GrowthTooFast(tail_fraction));
    }
    Ok(finish(name, coarse, fine, cfg, tol)
        .param("x0", point_param(x0))
        .param_f64("t", t)
        .param("X", field.label())
        .param("Nr", cfg.radial_nodes)
        .param_f64("R", radius)
        .param_f64("tail_fraction", tail_fraction))
}

/// `2 int w ((x - x0) . grad u) . (X . grad u) dx = int w ((x - x0) . X) |grad u|^2 dx`
/// with `w = exp(-|x - x0|^2 / 4t)`, integrated over the disk of radius
/// [`QuadratureConfig::truncation_radius`].
///
/// When `X = z - x0` the radial form
/// `int w |x - x0|^2 |d_nu u|^2 dx = int w |d_theta u|^2 dx` is reported as
/// well, as the second element.
pub fn gaussian_pohozaev(
    u: &dyn PlanarMap,
    x0: [f64; 2],
    t: f64,
    field: &HoloField,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<Vec<IdentityReport>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveTime(t));
    }
    let radius = cfg.truncation_radius(t);
    let hyp = hypothesis_residual(u, Region::square(x0, radius));
    if hyp > HYPOTHESIS_BOUND {
        return Err(Error::HypothesisViolated {
            residual: hyp,
            bound: HYPOTHESIS_BOUND,
        });
    }
    let mut out = vec![
        gaussian_report("gaussian_pohozaev", u, x0, t, field, cfg, tol, &gaussian_general)?
            .param_f64("hypothesis_residual", hyp),
    ];
    if *field == HoloField::radial(x0) {
        out.push(
            gaussian_report("gaussian_pohozaev_radial", u, x0, t, field, cfg, tol, &gaussian_radial)?
                .param_f64("hypothesis_residual", hyp),
        );
    }
    Ok(out)
}

/// The hypothesis residual as a report, normalized by `sup |grad u| |Delta u|`.
pub fn hypothesis_report(u: &dyn PlanarMap, region: Region, tol: f64) -> IdentityReport {
    let (r, bound) = hypothesis_grid(u, region);
    IdentityReport::residual("planar_hypothesis", r, 0.0, r, bound, tol).param(
        "region",
        format!("{}:{}", point_param(region.min), point_param(region.max)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{holomorphic_planar, planar_map, HarmonicPlanar, QuadraticControl, SphereHarmonic};

    fn z(n: usize) -> ComplexPoly {
        ComplexPoly::monomial(n)
    }

    #[test]
    fn hypothesis_examples() {
        let harmonic = holomorphic_planar(z(3));
        assert_eq!(hypothesis_residual(&harmonic, Region::unit_square()), 0.0);
        let sphere = SphereHarmonic::polynomial(z(1));
        assert!(hypothesis_residual(&sphere, Region::square([0.0, 0.0], 2.0)) <= 1e-8);
        assert!(hypothesis_residual(&QuadraticControl, Region::unit_square()) >= 1.0);
    }

    #[test]
    fn holo_field_cauchy_riemann() {
        let x = HoloField::new(ComplexPoly::new(vec![
            Complex64::new(0.3, -1.0),
            Complex64::new(0.0, 2.0),
            Complex64::new(1.0, 0.5),
        ]));
        assert!(x.cauchy_riemann_residual(0.4, -0.7, 1e-5) <= 1e-6);
        let anti = HoloField::anti_holomorphic(z(1));
        assert!(anti.cauchy_riemann_residual(0.4, -0.7, 1e-5) > 1.0);
        assert_eq!(anti.eval(1.0, 2.0), [1.0, -2.0]);
        assert_eq!(HoloField::radial([1.0, 1.0]).eval(3.0, 2.0), [2.0, 1.0]);
    }

    #[test]
    fn radial_ball_values() {
        let u = holomorphic_planar(z(2));
        let cfg = QuadratureConfig::default();
        for r in [0.5, 1.0, 2.0] {
            let rep = ball_pohozaev_radial(&u, [0.0, 0.0], r, &cfg, 1e-10).unwrap();
            let expected = 8.0 * PI * r.powi(3);
            assert!((rep.lhs - expected).abs() <= 1e-12 * expected);
            assert!((rep.rhs - expected).abs() <= 1e-12 * expected);
            assert!(rep.pass);
        }
        let id = holomorphic_planar(z(1));
        let rep = ball_pohozaev_radial(&id, [0.0, 0.0], 1.5, &cfg, 1e-10).unwrap();
        assert!((rep.lhs - 2.0 * PI * 1.5).abs() < 1e-12);
    }

    #[test]
    fn ball_identity_with_holomorphic_fields() {
        let u = holomorphic_planar(z(2));
        let cfg = QuadratureConfig::default();
        for field in [
            HoloField::new(ComplexPoly::from_real(&[1.0])),
            HoloField::new(z(1)),
            HoloField::new(z(2)),
        ] {
            let rep = ball_pohozaev(&u, [0.0, 0.0], 1.0, &field, &cfg, 1e-10).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
        let constant = holomorphic_planar(ComplexPoly::from_real(&[2.0]));
        let rep = ball_pohozaev(&constant, [0.3, 0.1], 1.0, &HoloField::new(z(1)), &cfg, 1e-10).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
    }

    #[test]
    fn anti_holomorphic_field_breaks_ball_identity() {
        let u = HarmonicPlanar::new(vec![z(2)]);
        let anti = HoloField::anti_holomorphic(z(1));
        let rep = ball_pohozaev(&u, [0.5, 0.3], 1.0, &anti, &QuadratureConfig::default(), 1e-10).unwrap();
        assert!(rep.rel_gap >= 0.1 && !rep.pass, "{rep:?}");
        assert!((rep.lhs - 2.0 * rep.rhs).abs() < 1e-10 * rep.lhs);
    }

    #[test]
    fn broken_map_is_rejected() {
        let err = ball_pohozaev(
            &QuadraticControl,
            [0.5, 0.5],
            0.5,
            &HoloField::new(z(1)),
            &QuadratureConfig::default(),
            1e-10,
        );
        assert!(matches!(err, Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn gaussian_radial_z2() {
        let u = holomorphic_planar(z(2));
        let reps = gaussian_pohozaev(
            &u,
            [0.0, 0.0],
            1.0,
            &HoloField::radial([0.0, 0.0]),
            &QuadratureConfig::default(),
            1e-8,
        )
        .unwrap();
        assert_eq!(reps.len(), 2);
        for r in &reps {
            assert!(r.pass, "{r:?}");
        }
        // 2 pi int e^{-rho^2/4} rho^2 (4 rho^2) rho d rho = 8 pi * 32 Gamma(3)
        let oracle = 512.0 * PI;
        assert!((reps[1].lhs - oracle).abs() < 1e-9 * oracle, "{}", reps[1].lhs);
    }

    #[test]
    fn gaussian_sphere_harmonic_off_center() {
        let u = planar_map("s2:z").unwrap();
        let field = HoloField::new(ComplexPoly::from_real(&[1.0, 1.0]));
        let reps = gaussian_pohozaev(u.as_ref(), [0.2, -0.1], 0.5, &field, &QuadratureConfig::default(), 1e-7).unwrap();
        assert!(reps[0].pass, "{:?}", reps[0]);
    }

    #[test]
    fn gaussian_constant_map() {
        let u = holomorphic_planar(ComplexPoly::from_real(&[1.0]));
        let reps = gaussian_pohozaev(
            &u,
            [0.0, 0.0],
            1.0,
            &HoloField::new(z(1)),
            &QuadratureConfig::default(),
            1e-8,
        )
        .unwrap();
        assert_eq!((reps[0].lhs, reps[0].rhs), (0.0, 0.0));
        assert!(reps[0].pass);
    }

    #[test]
    fn truncation_radius() {
        let cfg = QuadratureConfig::default();
        assert!((cfg.truncation_radius(1.0) - 2.0 * (18.0 * 10f64.ln()).sqrt()).abs() < 1e-14);
    }
}
