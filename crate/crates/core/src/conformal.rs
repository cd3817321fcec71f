//! Disk automorphisms restricted to the circle, the stereographic chart of
//! the circle minus `-i`, and the conformal covariance of the half-Laplacian.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::poisson_g;
use crate::report::IdentityReport;
use crate::spectral::{analyze, half_laplacian, half_laplacian_map, GridMap1D};

/// Tail fraction above which a precomposed map is considered under-resolved.
pub const PRECOMPOSE_TAIL_WARN: f64 = 1e-8;

/// Angular half-width of the excluded neighborhood of the pole `-i`.
pub const POLE_EXCLUSION: f64 = 0.1;

/// `z -> e^{i alpha} (z - a) / (1 - conj(a) z)` with `|a| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusDisk {
    alpha: f64,
    a: Complex64,
}

impl MobiusDisk {
    pub const MAX_RADIUS: f64 = 1.0 - 1e-6;

    pub fn new(alpha: f64, a: Complex64) -> Result<Self> {
        if !alpha.is_finite() || a.norm().is_nan() || a.norm() > Self::MAX_RADIUS {
            return Err(Error::MobiusOutOfDisk(a.norm()));
        }
        Ok(Self { alpha, a })
    }

    pub fn real(alpha: f64, a: f64) -> Result<Self> {
        Self::new(alpha, Complex64::new(a, 0.0))
    }

    pub fn identity() -> Self {
        Self {
            alpha: 0.0,
            a: Complex64::new(0.0, 0.0),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, self.alpha) * (z - self.a) / (Complex64::new(1.0, 0.0) - self.a.conj() * z)
    }

    /// Argument of `M(e^{i theta})`.
    pub fn apply_angle(&self, theta: f64) -> f64 {
        self.apply(Complex64::from_polar(1.0, theta)).arg()
    }

    /// `e^lambda = |d/dtheta M(e^{i theta})| = (1 - |a|^2) / |1 - conj(a) e^{i theta}|^2`.
    pub fn conformal_factor(&self, theta: f64) -> f64 {
        let d = Complex64::new(1.0, 0.0) - self.a.conj() * Complex64::from_polar(1.0, theta);
        (1.0 - self.a.norm_sqr()) / d.norm_sqr()
    }

    /// The automorphism `self o other`.
    pub fn compose(&self, other: &MobiusDisk) -> Result<MobiusDisk> {
        let one = Complex64::new(1.0, 0.0);
        let matrix = |m: &MobiusDisk| {
            let e = Complex64::from_polar(1.0, m.alpha);
            [[e, -e * m.a], [-m.a.conj(), one]]
        };
        let p = matrix(self);
        let q = matrix(other);
        let r = [
            [
                p[0][0] * q[0][0] + p[0][1] * q[1][0],
                p[0][0] * q[0][1] + p[0][1] * q[1][1],
            ],
            [
                p[1][0] * q[0][0] + p[1][1] * q[1][0],
                p[1][0] * q[0][1] + p[1][1] * q[1][1],
            ],
        ];
        let a = -r[0][1] / r[0][0];
        let alpha = (r[0][0] / r[1][1]).arg();
        MobiusDisk::new(alpha, a)
    }
}

/// A point either on the circle (by angle) or on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StereoPoint {
    Circle(f64),
    Line(f64),
}

impl StereoPoint {
    pub fn to_line(self) -> Result<f64> {
        match self {
            Self::Line(x) => Ok(x),
            Self::Circle(theta) => stereographic(theta),
        }
    }

    pub fn to_circle(self) -> Complex64 {
        match self {
            Self::Circle(theta) => Complex64::from_polar(1.0, theta),
            Self::Line(x) => stereographic_inv(x),
        }
    }
}

fn wrap_angle(theta: f64) -> f64 {
    (theta + PI).rem_euclid(2.0 * PI) - PI
}

/// `P(e^{i theta}) = cos(theta) / (1 + sin(theta))`, evaluated as
/// `tan(pi/4 - theta/2)` to avoid cancellation near the pole.
pub fn stereographic(theta: f64) -> Result<f64> {
    if wrap_angle(theta + FRAC_PI_2).abs() < 1e-12 {
        return Err(Error::StereographicPole(theta));
    }
    Ok((FRAC_PI_4 - 0.5 * theta).tan())
}

/// Inverse chart `x -> (2x / (1 + x^2), (1 - x^2) / (1 + x^2))`.
pub fn stereographic_inv(x: f64) -> Complex64 {
    let d = 1.0 + x * x;
    Complex64::new(2.0 * x / d, (1.0 - x * x) / d)
}

/// Angle of `stereographic_inv(x)`.
pub fn stereographic_inv_angle(x: f64) -> f64 {
    FRAC_PI_2 - 2.0 * x.atan()
}

/// `|dP/dtheta| = 1 / (1 + sin(theta))`, expressed through `x = P(theta)` as
/// `(1 + x^2) / 2` so that it stays finite up to the grid point at the pole.
pub fn stereographic_jacobian(x: f64) -> f64 {
    0.5 * (1.0 + x * x)
}

/// Samples of `u o M` obtained by summing the Fourier series of `u` at the
/// points `M(theta_j)`. Logs a warning when the result is under-resolved.
pub fn precompose(u: &GridMap1D, m: &MobiusDisk) -> Result<GridMap1D> {
    let (v, tail) = precompose_with_tail(u, m)?;
    if tail > PRECOMPOSE_TAIL_WARN {
        log::warn!(
            "precomposition with a = {} leaves tail fraction {tail:e} at N = {}",
            m.a,
            u.grid_size()
        );
    }
    Ok(v)
}

/// Like [`precompose`], also returning the spectral tail fraction of the result.
pub fn precompose_with_tail(u: &GridMap1D, m: &MobiusDisk) -> Result<(GridMap1D, f64)> {
    if *m == MobiusDisk::identity() {
        return Ok((u.clone(), analyze(u).tail_ratio()));
    }
    let spec = analyze(u);
    let mut v = GridMap1D::from_fn(u.grid_size(), u.dim(), |theta, out| {
        spec.eval_into(m.apply_angle(theta), out)
    })?;
    if u.is_sphere_valued() {
        v = v.normalized()?;
    }
    let tail = analyze(&v).tail_ratio();
    Ok((v, tail))
}

fn field_report(name: &str, lhs: &[Vec<f64>], rhs: &[Vec<f64>], tol: f64) -> IdentityReport {
    let sup = |f: &[Vec<f64>]| {
        f.iter()
            .map(|p| p.iter().map(|v| v * v).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    };
    let gap = lhs
        .iter()
        .zip(rhs)
        .map(|(p, q)| p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let l = sup(lhs);
    let r = sup(rhs);
    let mut report = IdentityReport::balanced(name, l, r, tol);
    report.abs_gap = gap;
    report.rel_gap = (gap / (l + r + crate::report::GAP_FLOOR)).min(1.0);
    report.pass = report.rel_gap <= tol;
    report
}

/// Checks `(-Delta)^{1/2}(u o M) = e^lambda ((-Delta)^{1/2} u) o M` on the grid.
///
/// `lhs` and `rhs` are the sup norms of the two fields and `abs_gap` the sup
/// norm of their difference.
pub fn mobius_covariance_residual(u: &GridMap1D, m: &MobiusDisk, tol: f64) -> Result<IdentityReport> {
    let composed = precompose(u, m)?;
    let lhs_map = half_laplacian_map(&composed);
    let lap_spec = half_laplacian(&analyze(u));
    let lhs: Vec<Vec<f64>> = lhs_map.points().map(|p| p.to_vec()).collect();
    let rhs: Vec<Vec<f64>> = (0..u.grid_size())
        .map(|j| {
            let theta = u.angle(j);
            let w = m.conformal_factor(theta);
            lap_spec.eval(m.apply_angle(theta)).into_iter().map(|v| w * v).collect()
        })
        .collect();
    Ok(field_report("mobius_covariance", &lhs, &rhs, tol)
        .param("N", u.grid_size())
        .param_f64("alpha", m.alpha)
        .param_f64("a_re", m.a.re)
        .param_f64("a_im", m.a.im))
}

/// A function on the line whose half-Laplacian is known in closed form.
pub trait LineProfile {
    fn value(&self, x: f64) -> f64;
    fn half_laplacian(&self, x: f64) -> f64;
    fn label(&self) -> String;
}

/// `G(t, .)`, whose half-Laplacian is `-d_t G(t, .)`.
#[derive(Debug, Clone, Copy)]
pub struct PoissonProfile {
    pub t: f64,
}

impl LineProfile for PoissonProfile {
    fn value(&self, x: f64) -> f64 {
        poisson_g(self.t, x).map(|k| k.value).unwrap_or(f64::NAN)
    }

    fn half_laplacian(&self, x: f64) -> f64 {
        poisson_g(self.t, x).map(|k| -k.d_dt).unwrap_or(f64::NAN)
    }

    fn label(&self) -> String {
        format!("poisson:t={}", self.t)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantProfile(pub f64);

impl LineProfile for ConstantProfile {
    fn value(&self, _: f64) -> f64 {
        self.0
    }

    fn half_laplacian(&self, _: f64) -> f64 {
        0.0
    }

    fn label(&self) -> String {
        format!("constant:{}", self.0)
    }
}

/// Compares `(1 + sin theta) (-Delta)^{1/2}_{S^1} v` with
/// `((-Delta)^{1/2}_R u)(P(theta))` for `v = u o P`, away from the pole.
pub fn pullback_halflap_check(profile: &dyn LineProfile, n: usize, tol: f64) -> Result<IdentityReport> {
    let v = GridMap1D::from_fn(n, 1, |theta, out| {
        out[0] = match stereographic(theta) {
            Ok(x) => profile.value(x),
            Err(_) => profile.value(f64::INFINITY),
        };
    })?;
    if let Some(j) = v.samples().iter().position(|s| !s.is_finite()) {
        return Err(Error::NonFinite(j));
    }
    let lap = half_laplacian_map(&v);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..n {
        let theta = v.angle(j);
        if wrap_angle(theta + FRAC_PI_2).abs() < POLE_EXCLUSION {
            continue;
        }
        let x = stereographic(theta)?;
        lhs.push(vec![lap.point(j)[0] * (1.0 + theta.sin())]);
        rhs.push(vec![profile.half_laplacian(x)]);
    }
    Ok(field_report("stereographic_pullback", &lhs, &rhs, tol)
        .param("N", n)
        .param("profile", profile.label()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_examples() {
        let id = MobiusDisk::identity();
        let z = Complex64::from_polar(1.0, 0.7);
        assert!((id.apply(z) - z).norm() < 1e-16);

        let m = MobiusDisk::real(0.0, 0.5).unwrap();
        assert!((m.apply(Complex64::new(1.0, 0.0)) - 1.0).norm() < 1e-16);
        let w = m.apply(Complex64::i());
        let expected = (Complex64::i() - 0.5) / (Complex64::new(1.0, 0.0) - 0.5 * Complex64::i());
        assert!((w - expected).norm() < 1e-15);
        assert!((w.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mobius_rejects_boundary() {
        assert!(MobiusDisk::real(0.0, 1.0).is_err());
        assert!(MobiusDisk::real(0.0, 1.0 - 1e-7).is_err());
        assert!(MobiusDisk::new(0.0, Complex64::new(0.6, 0.6)).is_ok());
    }

    #[test]
    fn conformal_factor_examples() {
        let m = MobiusDisk::real(0.0, 0.5).unwrap();
        assert!((m.conformal_factor(0.0) - 3.0).abs() < 1e-14);
        assert!((m.conformal_factor(PI) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(MobiusDisk::identity().conformal_factor(1.2), 1.0);
    }

    #[test]
    fn conformal_factor_integrates_to_two_pi() {
        let m = MobiusDisk::new(0.4, Complex64::new(0.3, -0.6)).unwrap();
        let n = 2048;
        let sum: f64 = (0..n).map(|j| m.conformal_factor(2.0 * PI * j as f64 / n as f64)).sum();
        assert!((sum * 2.0 * PI / n as f64 - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn stereographic_examples() {
        assert!(stereographic(FRAC_PI_2).unwrap().abs() < 1e-16);
        let top = stereographic_inv(0.0);
        assert!((top - Complex64::new(0.0, 1.0)).norm() < 1e-16);
        assert!((stereographic_inv(1.0) - Complex64::new(1.0, 0.0)).norm() < 1e-16);
        assert!((stereographic(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(stereographic(-FRAC_PI_2).is_err());
        assert!(stereographic(3.0 * FRAC_PI_2).is_err());
        assert!((stereographic_inv_angle(1.0)).abs() < 1e-15);
        assert_eq!(StereoPoint::Line(2.0).to_line().unwrap(), 2.0);
        assert!((StereoPoint::Circle(0.0).to_line().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn stereographic_round_trip() {
        for &x in &[-1e6, -3.0, -0.2, 0.0, 0.7, 55.0, 1e6] {
            let theta = stereographic_inv_angle(x);
            let back = stereographic(theta).unwrap();
            assert!((back - x).abs() <= 1e-12 * x.abs().max(1.0) * x.abs().max(1.0), "x={x}");
            let z = stereographic_inv(x);
            assert!((z - Complex64::from_polar(1.0, theta)).norm() < 1e-12);
        }
    }

    #[test]
    fn composition_matches_pointwise() {
        let m1 = MobiusDisk::new(0.3, Complex64::new(0.2, -0.4)).unwrap();
        let m2 = MobiusDisk::new(-1.1, Complex64::new(-0.5, 0.1)).unwrap();
        let c = m1.compose(&m2).unwrap();
        for j in 0..16 {
            let z = Complex64::from_polar(1.0, j as f64 * 0.4);
            assert!((c.apply(z) - m1.apply(m2.apply(z))).norm() < 1e-13);
        }
    }

    #[test]
    fn precompose_cosine_against_pointwise_oracle() {
        let u = GridMap1D::from_fn(256, 1, |t, o| o[0] = t.cos()).unwrap();
        let m = MobiusDisk::real(0.0, 0.3).unwrap();
        let v = precompose(&u, &m).unwrap();
        for j in 0..256 {
            let z = m.apply(Complex64::from_polar(1.0, v.angle(j)));
            assert!((v.point(j)[0] - z.arg().cos()).abs() < 1e-12);
        }
        let same = precompose(&u, &MobiusDisk::identity()).unwrap();
        assert!(same.sup_distance(&u).unwrap() < 1e-14);
    }

    #[test]
    fn pullback_constant_is_trivial() {
        let r = pullback_halflap_check(&ConstantProfile(2.5), 256, 1e-8).unwrap();
        assert!(r.lhs < 1e-13 && r.rhs == 0.0);
    }
}
