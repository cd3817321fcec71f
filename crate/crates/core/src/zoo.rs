//! Test maps: Blaschke traces on the circle, negative controls, tangent
//! perturbations, and planar maps with closed-form derivatives.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::ComplexPoly;
use crate::spectral::{dot, norm, GridMap1D};

/// Largest factor modulus accepted by [`BlaschkeProduct::trace`].
pub const BLASCHKE_RESOLVABLE: f64 = 0.9;

/// `e^{i alpha} prod_j (z - a_j) / (1 - conj(a_j) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    factors: Vec<Complex64>,
    phase: f64,
}

impl BlaschkeProduct {
    pub fn new(factors: Vec<Complex64>, phase: f64) -> Result<Self> {
        if let Some(a) = factors.iter().find(|a| a.norm().is_nan() || a.norm() >= 1.0) {
            return Err(Error::BlaschkeOutOfDisk(a.norm()));
        }
        Ok(Self { factors, phase })
    }

    pub fn real(factors: &[f64]) -> Result<Self> {
        Self::new(factors.iter().map(|&a| Complex64::new(a, 0.0)).collect(), 0.0)
    }

    pub fn identity() -> Self {
        Self {
            factors: vec![Complex64::new(0.0, 0.0)],
            phase: 0.0,
        }
    }

    pub fn factors(&self) -> &[Complex64] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        self.factors
            .iter()
            .fold(Complex64::from_polar(1.0, self.phase), |acc, a| {
                acc * (z - a) / (one - a.conj() * z)
            })
    }

    /// Boundary trace as a unit-circle-valued planar map.
    pub fn trace(&self, n: usize) -> Result<GridMap1D> {
        if let Some(a) = self.factors.iter().find(|a| a.norm() > BLASCHKE_RESOLVABLE) {
            return Err(Error::BlaschkeUnresolvable(a.norm()));
        }
        GridMap1D::from_fn(n, 2, |theta, out| {
            let w = self.eval(Complex64::from_polar(1.0, theta));
            out[0] = w.re;
            out[1] = w.im;
        })?
        .normalized()
    }
}

/// `u(e^{i theta}) = (cos 2 theta, sin theta)`: smooth and not stationary.
pub fn negative_control(n: usize) -> Result<GridMap1D> {
    GridMap1D::from_fn(n, 2, |theta, out| {
        out[0] = (2.0 * theta).cos();
        out[1] = theta.sin();
    })
}

/// [`negative_control`] projected radially onto the unit circle. The
/// unprojected map never vanishes, so this is a smooth circle-valued map.
pub fn negative_control_sphere(n: usize) -> Result<GridMap1D> {
    negative_control(n)?.normalized()
}

/// Constant map with value `p`; flagged sphere-valued when `|p| = 1`.
pub fn constant_map(n: usize, p: &[f64]) -> Result<GridMap1D> {
    let u = GridMap1D::from_fn(n, p.len(), |_, out| out.copy_from_slice(p))?;
    if (norm(p) - 1.0).abs() <= crate::spectral::SPHERE_TOLERANCE {
        u.into_sphere_valued()
    } else {
        Ok(u)
    }
}

const PERTURBATION_MODES: usize = 8;

/// Band-limited random trigonometric polynomial with modes `0..=8` and
/// unit sup norm on the grid.
fn random_profile(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let coeffs: Vec<(f64, f64)> = (0..=PERTURBATION_MODES)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut w: Vec<f64> = (0..n)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / n as f64;
            coeffs
                .iter()
                .enumerate()
                .map(|(k, (a, b))| a * (k as f64 * theta).cos() + b * (k as f64 * theta).sin())
                .sum()
        })
        .collect();
    let sup = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if sup > 0.0 {
        w.iter_mut().for_each(|v| *v /= sup);
    }
    w
}

/// Moves a sphere-valued map along the sphere by `amplitude * w(theta)` in a
/// tangent direction, with `w` a seeded band-limited random profile, then
/// renormalizes.
///
/// On the circle the tangent direction is the quarter turn of `u`, so the
/// result is an exact pointwise rotation. In higher dimensions the direction
/// is a random band-limited vector field projected onto the tangent plane.
pub fn perturb_tangent(u: &GridMap1D, amplitude: f64, seed: u64) -> Result<GridMap1D> {
    if !u.is_sphere_valued() {
        return Err(Error::InvalidParameter(
            "perturb_tangent needs a sphere-valued map".into(),
        ));
    }
    let n = u.grid_size();
    let m = u.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = u.samples().to_vec();
    if m == 2 {
        let w = random_profile(&mut rng, n);
        for (p, wj) in samples.chunks_mut(2).zip(&w) {
            let (s, c) = (amplitude * wj).sin_cos();
            let (x, y) = (p[0], p[1]);
            p[0] = c * x - s * y;
            p[1] = s * x + c * y;
        }
    } else {
        let fields: Vec<Vec<f64>> = (0..m).map(|_| random_profile(&mut rng, n)).collect();
        for (j, p) in samples.chunks_mut(m).enumerate() {
            let raw: Vec<f64> = fields.iter().map(|f| f[j]).collect();
            let along = dot(&raw, p);
            let tangent: Vec<f64> = raw.iter().zip(p.iter()).map(|(r, q)| r - along * q).collect();
            let len = norm(&tangent);
            if len == 0.0 {
                continue;
            }
            let (s, c) = (amplitude * len).sin_cos();
            for (q, tq) in p.iter_mut().zip(&tangent) {
                *q = c * *q + s * tq / len;
            }
        }
    }
    GridMap1D::new(n, m, samples)?.normalized()
}

/// Winding number of a planar map about the origin, from the spectrally
/// differentiated angle form `(u x u') / |u|^2`.
pub fn winding_number(u: &GridMap1D) -> Result<f64> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: u.dim(),
        });
    }
    let du = crate::spectral::theta_derivative_map(u);
    let density: Vec<f64> = u
        .points()
        .zip(du.points())
        .map(|(p, d)| (p[0] * d[1] - p[1] * d[0]) / dot(p, p))
        .collect();
    Ok(crate::spectral::integrate_scalar(&density) / (2.0 * PI))
}

/// Kinds of planar test maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanarKind {
    /// `Delta u = 0` componentwise.
    HarmonicFunction,
    /// Harmonic map into the unit sphere of `R^3`.
    SphereHarmonic,
    /// Violates the tension-orthogonality hypothesis.
    Control,
}

/// A planar map `R^2 -> R^m` with closed-form first and second derivatives.
pub trait PlanarMap: Send + Sync {
    fn dim(&self) -> usize;
    fn kind(&self) -> PlanarKind;
    fn value(&self, x: f64, y: f64) -> Vec<f64>;
    /// `[d_x u, d_y u]`.
    fn gradient(&self, x: f64, y: f64) -> [Vec<f64>; 2];
    fn laplacian(&self, x: f64, y: f64) -> Vec<f64>;
}

/// `u_j = Re(f_j(x + i y))` for complex polynomials `f_j`.
#[derive(Debug, Clone)]
pub struct HarmonicPlanar {
    components: Vec<ComplexPoly>,
    derivatives: Vec<ComplexPoly>,
}

impl HarmonicPlanar {
    pub fn new(components: Vec<ComplexPoly>) -> Self {
        let derivatives = components.iter().map(ComplexPoly::derivative).collect();
        Self {
            components,
            derivatives,
        }
    }

    /// Translate: `u(. + shift)`.
    pub fn shifted(&self, shift: [f64; 2]) -> Self {
        let s = Complex64::new(shift[0], shift[1]);
        Self::new(self.components.iter().map(|p| p.shifted(s)).collect())
    }
}

impl PlanarMap for HarmonicPlanar {
    fn dim(&self) -> usize {
        self.components.len()
    }

    fn kind(&self) -> PlanarKind {
        PlanarKind::HarmonicFunction
    }

    fn value(&self, x: f64, y: f64) -> Vec<f64> {
        let z = Complex64::new(x, y);
        self.components.iter().map(|p| p.eval(z).re).collect()
    }

    fn gradient(&self, x: f64, y: f64) -> [Vec<f64>; 2] {
        let z = Complex64::new(x, y);
        let d: Vec<Complex64> = self.derivatives.iter().map(|p| p.eval(z)).collect();
        // d_x Re f = Re f', d_y Re f = Re(i f') = -Im f'
        [d.iter().map(|w| w.re).collect(), d.iter().map(|w| -w.im).collect()]
    }

    fn laplacian(&self, _: f64, _: f64) -> Vec<f64> {
        vec![0.0; self.components.len()]
    }
}

/// `u = (Re f, Im f)` for a complex polynomial `f`: a conformal harmonic map.
pub fn holomorphic_planar(f: ComplexPoly) -> HarmonicPlanar {
    let im = f.scaled(Complex64::new(0.0, -1.0));
    HarmonicPlanar::new(vec![f, im])
}

/// Inverse stereographic projection (from the north pole) of a rational
/// function `w = p(z) / q(z)`: `(2 Re w, 2 Im w, |w|^2 - 1) / (|w|^2 + 1)`.
///
/// The origin `w = 0` maps to the south pole `(0, 0, -1)`. Evaluation at a
/// pole of `w` is undefined.
#[derive(Debug, Clone)]
pub struct SphereHarmonic {
    num: ComplexPoly,
    den: ComplexPoly,
}

impl SphereHarmonic {
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Self {
        Self { num, den }
    }

    pub fn polynomial(f: ComplexPoly) -> Self {
        Self::new(f, ComplexPoly::from_real(&[1.0]))
    }

    pub fn shifted(&self, shift: [f64; 2]) -> Self {
        let s = Complex64::new(shift[0], shift[1]);
        Self::new(self.num.shifted(s), self.den.shifted(s))
    }

    fn w_and_derivative(&self, x: f64, y: f64) -> (Complex64, Complex64) {
        let z = Complex64::new(x, y);
        let (p, dp) = self.num.eval_with_derivative(z);
        let (q, dq) = self.den.eval_with_derivative(z);
        (p / q, (dp * q - p * dq) / (q * q))
    }
}

fn inverse_stereo(w: Complex64) -> [f64; 3] {
    let r = 1.0 + w.norm_sqr();
    [2.0 * w.re / r, 2.0 * w.im / r, (w.norm_sqr() - 1.0) / r]
}

/// Image of the tangent vector `dw` under the differential of the inverse
/// stereographic projection at `w`.
fn inverse_stereo_differential(w: Complex64, dw: Complex64) -> [f64; 3] {
    let r = 1.0 + w.norm_sqr();
    let r2 = r * r;
    let (a, b) = (w.re, w.im);
    let j = [
        [2.0 / r - 4.0 * a * a / r2, -4.0 * a * b / r2],
        [-4.0 * a * b / r2, 2.0 / r - 4.0 * b * b / r2],
        [4.0 * a / r2, 4.0 * b / r2],
    ];
    [
        j[0][0] * dw.re + j[0][1] * dw.im,
        j[1][0] * dw.re + j[1][1] * dw.im,
        j[2][0] * dw.re + j[2][1] * dw.im,
    ]
}

impl PlanarMap for SphereHarmonic {
    fn dim(&self) -> usize {
        3
    }

    fn kind(&self) -> PlanarKind {
        PlanarKind::SphereHarmonic
    }

    fn value(&self, x: f64, y: f64) -> Vec<f64> {
        let (w, _) = self.w_and_derivative(x, y);
        inverse_stereo(w).to_vec()
    }

    fn gradient(&self, x: f64, y: f64) -> [Vec<f64>; 2] {
        let (w, dw) = self.w_and_derivative(x, y);
        [
            inverse_stereo_differential(w, dw).to_vec(),
            inverse_stereo_differential(w, Complex64::i() * dw).to_vec(),
        ]
    }

    fn laplacian(&self, x: f64, y: f64) -> Vec<f64> {
        // Delta(sigma o w) = |w'|^2 (Delta sigma)(w) and
        // Delta sigma = -|grad sigma|^2 sigma = -8 / (1 + |w|^2)^2 sigma.
        let (w, dw) = self.w_and_derivative(x, y);
        let r = 1.0 + w.norm_sqr();
        let factor = -8.0 * dw.norm_sqr() / (r * r);
        inverse_stereo(w).iter().map(|v| factor * v).collect()
    }
}

/// `u = (x^2, y)`: `Delta u = (2, 0)` so `d_x u . Delta u = 4x` is nonzero.
#[derive(Debug, Clone, Copy, Default)]
pub struct QuadraticControl;

impl PlanarMap for QuadraticControl {
    fn dim(&self) -> usize {
        2
    }

    fn kind(&self) -> PlanarKind {
        PlanarKind::Control
    }

    fn value(&self, x: f64, y: f64) -> Vec<f64> {
        vec![x * x, y]
    }

    fn gradient(&self, x: f64, _: f64) -> [Vec<f64>; 2] {
        [vec![2.0 * x, 0.0], vec![0.0, 1.0]]
    }

    fn laplacian(&self, _: f64, _: f64) -> Vec<f64> {
        vec![2.0, 0.0]
    }
}

/// `u(. + shift)` for any planar map.
#[derive(Clone)]
pub struct Shifted {
    inner: Arc<dyn PlanarMap>,
    shift: [f64; 2],
}

impl Shifted {
    pub fn new(inner: Arc<dyn PlanarMap>, shift: [f64; 2]) -> Self {
        Self { inner, shift }
    }
}

impl PlanarMap for Shifted {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn kind(&self) -> PlanarKind {
        self.inner.kind()
    }

    fn value(&self, x: f64, y: f64) -> Vec<f64> {
        self.inner.value(x + self.shift[0], y + self.shift[1])
    }

    fn gradient(&self, x: f64, y: f64) -> [Vec<f64>; 2] {
        self.inner.gradient(x + self.shift[0], y + self.shift[1])
    }

    fn laplacian(&self, x: f64, y: f64) -> Vec<f64> {
        self.inner.laplacian(x + self.shift[0], y + self.shift[1])
    }
}

/// Parses a circle-map identifier into a grid map.
///
/// Recognized forms: `identity`, `blaschke:<a>[/<a>...]` with each factor
/// `re`, `re+imi` or `re-imi`, `negctrl:1` (raw control), `negctrl:2`
/// (control projected to the circle), `const:<x>/<y>`.
pub fn circle_map(id: &str, n: usize) -> Result<GridMap1D> {
    let (kind, arg) = id.split_once(':').unwrap_or((id, ""));
    match kind {
        "identity" => BlaschkeProduct::identity().trace(n),
        "blaschke" => {
            let factors = arg.split('/').map(parse_complex).collect::<Result<Vec<_>>>()?;
            BlaschkeProduct::new(factors, 0.0)?.trace(n)
        }
        "negctrl" => match arg {
            "1" | "" => negative_control(n),
            "2" => negative_control_sphere(n),
            _ => Err(Error::InvalidParameter(format!("unknown negative control {id}"))),
        },
        "const" => {
            let p = arg
                .split('/')
                .map(|s| s.trim().parse::<f64>().map_err(|_| bad_number(s)))
                .collect::<Result<Vec<_>>>()?;
            constant_map(n, &p)
        }
        _ => Err(Error::InvalidParameter(format!("unknown circle map id {id}"))),
    }
}

/// Whether a circle-map identifier names a negative control.
pub fn is_negative_control(id: &str) -> bool {
    id.starts_with("negctrl")
}

fn bad_number(s: &str) -> Error {
    Error::InvalidParameter(format!("cannot parse number '{s}'"))
}

/// Parses `re`, `re+imi`, `re-imi` or `imi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not the leading one or part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "+" | "" => "1",
            "-" => "-1",
            other => other,
        };
        let re: f64 = re.parse().map_err(|_| bad_number(s))?;
        let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad_number(s))?;
        Ok(Complex64::new(re, im))
    } else {
        s.parse::<f64>()
            .map(|v| Complex64::new(v, 0.0))
            .map_err(|_| bad_number(s))
    }
}

/// Planar maps by identifier: `holo:1`, `holo:z`, `holo:z2`, `holo:z3`,
/// `s2:z`, `s2:z2`, `re:z2+z` (scalar real part, not conformal) and the
/// hypothesis-breaking `broken:x2y`.
pub fn planar_map(id: &str) -> Result<Arc<dyn PlanarMap>> {
    let poly = |name: &str| -> Result<ComplexPoly> {
        match name {
            "1" => Ok(ComplexPoly::from_real(&[1.0])),
            "z" => Ok(ComplexPoly::monomial(1)),
            "z2" => Ok(ComplexPoly::monomial(2)),
            "z3" => Ok(ComplexPoly::monomial(3)),
            "z2+z" => Ok(ComplexPoly::from_real(&[0.0, 1.0, 1.0])),
            _ => Err(Error::InvalidParameter(format!("unknown polynomial {name}"))),
        }
    };
    let (kind, arg) = id.split_once(':').unwrap_or((id, ""));
    Ok(match kind {
        "holo" => Arc::new(holomorphic_planar(poly(arg)?)),
        "s2" => Arc::new(SphereHarmonic::polynomial(poly(arg)?)),
        "re" => Arc::new(HarmonicPlanar::new(vec![poly(arg)?])),
        "broken" if arg == "x2y" => Arc::new(QuadraticControl),
        _ => return Err(Error::InvalidParameter(format!("unknown planar map id {id}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::analyze;

    #[test]
    fn blaschke_rejects_outside_disk() {
        assert!(matches!(
            BlaschkeProduct::real(&[1.0]),
            Err(Error::BlaschkeOutOfDisk(_))
        ));
        let b = BlaschkeProduct::real(&[0.95]).unwrap();
        assert!(matches!(b.trace(64), Err(Error::BlaschkeUnresolvable(_))));
    }

    #[test]
    fn identity_trace_is_identity() {
        let u = BlaschkeProduct::real(&[0.0]).unwrap().trace(32).unwrap();
        for j in 0..32 {
            let t = u.angle(j);
            assert!((u.point(j)[0] - t.cos()).abs() < 1e-15);
            assert!((u.point(j)[1] - t.sin()).abs() < 1e-15);
        }
        assert!(u.is_sphere_valued());
    }

    #[test]
    fn two_factor_trace_is_unimodular() {
        let b = BlaschkeProduct::real(&[0.3, -0.2]).unwrap();
        for j in 0..64 {
            let z = Complex64::from_polar(1.0, j as f64 * 0.1);
            assert!((b.eval(z).norm() - 1.0).abs() < 1e-14);
        }
        assert!(b.trace(128).is_ok());
    }

    #[test]
    fn negative_control_fourier_data() {
        let s = analyze(&negative_control(64).unwrap());
        // a_k = Re(c_k + c_{-k}) / 2, b_k = Re(i (c_k - c_{-k})) / 2
        let a = |k: i64, c: usize| (s.coeff(k, c) + s.coeff(-k, c)).re / 2.0;
        let b = |k: i64, c: usize| (Complex64::i() * (s.coeff(k, c) - s.coeff(-k, c))).re / 2.0;
        assert!(a(1, 0).abs() < 1e-15 && a(1, 1).abs() < 1e-15);
        assert!(b(1, 0).abs() < 1e-15 && (b(1, 1) - 0.5).abs() < 1e-15);
        assert!((a(2, 0) - 0.5).abs() < 1e-15 && a(2, 1).abs() < 1e-15);
        assert!(b(2, 0).abs() < 1e-15 && b(2, 1).abs() < 1e-15);
    }

    #[test]
    fn perturbation_properties() {
        let u = BlaschkeProduct::identity().trace(128).unwrap();
        assert!(perturb_tangent(&u, 0.0, 7).unwrap().sup_distance(&u).unwrap() < 1e-15);
        let p = perturb_tangent(&u, 0.1, 42).unwrap();
        assert!(p.points().all(|q| (norm(q) - 1.0).abs() < 1e-14));
        assert_eq!(p, perturb_tangent(&u, 0.1, 42).unwrap());
        assert_ne!(p, perturb_tangent(&u, 0.1, 43).unwrap());
        let d = p.sup_distance(&u).unwrap();
        assert!(d > 0.05 && d < 0.11, "{d}");
    }

    #[test]
    fn perturbation_in_three_dimensions() {
        let u = GridMap1D::from_fn(64, 3, |t, o| {
            o[0] = t.cos() * 0.6;
            o[1] = t.sin() * 0.6;
            o[2] = 0.8;
        })
        .unwrap()
        .into_sphere_valued()
        .unwrap();
        let p = perturb_tangent(&u, 0.2, 1).unwrap();
        assert!(p.points().all(|q| (norm(q) - 1.0).abs() < 1e-14));
        assert!(p.sup_distance(&u).unwrap() > 0.0);
    }

    #[test]
    fn winding_numbers() {
        let id = BlaschkeProduct::identity().trace(64).unwrap();
        assert!((winding_number(&id).unwrap() - 1.0).abs() < 1e-12);
        let b = BlaschkeProduct::real(&[0.3, -0.2]).unwrap().trace(256).unwrap();
        assert!((winding_number(&b).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn holomorphic_planar_examples() {
        let u = holomorphic_planar(ComplexPoly::monomial(2));
        let (x, y) = (0.7, -1.2);
        assert_eq!(u.value(x, y), vec![x * x - y * y, 2.0 * x * y]);
        let [gx, gy] = u.gradient(x, y);
        let g2 = dot(&gx, &gx) + dot(&gy, &gy);
        assert!((g2 - 8.0 * (x * x + y * y)).abs() < 1e-13);
        assert_eq!(u.laplacian(x, y), vec![0.0, 0.0]);

        let c = holomorphic_planar(ComplexPoly::from_real(&[2.0]));
        let [gx, gy] = c.gradient(1.0, 1.0);
        assert!(gx.iter().chain(&gy).all(|v| *v == 0.0));

        let id = holomorphic_planar(ComplexPoly::monomial(1));
        let [gx, gy] = id.gradient(0.3, 0.4);
        assert_eq!((dot(&gx, &gx), dot(&gy, &gy)), (1.0, 1.0));
    }

    #[test]
    fn sphere_harmonic_examples() {
        let u = SphereHarmonic::polynomial(ComplexPoly::monomial(1));
        assert_eq!(u.value(0.0, 0.0), vec![0.0, 0.0, -1.0]);
        let v = u.value(1.0, 0.5);
        assert!((norm(&v) - 1.0).abs() < 1e-15);
        let lap = u.laplacian(1.0, 0.5);
        assert!(norm(&lap) > 0.1);
        let [gx, gy] = u.gradient(1.0, 0.5);
        assert!(dot(&gx, &lap).abs() < 1e-8);
        assert!(dot(&gy, &lap).abs() < 1e-8);

        let c = SphereHarmonic::polynomial(ComplexPoly::from_real(&[0.5]));
        assert!(norm(&c.laplacian(0.2, 0.2)) == 0.0);
    }

    #[test]
    fn parse_complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.5+0.2i").unwrap(), Complex64::new(0.5, 0.2));
        assert_eq!(parse_complex("-0.3-0.1i").unwrap(), Complex64::new(-0.3, -0.1));
        assert_eq!(parse_complex("0.2i").unwrap(), Complex64::new(0.0, 0.2));
        assert_eq!(parse_complex("1e-1+2e-1i").unwrap(), Complex64::new(0.1, 0.2));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn ids_resolve() {
        assert!(circle_map("blaschke:0.3/-0.2", 64).is_ok());
        assert!(circle_map("blaschke:0.5+0.2i", 64).is_ok());
        assert!(circle_map("negctrl:2", 64).unwrap().is_sphere_valued());
        assert!(circle_map("const:1/0", 64).unwrap().is_sphere_valued());
        assert!(circle_map("nope", 64).is_err());
        assert!(planar_map("holo:z2").is_ok());
        assert!(planar_map("broken:x2y").is_ok());
        assert!(planar_map("holo:z9").is_err());
    }
}
