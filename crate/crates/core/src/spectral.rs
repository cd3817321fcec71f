//! Circle maps on a uniform grid and their Fourier representation.
//!
//! A [`GridMap1D`] holds samples of an `R^m`-valued map at the angles
//! `theta_j = 2 pi j / N`. Its [`Spectrum`] stores the coefficients
//!
//! ```text
//! c_n = (1 / 2pi) * integral u(theta) e^{-i n theta} d theta,   |n| <= N/2
//! ```
//!
//! so that `u = sum_n c_n e^{i n theta}` and the half-Laplacian on the circle
//! is the multiplier `|n|`. The Nyquist coefficient is split evenly between
//! `n = N/2` and `n = -N/2`, which makes the trigonometric interpolant real
//! for real data.
//!
//! All operators act coefficient-wise in frequency space. Pointwise products
//! (dot products in residuals) are formed in physical space after synthesis.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Tolerance used to validate the sphere-valued flag.
pub const SPHERE_TOLERANCE: f64 = 1e-12;

pub(crate) fn check_grid(n: usize) -> Result<()> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidGridSize(n));
    }
    Ok(())
}

/// Uniform samples of an `R^m`-valued map on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMap1D {
    n: usize,
    m: usize,
    samples: Vec<f64>,
    sphere_valued: bool,
}

impl GridMap1D {
    /// Samples are laid out point-major: component `c` of point `j` lives at
    /// `j * m + c`.
    pub fn new(n: usize, m: usize, samples: Vec<f64>) -> Result<Self> {
        check_grid(n)?;
        if m == 0 || samples.len() != n * m {
            return Err(Error::ShapeMismatch {
                len: samples.len(),
                n,
                m,
            });
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            n,
            m,
            samples,
            sphere_valued: false,
        })
    }

    /// Builds a map by evaluating `f(theta_j, out)` at every grid angle.
    pub fn from_fn<F>(n: usize, m: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(f64, &mut [f64]),
    {
        check_grid(n)?;
        let mut samples = vec![0.0; n * m];
        for (j, chunk) in samples.chunks_mut(m.max(1)).enumerate() {
            f(grid_angle(n, j), chunk);
        }
        Self::new(n, m, samples)
    }

    /// Flags the map as taking values in the unit sphere of `R^m`, checking
    /// every sample against [`SPHERE_TOLERANCE`].
    pub fn into_sphere_valued(mut self) -> Result<Self> {
        for j in 0..self.n {
            let norm = norm(self.point(j));
            if (norm - 1.0).abs() > SPHERE_TOLERANCE {
                return Err(Error::NotSphereValued { index: j, norm });
            }
        }
        self.sphere_valued = true;
        Ok(self)
    }

    /// Projects every sample radially onto the unit sphere and sets the flag.
    pub fn normalized(mut self) -> Result<Self> {
        let m = self.m;
        for (j, p) in self.samples.chunks_mut(m).enumerate() {
            let r = norm(p);
            if r == 0.0 || !r.is_finite() {
                return Err(Error::NotSphereValued { index: j, norm: r });
            }
            p.iter_mut().for_each(|v| *v /= r);
        }
        self.sphere_valued = true;
        Ok(self)
    }

    pub fn grid_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn is_sphere_valued(&self) -> bool {
        self.sphere_valued
    }

    pub fn angle(&self, j: usize) -> f64 {
        grid_angle(self.n, j)
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.samples[j * self.m..(j + 1) * self.m]
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.samples.chunks(self.m)
    }

    /// Pointwise Euclidean dot product with another map on the same grid.
    pub fn pointwise_dot(&self, other: &GridMap1D) -> Result<Vec<f64>> {
        self.check_same_shape(other)?;
        Ok(self.points().zip(other.points()).map(|(p, q)| dot(p, q)).collect())
    }

    /// Largest pointwise Euclidean norm.
    pub fn sup_norm(&self) -> f64 {
        self.points().map(norm).fold(0.0, f64::max)
    }

    /// Largest pointwise Euclidean distance to another map on the same grid.
    pub fn sup_distance(&self, other: &GridMap1D) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .points()
            .zip(other.points())
            .map(|(p, q)| p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_same_shape(&self, other: &GridMap1D) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SynthesisGrid {
                spectrum: other.n,
                target: self.n,
            });
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: other.m,
            });
        }
        Ok(())
    }
}

pub(crate) fn grid_angle(n: usize, j: usize) -> f64 {
    2.0 * PI * j as f64 / n as f64
}

pub(crate) fn dot(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(p: &[f64]) -> f64 {
    dot(p, p).sqrt()
}

/// Complex Fourier coefficients `c_n`, `-N/2 <= n <= N/2`, of an `R^m`-valued
/// circle map.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    m: usize,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    /// A spectrum with every coefficient zero.
    pub fn zeros(n: usize, m: usize) -> Result<Self> {
        check_grid(n)?;
        if m == 0 {
            return Err(Error::ShapeMismatch { len: 0, n, m });
        }
        Ok(Self {
            n,
            m,
            coeffs: vec![Complex64::new(0.0, 0.0); (n + 1) * m],
        })
    }

    pub fn grid_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// Largest frequency stored, `N/2`.
    pub fn max_mode(&self) -> usize {
        self.n / 2
    }

    fn index(&self, k: i64, comp: usize) -> usize {
        let half = (self.n / 2) as i64;
        assert!(k.abs() <= half, "mode {k} outside +-{half}");
        assert!(comp < self.m, "component {comp} outside dimension {}", self.m);
        (k + half) as usize * self.m + comp
    }

    pub fn coeff(&self, k: i64, comp: usize) -> Complex64 {
        self.coeffs[self.index(k, comp)]
    }

    /// Sets a single coefficient. At `|k| = N/2` the caller is responsible for
    /// keeping the Nyquist pair symmetric.
    pub fn set_coeff(&mut self, k: i64, comp: usize, value: Complex64) {
        let i = self.index(k, comp);
        self.coeffs[i] = value;
    }

    /// The component vector `c_k` as complex numbers.
    pub fn mode(&self, k: i64) -> &[Complex64] {
        let i = self.index(k, 0);
        &self.coeffs[i..i + self.m]
    }

    /// For planar maps, the coefficient of `u^0 + i u^1` at mode `k`.
    pub fn complexified(&self, k: i64) -> Complex64 {
        assert_eq!(self.m, 2, "complexified coefficients need a planar map");
        self.coeff(k, 0) + Complex64::i() * self.coeff(k, 1)
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        let half = (self.n / 2) as i64;
        -half..=half
    }

    /// Multiplies every coefficient by `multiplier(n)`.
    pub fn map_modes<F>(&self, multiplier: F) -> Spectrum
    where
        F: Fn(i64) -> Complex64,
    {
        let mut out = self.clone();
        for k in self.modes() {
            let w = multiplier(k);
            let i = self.index(k, 0);
            for c in &mut out.coeffs[i..i + self.m] {
                *c *= w;
            }
        }
        out
    }

    /// Largest coefficient modulus.
    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Copy with every coefficient of modulus below `floor` set to zero.
    pub fn chopped(&self, floor: f64) -> Spectrum {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            if c.norm() < floor {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    /// Sum of squared moduli over all modes and components.
    pub fn l2_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Fraction of the squared coefficient mass carried by modes `|n| > N/4`.
    pub fn tail_ratio(&self) -> f64 {
        let quarter = (self.n / 4) as i64;
        let total = self.l2_squared();
        if total == 0.0 {
            return 0.0;
        }
        let tail: f64 = self
            .modes()
            .filter(|k| k.abs() > quarter)
            .flat_map(|k| self.mode(k).iter().map(|c| c.norm_sqr()))
            .sum();
        tail / total
    }

    /// Evaluates the real trigonometric interpolant at an arbitrary angle by
    /// direct summation.
    pub fn eval(&self, phi: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.m];
        self.eval_into(phi, &mut out);
        out
    }

    pub fn eval_into(&self, phi: f64, out: &mut [f64]) {
        const RESEED: i64 = 32;
        let half = (self.n / 2) as i64;
        out.iter_mut().for_each(|v| *v = 0.0);
        for (c, o) in self.mode(0).iter().zip(out.iter_mut()) {
            *o += c.re;
        }
        let step = Complex64::from_polar(1.0, phi);
        let mut rot = Complex64::new(1.0, 0.0);
        for k in 1..=half {
            rot = if k % RESEED == 0 {
                Complex64::from_polar(1.0, k as f64 * phi)
            } else {
                rot * step
            };
            let pos = self.mode(k);
            let neg = self.mode(-k);
            for ((cp, cn), o) in pos.iter().zip(neg).zip(out.iter_mut()) {
                *o += (cp * rot).re + (cn * rot.conj()).re;
            }
        }
    }

    /// Writes the coefficients as CSV: `n`, then `re_c`, `im_c` per component,
    /// 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "n")?;
        for c in 0..self.m {
            write!(w, ",re{c},im{c}")?;
        }
        writeln!(w)?;
        for k in self.modes() {
            write!(w, "{k}")?;
            for c in self.mode(k) {
                write!(w, ",{},{}", fmt_sig17(c.re), fmt_sig17(c.im))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Formats a float with 17 significant digits in scientific notation.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Discrete Fourier analysis of a grid map.
pub fn analyze(u: &GridMap1D) -> Spectrum {
    let n = u.n;
    let m = u.m;
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let mut spec = Spectrum::zeros(n, m).expect("grid already validated");
    let half = (n / 2) as i64;
    let scale = 1.0 / n as f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..m {
        for (j, b) in buf.iter_mut().enumerate() {
            *b = Complex64::new(u.samples[j * m + c], 0.0);
        }
        fft.process(&mut buf);
        for k in 0..half {
            spec.set_coeff(k, c, buf[k as usize] * scale);
            if k > 0 {
                spec.set_coeff(-k, c, buf[n - k as usize] * scale);
            }
        }
        let nyquist = buf[n / 2] * (0.5 * scale);
        spec.set_coeff(half, c, nyquist);
        spec.set_coeff(-half, c, nyquist);
    }
    spec
}

/// Samples the trigonometric interpolant of `spec` on a grid of size `n`,
/// which must be at least the spectrum's own grid.
pub fn synthesize(spec: &Spectrum, n: usize) -> Result<GridMap1D> {
    check_grid(n)?;
    if n < spec.n {
        return Err(Error::SynthesisGrid {
            spectrum: spec.n,
            target: n,
        });
    }
    let m = spec.m;
    let ifft = FftPlanner::<f64>::new().plan_fft_inverse(n);
    let mut samples = vec![0.0; n * m];
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..m {
        buf.iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        for k in spec.modes() {
            let bin = k.rem_euclid(n as i64) as usize;
            buf[bin] += spec.coeff(k, c);
        }
        ifft.process(&mut buf);
        for (j, b) in buf.iter().enumerate() {
            samples[j * m + c] = b.re;
        }
    }
    GridMap1D::new(n, m, samples)
}

/// Supported orders `s` of `(-Delta)^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractionalOrder {
    Quarter,
    Half,
}

impl FractionalOrder {
    pub fn from_f64(s: f64) -> Result<Self> {
        if s == 0.25 {
            Ok(Self::Quarter)
        } else if s == 0.5 {
            Ok(Self::Half)
        } else {
            Err(Error::UnsupportedOrder(s))
        }
    }

    fn multiplier(self, k: i64) -> f64 {
        let a = k.unsigned_abs() as f64;
        match self {
            Self::Quarter => a.sqrt(),
            Self::Half => a,
        }
    }
}

/// `(-Delta)^s` on the circle: mode `n` scaled by `|n|^{2s}`.
pub fn fractional_laplacian(spec: &Spectrum, s: f64) -> Result<Spectrum> {
    let order = FractionalOrder::from_f64(s)?;
    Ok(apply_order(spec, order))
}

pub fn apply_order(spec: &Spectrum, order: FractionalOrder) -> Spectrum {
    spec.map_modes(|k| Complex64::new(order.multiplier(k), 0.0))
}

/// The half-Laplacian `(-Delta)^{1/2}`, multiplier `|n|`.
pub fn half_laplacian(spec: &Spectrum) -> Spectrum {
    apply_order(spec, FractionalOrder::Half)
}

/// `d/dtheta`: multiplier `i n`, Nyquist pair zeroed.
pub fn theta_derivative(spec: &Spectrum) -> Spectrum {
    let half = (spec.n / 2) as i64;
    spec.map_modes(|k| {
        if k.abs() == half {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, k as f64)
        }
    })
}

/// The nonlocal energy `integral |(-Delta)^{1/4} u|^2 dtheta = 2 pi sum |n| |c_n|^2`.
pub fn half_energy(spec: &Spectrum) -> f64 {
    let sum: f64 = spec
        .modes()
        .map(|k| k.unsigned_abs() as f64 * spec.mode(k).iter().map(|c| c.norm_sqr()).sum::<f64>())
        .sum();
    2.0 * PI * sum
}

/// Uniform-grid quadrature of each component over `[0, 2 pi)`.
pub fn integrate_s1(u: &GridMap1D) -> Vec<f64> {
    let w = 2.0 * PI / u.n as f64;
    let mut out = vec![0.0; u.m];
    for p in u.points() {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    out.iter_mut().for_each(|v| *v *= w);
    out
}

/// Uniform-grid quadrature of a scalar field sampled on the same grid.
pub fn integrate_scalar(values: &[f64]) -> f64 {
    2.0 * PI / values.len() as f64 * values.iter().sum::<f64>()
}

/// `(-Delta)^{1/2} u` sampled on the working grid.
pub fn half_laplacian_map(u: &GridMap1D) -> GridMap1D {
    let spec = half_laplacian(&analyze(u));
    synthesize(&spec, u.n).expect("same grid")
}

/// `d u / dtheta` sampled on the working grid.
pub fn theta_derivative_map(u: &GridMap1D) -> GridMap1D {
    let spec = theta_derivative(&analyze(u));
    synthesize(&spec, u.n).expect("same grid")
}
