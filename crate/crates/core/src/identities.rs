//! Verifiers for the one-dimensional identities: the stationarity equation,
//! the sphere Euler-Lagrange equation, the Pohozaev identities on the circle
//! and on the line, and the quadratic relations among Fourier coefficients of
//! stationary maps.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conformal::{precompose, stereographic, stereographic_jacobian, MobiusDisk};
use crate::error::{Error, Result};
use crate::kernels::poisson_g;
use crate::report::IdentityReport;
use crate::spectral::{
    analyze, dot, fmt_sig17, half_laplacian, norm, synthesize, theta_derivative, GridMap1D, Spectrum,
};

/// Times at which the kernel identities are checked by default.
pub const DEFAULT_T_GRID: [f64; 4] = [0.1, 0.5, 1.0, 2.0];

/// Tolerance used for reruns on Möbius-reparametrized maps.
pub const MOBIUS_TOLERANCE: f64 = 1e-8;

/// Relative quadrature error estimate above which [`poho_r`] warns.
pub const POLE_WARN: f64 = 1e-8;

/// Pointwise residual `d_theta u . (-Delta)^{1/2} u`.
#[derive(Debug, Clone, PartialEq)]
pub struct StationarityResidual {
    pub field: Vec<f64>,
    pub sup: f64,
    /// `sup |d_theta u| * sup |(-Delta)^{1/2} u|`, which bounds the residual.
    pub scale: f64,
}

/// Spectrum of `u` with coefficients below [`roundoff_floor`] removed.
///
/// Derivative multipliers amplify FFT round-off in high modes by up to
/// `N/2`; dropping sub-round-off coefficients keeps residual floors from
/// growing with the grid.
pub fn denoised_spectrum(u: &GridMap1D) -> Spectrum {
    let spec = analyze(u);
    let floor = roundoff_floor(u.grid_size(), spec.max_modulus());
    spec.chopped(floor)
}

fn half_laplacian_denoised(u: &GridMap1D) -> GridMap1D {
    synthesize(&half_laplacian(&denoised_spectrum(u)), u.grid_size()).expect("same grid")
}

pub fn stationarity_residual(u: &GridMap1D) -> StationarityResidual {
    let spec = denoised_spectrum(u);
    let du = synthesize(&theta_derivative(&spec), u.grid_size()).expect("same grid");
    let lap = synthesize(&half_laplacian(&spec), u.grid_size()).expect("same grid");
    let field: Vec<f64> = du.points().zip(lap.points()).map(|(p, q)| dot(p, q)).collect();
    let sup = field.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    StationarityResidual {
        field,
        sup,
        scale: du.sup_norm() * lap.sup_norm(),
    }
}

pub fn stationarity_report(u: &GridMap1D, tol: f64) -> IdentityReport {
    let r = stationarity_residual(u);
    IdentityReport::residual("stationarity", r.sup, 0.0, r.sup, r.scale, tol).param("N", u.grid_size())
}

/// Sup over the grid of the tangential part of `(-Delta)^{1/2} u`.
///
/// For circle targets this is `|<(-Delta)^{1/2} u, J u>|` with `J` the
/// quarter turn; otherwise the norm of the projection onto `T_u S^{m-1}`.
pub fn el_residual_sphere(u: &GridMap1D) -> Result<f64> {
    if !u.is_sphere_valued() {
        let (index, norm) = u
            .points()
            .map(norm)
            .enumerate()
            .max_by(|a, b| (a.1 - 1.0).abs().total_cmp(&(b.1 - 1.0).abs()))
            .unwrap_or((0, 0.0));
        return Err(Error::NotSphereValued { index, norm });
    }
    Ok(tangential_part(u, &half_laplacian_denoised(u))
        .iter()
        .map(|v| norm(v))
        .fold(0.0, f64::max))
}

/// Tangential projection of `field` along a sphere-valued map.
pub(crate) fn tangential_part(u: &GridMap1D, field: &GridMap1D) -> Vec<Vec<f64>> {
    u.points()
        .zip(field.points())
        .map(|(p, f)| {
            if p.len() == 2 {
                let s = -f[0] * p[1] + f[1] * p[0];
                vec![-s * p[1], s * p[0]]
            } else {
                let along = dot(f, p);
                f.iter().zip(p).map(|(a, b)| a - along * b).collect()
            }
        })
        .collect()
}

pub fn el_report(u: &GridMap1D, tol: f64) -> Result<IdentityReport> {
    let residual = el_residual_sphere(u)?;
    let scale = half_laplacian_denoised(u).sup_norm();
    Ok(IdentityReport::residual("euler_lagrange", residual, 0.0, residual, scale, tol).param("N", u.grid_size()))
}

fn check_times(t_grid: &[f64]) -> Result<()> {
    match t_grid.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        Some(&t) => Err(Error::NonPositiveTime(t)),
        None => Ok(()),
    }
}

/// Trapezoid sums of `u` against two scalar weights, with the matching
/// absolute-value sums.
struct WeightedPair {
    first: Vec<f64>,
    second: Vec<f64>,
    first_abs: f64,
    second_abs: f64,
}

impl WeightedPair {
    fn accumulate<I>(m: usize, h: f64, terms: I) -> Self
    where
        I: Iterator<Item = (Vec<f64>, f64, f64)>,
    {
        let mut out = Self {
            first: vec![0.0; m],
            second: vec![0.0; m],
            first_abs: 0.0,
            second_abs: 0.0,
        };
        for (v, w1, w2) in terms {
            for ((f, s), x) in out.first.iter_mut().zip(&mut out.second).zip(&v) {
                *f += h * w1 * x;
                *s += h * w2 * x;
            }
            let nv = norm(&v);
            out.first_abs += h * (w1 * nv).abs();
            out.second_abs += h * (w2 * nv).abs();
        }
        out
    }

    fn report(&self, name: &str, tol: f64) -> IdentityReport {
        let lhs = dot(&self.first, &self.first);
        let rhs = dot(&self.second, &self.second);
        let bound = self.first_abs.powi(2) + self.second_abs.powi(2);
        IdentityReport::bounded(name, lhs, rhs, bound, tol)
    }
}

/// `|int u d_t F dtheta|^2 = |int u d_theta F dtheta|^2` for each `t`.
///
/// The trigonometric interpolant of `u` is integrated against the kernel
/// series term by term, `int e^{i n theta} d_t F = -|n| e^{-t|n|}` and
/// `int e^{i n theta} d_theta F = -i n e^{-t|n|}`, which is exact for the
/// interpolant at every `t` (a grid sum would alias for `t N` small).
pub fn poho_s1(u: &GridMap1D, t_grid: &[f64], tol: f64) -> Result<Vec<IdentityReport>> {
    check_times(t_grid)?;
    let spec = analyze(u);
    let m = u.dim();
    Ok(t_grid
        .iter()
        .map(|&t| {
            let mut pair = WeightedPair {
                first: vec![0.0; m],
                second: vec![0.0; m],
                first_abs: 0.0,
                second_abs: 0.0,
            };
            for k in spec.modes() {
                let kf = k as f64;
                let decay = (-t * kf.abs()).exp();
                let wt = Complex64::new(-kf.abs() * decay, 0.0);
                let wx = Complex64::new(0.0, -kf * decay);
                let mode = spec.mode(k);
                for (c, coeff) in mode.iter().enumerate() {
                    pair.first[c] += (coeff * wt).re;
                    pair.second[c] += (coeff * wx).re;
                }
                let size = mode.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                pair.first_abs += size * wt.norm();
                pair.second_abs += size * wx.norm();
            }
            pair.report("poho_s1", tol).param_f64("t", t).param("N", u.grid_size())
        })
        .collect())
}

/// `|int u cos(theta)|^2 = |int u sin(theta)|^2`.
pub fn poho_s1_first(u: &GridMap1D, tol: f64) -> IdentityReport {
    let n = u.grid_size();
    let h = 2.0 * PI / n as f64;
    WeightedPair::accumulate(
        u.dim(),
        h,
        (0..n).map(|j| {
            let (s, c) = u.angle(j).sin_cos();
            (u.point(j).to_vec(), c, s)
        }),
    )
    .report("poho_s1_first", tol)
    .param("N", n)
}

/// Round-off level of FFT coefficients on an `n`-point grid when the
/// largest coefficient has modulus `largest`.
pub fn roundoff_floor(n: usize, largest: f64) -> f64 {
    8.0 * f64::EPSILON * (n as f64).log2() * largest
}

/// Real Fourier coefficients `a_k = (1/2pi) int u cos(k theta)` and
/// `b_k = (1/2pi) int u sin(k theta)`, so that `c_k = a_k - i b_k`.
///
/// Entries below [`roundoff_floor`] are set to zero, so that relations
/// among structurally vanishing modes are not judged on FFT noise.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierData {
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
}

impl FourierData {
    /// Coefficients for `k = 0..=k_max`, `k_max < N/2`.
    pub fn from_spectrum(spec: &Spectrum, k_max: usize) -> Result<Self> {
        let available = spec.max_mode().saturating_sub(1);
        if k_max > available {
            return Err(Error::OrderTooHigh {
                requested: k_max,
                available,
            });
        }
        let floor = roundoff_floor(spec.grid_size(), spec.max_modulus());
        let chop = |v: f64| if v.abs() < floor { 0.0 } else { v };
        let mut a = Vec::with_capacity(k_max + 1);
        let mut b = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max as i64 {
            let (pos, neg) = (spec.mode(k), spec.mode(-k));
            a.push(pos.iter().zip(neg).map(|(p, q)| chop(((p + q) * 0.5).re)).collect());
            b.push(
                pos.iter()
                    .zip(neg)
                    .map(|(p, q)| chop(((q - p) / Complex64::new(0.0, 2.0)).re))
                    .collect(),
            );
        }
        Ok(Self { a, b })
    }

    pub fn of_map(u: &GridMap1D, k_max: usize) -> Result<Self> {
        Self::from_spectrum(&analyze(u), k_max)
    }

    pub fn max_order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self, k: usize) -> &[f64] {
        &self.a[k]
    }

    pub fn b(&self, k: usize) -> &[f64] {
        &self.b[k]
    }

    /// Coefficients of `theta -> u(theta + alpha)`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        for k in 0..self.a.len() {
            let (s, c) = (k as f64 * alpha).sin_cos();
            for comp in 0..self.a[k].len() {
                let (ak, bk) = (self.a[k][comp], self.b[k][comp]);
                a[k][comp] = ak * c + bk * s;
                b[k][comp] = bk * c - ak * s;
            }
        }
        Self { a, b }
    }

    /// `(S_n, T_n, scale_n)`.
    pub fn relation(&self, n: usize) -> Result<(f64, f64, f64)> {
        if n < 2 || n - 1 > self.max_order() {
            return Err(Error::OrderTooHigh {
                requested: n,
                available: self.max_order() + 1,
            });
        }
        let (mut s, mut t, mut scale) = (0.0, 0.0, 0.0);
        for k in 1..n {
            let j = n - k;
            let w = (j * k) as f64;
            let (ak, bk, aj, bj) = (self.a(k), self.b(k), self.a(j), self.b(j));
            s += w * (dot(ak, aj) - dot(bk, bj));
            t += w * (dot(ak, bj) + dot(bk, aj));
            scale += w * (norm(ak) * norm(aj) + norm(bk) * norm(bj));
        }
        Ok((s, t, scale))
    }
}

/// One member of the family `S_n = T_n = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierRelation {
    pub n: usize,
    pub s: f64,
    pub t: f64,
    pub scale: f64,
    pub report: IdentityReport,
}

/// `S_n` and `T_n` for `n = 2..=n_max`, each judged by
/// `max(|S_n|, |T_n|) <= tol * scale_n`.
pub fn fourier_relations(u: &GridMap1D, n_max: usize, tol: f64) -> Result<Vec<FourierRelation>> {
    let data = FourierData::of_map(u, n_max.saturating_sub(1).max(1))?;
    (2..=n_max)
        .map(|n| {
            let (s, t, scale) = data.relation(n)?;
            let report = IdentityReport::residual("fourier_relation", s, t, s.abs().max(t.abs()), scale, tol)
                .param("n", n)
                .param("N", u.grid_size());
            Ok(FourierRelation { n, s, t, scale, report })
        })
        .collect()
}

/// Residual of `cos(n alpha) S_n + sin(n alpha) T_n = 0`, the relation for
/// the rotated map `u(. + alpha)`.
pub fn fourier_relation_alpha(u: &GridMap1D, n: usize, alpha: f64, tol: f64) -> Result<IdentityReport> {
    let data = FourierData::of_map(u, n.saturating_sub(1).max(1))?;
    let (s, t, scale) = data.relation(n)?;
    let (sn, cs) = (n as f64 * alpha).sin_cos();
    let combined = cs * s + sn * t;
    Ok(
        IdentityReport::residual("fourier_relation_alpha", combined, 0.0, combined.abs(), scale, tol)
            .param("n", n)
            .param_f64("alpha", alpha)
            .param("N", u.grid_size()),
    )
}

/// The explicit relations for `n = 2, 3, 4`:
///
/// ```text
/// |a1| = |b1|                 a1.b1 = 0
/// a1.a2 = b1.b2               a1.b2 = -a2.b1
/// |a2|^2 - |b2|^2 = 3/2 (b1.b3 - a1.a3)
/// a2.b2 = -3/4 (a1.b3 + b1.a3)
/// ```
pub fn low_order_relations(u: &GridMap1D, tol: f64) -> Result<Vec<IdentityReport>> {
    let d = FourierData::of_map(u, 3)?;
    let (a1, a2, a3) = (d.a(1), d.a(2), d.a(3));
    let (b1, b2, b3) = (d.b(1), d.b(2), d.b(3));
    let n = norm;
    let rows = [
        ("n2_norm", n(a1), n(b1), n(a1) + n(b1)),
        ("n2_orth", dot(a1, b1), 0.0, n(a1) * n(b1)),
        ("n3_cos", dot(a1, a2), dot(b1, b2), n(a1) * n(a2) + n(b1) * n(b2)),
        ("n3_sin", dot(a1, b2), -dot(a2, b1), n(a1) * n(b2) + n(a2) * n(b1)),
        (
            "n4_cos",
            dot(a2, a2) - dot(b2, b2),
            1.5 * (dot(b1, b3) - dot(a1, a3)),
            dot(a2, a2) + dot(b2, b2) + 1.5 * (n(b1) * n(b3) + n(a1) * n(a3)),
        ),
        (
            "n4_sin",
            dot(a2, b2),
            -0.75 * (dot(a1, b3) + dot(b1, a3)),
            n(a2) * n(b2) + 0.75 * (n(a1) * n(b3) + n(b1) * n(a3)),
        ),
    ];
    Ok(rows
        .iter()
        .map(|&(name, lhs, rhs, scale)| {
            IdentityReport::residual("low_order_relation", lhs, rhs, (lhs - rhs).abs(), scale, tol)
                .param("relation", name)
                .param("N", u.grid_size())
        })
        .collect())
}

/// Reruns the stationarity check and the Fourier relations on `u o M`.
pub fn mobius_invariance_suite(u: &GridMap1D, m: &MobiusDisk, n_max: usize, tol: f64) -> Result<Vec<IdentityReport>> {
    let v = precompose(u, m)?;
    let tag = |r: IdentityReport| {
        r.param_f64("mobius_alpha", m.alpha())
            .param_f64("mobius_a_re", m.a().re)
            .param_f64("mobius_a_im", m.a().im)
    };
    let mut out = vec![tag(stationarity_report(&v, tol))];
    out.extend(fourier_relations(&v, n_max, tol)?.into_iter().map(|r| tag(r.report)));
    Ok(out)
}

/// Value of a grid map at the pole `theta = -pi/2` of the stereographic chart.
pub fn pole_value(v: &GridMap1D) -> Vec<f64> {
    v.point(3 * v.grid_size() / 4).to_vec()
}

/// Line-kernel weights times the stereographic Jacobian at `theta`:
/// `(d_t G(t, P(theta)), d_x G(t, P(theta))) * |P'(theta)|`, with their
/// limits `(1 / 2pi, 0)` at the pole.
fn line_kernel_on_circle(t: f64, theta: f64) -> Result<(f64, f64)> {
    match stereographic(theta) {
        Ok(x) => {
            let k = poisson_g(t, x)?;
            let jac = stereographic_jacobian(x);
            Ok((k.d_dt * jac, k.d_dspace * jac))
        }
        Err(Error::StereographicPole(_)) => Ok((1.0 / (2.0 * PI), 0.0)),
        Err(e) => Err(e),
    }
}

/// `|int d_t G (u - u0) dx|^2 = |int d_x G (u - u0) dx|^2` on the line, for
/// `u` given through `v = u o P` on the circle grid.
///
/// Integrals are transported to the circle by `x = P(theta)` and summed by
/// the trapezoid rule, which is spectrally accurate since the transported
/// integrands are smooth through the pole. The difference against the rule
/// on every other point estimates the error, which concentrates near the
/// pole; a warning is logged when it exceeds [`POLE_WARN`].
///
/// The integrability hypothesis `int |u - u0| dx < infinity` is probed by
/// the decay exponent of `|v - u0|` at the pole (`p > 1` is needed) and
/// recorded in the report.
pub fn poho_r(v: &GridMap1D, u0: &[f64], t_grid: &[f64], tol: f64) -> Result<Vec<IdentityReport>> {
    check_times(t_grid)?;
    if u0.len() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: u0.len(),
        });
    }
    let n = v.grid_size();
    let h = 2.0 * PI / n as f64;
    let diff: Vec<Vec<f64>> = v
        .points()
        .map(|p| p.iter().zip(u0).map(|(a, b)| a - b).collect())
        .collect();

    let pole = 3 * n / 4;
    let near = norm(&diff[pole + 1]).max(norm(&diff[pole - 1]));
    let next = norm(&diff[pole + 2]).max(norm(&diff[pole - 2]));
    let exponent = if near == 0.0 {
        f64::INFINITY
    } else {
        (next / near).log2()
    };
    let hypothesis = if exponent > 1.0 {
        "satisfied"
    } else {
        "not literally satisfied"
    };

    t_grid
        .iter()
        .map(|&t| {
            let weights = (0..n)
                .map(|j| line_kernel_on_circle(t, v.angle(j)))
                .collect::<Result<Vec<_>>>()?;
            let terms = |stride: usize| {
                WeightedPair::accumulate(
                    v.dim(),
                    h * stride as f64,
                    (0..n)
                        .step_by(stride)
                        .map(|j| (diff[j].clone(), weights[j].0, weights[j].1)),
                )
            };
            let full = terms(1);
            let coarse = terms(2);
            let spread = |a: &[f64], b: &[f64]| norm(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>());
            let size = full.first_abs.max(full.second_abs);
            let estimate = if size == 0.0 {
                0.0
            } else {
                spread(&full.first, &coarse.first).max(spread(&full.second, &coarse.second)) / size
            };
            if estimate > POLE_WARN {
                log::warn!(
                    "line identity at t = {t}: pole-neighborhood quadrature error estimate {estimate:e} at N = {n}"
                );
            }
            Ok(full
                .report("poho_r", tol)
                .param_f64("t", t)
                .param("N", n)
                .param("u0", u0.iter().map(|x| fmt_sig17(*x)).collect::<Vec<_>>().join("/"))
                .param_f64("quadrature_error_estimate", estimate)
                .param_f64("decay_exponent", exponent)
                .param("hypothesis", hypothesis))
        })
        .collect()
}
