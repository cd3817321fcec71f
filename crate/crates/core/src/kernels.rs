//! Fundamental solutions of the half-heat equation on the line and the circle,
//! and the planar Gaussian weight.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A kernel value together with its time and space derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub t: f64,
    /// `x` on the line or `theta` on the circle.
    pub location: f64,
    pub value: f64,
    pub d_dt: f64,
    pub d_dspace: f64,
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveTime(t))
    }
}

/// Poisson kernel `G(t, x) = t / (pi (x^2 + t^2))` solving
/// `d_t G + (-Delta)^{1/2} G = 0` on the line.
pub fn poisson_g(t: f64, x: f64) -> Result<KernelEval> {
    check_time(t)?;
    let r2 = x * x + t * t;
    Ok(KernelEval {
        t,
        location: x,
        value: t / (PI * r2),
        d_dt: (x * x - t * t) / (PI * r2 * r2),
        d_dspace: -2.0 * x * t / (PI * r2 * r2),
    })
}

/// Number of series terms kept for the circle kernel: `e^{-t n} < 1e-16`.
pub fn circle_series_terms(t: f64) -> usize {
    (37.0 / t).ceil() as usize
}

/// Circle half-heat kernel defined by the series
/// `F(t, theta) = (1 / 2pi) sum_n e^{-t|n|} e^{i n theta}`.
pub fn circle_f(t: f64, theta: f64) -> Result<KernelEval> {
    check_time(t)?;
    let mut value = 1.0;
    let mut d_dt = 0.0;
    let mut d_dtheta = 0.0;
    for k in 1..=circle_series_terms(t) {
        let kf = k as f64;
        let decay = (-t * kf).exp();
        let (s, c) = (kf * theta).sin_cos();
        value += 2.0 * decay * c;
        d_dt -= 2.0 * kf * decay * c;
        d_dtheta -= 2.0 * kf * decay * s;
    }
    let norm = 1.0 / (2.0 * PI);
    Ok(KernelEval {
        t,
        location: theta,
        value: norm * value,
        d_dt: norm * d_dt,
        d_dspace: norm * d_dtheta,
    })
}

/// Factor relating the rational closed form
/// `(e^{2t} - 1) / (e^{2t} - 2 e^t cos(theta) + 1)` to the series definition
/// of [`circle_f`]: series = `CIRCLE_CLOSED_FORM_SCALE` x closed form.
pub const CIRCLE_CLOSED_FORM_SCALE: f64 = 1.0 / (2.0 * PI);

/// Unscaled rational closed forms of the circle kernel and its derivatives,
/// written in `q = e^{-t}` to stay finite for large `t`.
pub fn circle_f_closed_unscaled(t: f64, theta: f64) -> Result<KernelEval> {
    check_time(t)?;
    let q = (-t).exp();
    let (s, c) = theta.sin_cos();
    let den = 1.0 - 2.0 * q * c + q * q;
    let den2 = den * den;
    Ok(KernelEval {
        t,
        location: theta,
        value: (1.0 - q * q) / den,
        d_dt: -2.0 * q * (c * (1.0 + q * q) - 2.0 * q) / den2,
        d_dspace: -2.0 * q * s * (1.0 - q * q) / den2,
    })
}

/// Closed-form circle kernel rescaled to the series normalization.
pub fn circle_f_closed(t: f64, theta: f64) -> Result<KernelEval> {
    let raw = circle_f_closed_unscaled(t, theta)?;
    Ok(KernelEval {
        value: raw.value * CIRCLE_CLOSED_FORM_SCALE,
        d_dt: raw.d_dt * CIRCLE_CLOSED_FORM_SCALE,
        d_dspace: raw.d_dspace * CIRCLE_CLOSED_FORM_SCALE,
        ..raw
    })
}

/// The exponential factor `exp(-|x - x0|^2 / 4t)` of the planar heat kernel.
/// The normalization constant drops out of every identity that uses it.
pub fn gaussian_weight(t: f64, x: [f64; 2], x0: [f64; 2]) -> Result<f64> {
    check_time(t)?;
    let dx = x[0] - x0[0];
    let dy = x[1] - x0[1];
    Ok((-(dx * dx + dy * dy) / (4.0 * t)).exp())
}
