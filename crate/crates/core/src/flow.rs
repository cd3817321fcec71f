//! Projected gradient flow for the half-energy of sphere-valued circle maps.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::identities::{fourier_relations, poho_s1_first, stationarity_report, tangential_part};
use crate::report::IdentityReport;
use crate::spectral::{
    analyze, fmt_sig17, half_energy, half_laplacian, norm, synthesize, theta_derivative_map, GridMap1D,
};
use crate::zoo::winding_number;

/// Largest tolerated energy increase for an accepted step.
pub const ENERGY_SLACK: f64 = 1e-12;

/// Consecutive step halvings after which the flow gives up.
pub const MAX_HALVINGS: usize = 6;

/// Fourier relations checked by [`certify`] run up to this order.
pub const CERTIFY_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowConfig {
    pub tau: f64,
    pub max_steps: usize,
    pub tol: f64,
}

impl Default for FlowConfig {
    /// `tau = 2e-3`, a quarter of the stability bound `2/N` at `N = 256`.
    fn default() -> Self {
        Self {
            tau: 2e-3,
            max_steps: 10_000,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub u: GridMap1D,
    pub step: usize,
    pub tau: f64,
    pub energy: f64,
    pub el_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowRow {
    pub step: usize,
    pub energy: f64,
    pub el_residual: f64,
    pub tau: f64,
    /// Winding number about the origin, for planar targets.
    pub winding: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowTrace {
    pub rows: Vec<FlowRow>,
    pub state: FlowState,
    pub converged: bool,
}

impl FlowTrace {
    /// CSV with columns `step,energy,el_residual`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "step,energy,el_residual")?;
        for r in &self.rows {
            writeln!(w, "{},{},{}", r.step, fmt_sig17(r.energy), fmt_sig17(r.el_residual))?;
        }
        Ok(())
    }

    /// Largest energy increase between consecutive rows.
    pub fn max_energy_increase(&self) -> f64 {
        self.rows
            .windows(2)
            .map(|w| w[1].energy - w[0].energy)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Energy, tangential gradient and its sup norm at `u`.
fn evaluate(u: &GridMap1D) -> (f64, Vec<Vec<f64>>, f64) {
    let spec = analyze(u);
    let lap = synthesize(&half_laplacian(&spec), u.grid_size()).expect("same grid");
    let grad = tangential_part(u, &lap);
    let sup = grad.iter().map(|g| norm(g)).fold(0.0, f64::max);
    (half_energy(&spec), grad, sup)
}

fn winding_of(u: &GridMap1D) -> Option<f64> {
    (u.dim() == 2).then(|| winding_number(u).ok()).flatten()
}

/// Iterates `u <- normalize(u - tau P_{T_u}((-Delta)^{1/2} u))` until the
/// tangential residual drops to `cfg.tol` or `cfg.max_steps` steps are taken.
///
/// A step that raises the energy by more than [`ENERGY_SLACK`] is rejected
/// and `tau` halved; [`MAX_HALVINGS`] consecutive halvings abort the run.
pub fn half_harmonic_flow(u0: &GridMap1D, cfg: &FlowConfig) -> Result<FlowTrace> {
    if !u0.is_sphere_valued() {
        return Err(Error::NotSphereValued {
            index: 0,
            norm: norm(u0.point(0)),
        });
    }
    let bound = 2.0 / u0.grid_size() as f64;
    if !(cfg.tau > 0.0 && cfg.tau <= bound) {
        return Err(Error::StepTooLarge { tau: cfg.tau, bound });
    }
    let mut u = u0.clone();
    let mut tau = cfg.tau;
    let (mut energy, mut grad, mut residual) = evaluate(&u);
    let mut rows = Vec::new();
    let mut step = 0;
    let mut halvings = 0;
    loop {
        rows.push(FlowRow {
            step,
            energy,
            el_residual: residual,
            tau,
            winding: winding_of(&u),
        });
        if residual <= cfg.tol || step >= cfg.max_steps {
            break;
        }
        let m = u.dim();
        let mut samples = u.samples().to_vec();
        for (p, g) in samples.chunks_mut(m).zip(&grad) {
            for (x, d) in p.iter_mut().zip(g) {
                *x -= tau * d;
            }
        }
        let candidate = GridMap1D::new(u.grid_size(), m, samples)?.normalized()?;
        let (e, g, r) = evaluate(&candidate);
        if e > energy + ENERGY_SLACK {
            halvings += 1;
            if halvings >= MAX_HALVINGS {
                return Err(Error::FlowStalled { step, halvings, tau });
            }
            tau *= 0.5;
            log::debug!("energy rose by {:e} at step {step}; tau -> {tau:e}", e - energy);
            continue;
        }
        halvings = 0;
        step += 1;
        u = candidate;
        energy = e;
        grad = g;
        residual = r;
    }
    let converged = residual <= cfg.tol;
    Ok(FlowTrace {
        rows,
        state: FlowState {
            u,
            step,
            tau,
            energy,
            el_residual: residual,
        },
        converged,
    })
}

/// Runs the stationarity, first-mode and Fourier-relation verifiers on the
/// flow output.
///
/// Each report's tolerance is `10 * el_residual * kappa` with the condition
/// factor `kappa = sup |d_theta u|`, floored at `1e-12`: a tangential residual
/// of size `e` perturbs `d_theta u . (-Delta)^{1/2} u` by at most
/// `kappa * e`. Unconverged runs are flagged in the parameters.
pub fn certify(trace: &FlowTrace) -> Result<Vec<IdentityReport>> {
    let state = &trace.state;
    let kappa = theta_derivative_map(&state.u).sup_norm();
    let tol = (10.0 * state.el_residual * kappa).max(1e-12);
    let n_max = CERTIFY_ORDER.min(state.u.grid_size() / 2);
    let tag = |r: IdentityReport| {
        r.param("converged", trace.converged)
            .param("steps", state.step)
            .param_f64("el_residual", state.el_residual)
            .param_f64("condition_factor", kappa)
    };
    let mut out = vec![
        tag(stationarity_report(&state.u, tol)),
        tag(poho_s1_first(&state.u, tol)),
    ];
    out.extend(
        fourier_relations(&state.u, n_max, tol)?
            .into_iter()
            .map(|r| tag(r.report)),
    );
    Ok(out)
}
