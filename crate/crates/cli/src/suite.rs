//! The verification matrix: every applicable verifier for each configured map.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use pohozaev_core::conformal::{mobius_covariance_residual, pullback_halflap_check, MobiusDisk, PoissonProfile};
use pohozaev_core::identities::{
    el_report, fourier_relation_alpha, fourier_relations, low_order_relations, mobius_invariance_suite, poho_r,
    poho_s1, poho_s1_first, pole_value, stationarity_report,
};
use pohozaev_core::planar::{
    ball_pohozaev, ball_pohozaev_radial, gaussian_pohozaev, hypothesis_report, HoloField, QuadratureConfig, Region,
};
use pohozaev_core::poly::ComplexPoly;
use pohozaev_core::report::sort_reports;
use pohozaev_core::zoo::{circle_map, is_negative_control, perturb_tangent, planar_map, BlaschkeProduct};
use pohozaev_core::{GridMap1D, IdentityReport};
use rayon::prelude::*;

use crate::config::SuiteConfig;
use crate::CliError;

/// Expected verdicts. A `pass` report must pass; among the `fail` reports of
/// one map and identity at least one must fail.
pub const EXPECT_PASS: &str = "pass";
pub const EXPECT_FAIL: &str = "fail";

/// Centers used for the off-origin planar checks.
const OFF_CENTER: [f64; 2] = [0.2, -0.1];

/// Ball center for the anti-holomorphic field control.
const ANTI_CENTER: [f64; 2] = [0.5, 0.3];

/// Map underlying the anti-holomorphic field control. Conformal maps satisfy
/// the ball identity for every field, so the control uses the non-conformal
/// harmonic function `Re z^2`.
const ANTI_MAP: &str = "re:z2";

#[derive(Debug, Clone, PartialEq)]
pub enum Case {
    Circle(String),
    Planar(String),
    AntiHolomorphicField,
    Pullback(f64),
}

impl Case {
    pub fn label(&self) -> String {
        match self {
            Case::Circle(id) | Case::Planar(id) => id.clone(),
            Case::AntiHolomorphicField => ANTI_MAP.to_string(),
            Case::Pullback(t) => format!("poisson:{t}"),
        }
    }
}

pub fn cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out: Vec<Case> = cfg.circle_maps.iter().cloned().map(Case::Circle).collect();
    out.extend(cfg.planar_maps.iter().cloned().map(Case::Planar));
    out.push(Case::AntiHolomorphicField);
    out.push(Case::Pullback(1.0));
    out
}

/// Checks every map id before any work is done.
pub fn validate(cfg: &SuiteConfig) -> Result<(), CliError> {
    for id in &cfg.circle_maps {
        circle_input(id, 16, cfg.seed)?;
    }
    for id in &cfg.planar_maps {
        planar_map(id).map_err(|e| CliError::Config(e.to_string()))?;
    }
    if cfg.n_max < 2 || cfg.n_max > cfg.grid / 2 {
        return Err(CliError::Config(format!(
            "n_max = {} out of range for grid {}",
            cfg.n_max, cfg.grid
        )));
    }
    if cfg.t_grid.is_empty() || cfg.t_grid.iter().any(|t| t.is_nan() || *t <= 0.0) {
        return Err(CliError::Config("t_grid must hold positive times".into()));
    }
    Ok(())
}

pub fn circle_input(id: &str, n: usize, seed: u64) -> Result<(GridMap1D, bool), CliError> {
    let config_err = |e: pohozaev_core::Error| CliError::Config(format!("map '{id}': {e}"));
    if let Some(amp) = id.strip_prefix("perturbed:") {
        let amplitude: f64 = amp
            .parse()
            .map_err(|_| CliError::Config(format!("invalid perturbation amplitude in '{id}'")))?;
        let base = BlaschkeProduct::identity().trace(n).map_err(config_err)?;
        return Ok((perturb_tangent(&base, amplitude, seed).map_err(config_err)?, true));
    }
    let u = circle_map(id, n).map_err(config_err)?;
    Ok((u, is_negative_control(id)))
}

fn tag(mut reports: Vec<IdentityReport>, map: &str, expect: &str) -> Vec<IdentityReport> {
    for r in &mut reports {
        r.params.push(("map".into(), map.into()));
        r.params.push(("expect".into(), expect.into()));
    }
    reports
}

fn run_circle(id: &str, cfg: &SuiteConfig) -> Result<Vec<IdentityReport>, CliError> {
    let (u, control) = circle_input(id, cfg.grid, cfg.seed)?;
    let expect = if control { EXPECT_FAIL } else { EXPECT_PASS };
    let mut out = vec![stationarity_report(&u, cfg.tol("stationarity"))];
    if u.is_sphere_valued() {
        out.push(el_report(&u, cfg.tol("euler_lagrange"))?);
    }
    out.extend(poho_s1(&u, &cfg.t_grid, cfg.tol("poho_s1"))?);
    out.push(poho_s1_first(&u, cfg.tol("poho_s1_first")));
    out.extend(
        fourier_relations(&u, cfg.n_max, cfg.tol("fourier_relation"))?
            .into_iter()
            .map(|r| r.report),
    );
    let n_alpha = 4.min(cfg.n_max);
    for alpha in [0.0, PI / (2.0 * n_alpha as f64), PI / n_alpha as f64, 1.0] {
        out.push(fourier_relation_alpha(
            &u,
            n_alpha,
            alpha,
            cfg.tol("fourier_relation_alpha"),
        )?);
    }
    out.extend(low_order_relations(&u, cfg.tol("low_order_relation"))?);
    out.extend(poho_r(&u, &pole_value(&u), &cfg.t_grid, cfg.tol("poho_r"))?);
    for &(a, alpha) in &cfg.mobius {
        let m = MobiusDisk::real(alpha, a)?;
        out.extend(mobius_invariance_suite(&u, &m, cfg.n_max, cfg.tol("mobius"))?);
    }
    let mut reports = tag(out, id, expect);
    // covariance holds for every smooth map, critical or not
    for &(a, alpha) in &cfg.mobius {
        let m = MobiusDisk::real(alpha, a)?;
        reports.extend(tag(
            vec![mobius_covariance_residual(&u, &m, cfg.tol("mobius_covariance"))?],
            id,
            EXPECT_PASS,
        ));
    }
    Ok(reports)
}

fn run_planar(id: &str, cfg: &SuiteConfig) -> Result<Vec<IdentityReport>, CliError> {
    let u = planar_map(id).map_err(|e| CliError::Config(e.to_string()))?;
    let u = u.as_ref();
    let quad = QuadratureConfig::default();
    let hypothesis = hypothesis_report(u, Region::square([0.0, 0.0], 2.0), cfg.tol("planar_hypothesis"));
    if id.starts_with("broken") {
        return Ok(tag(vec![hypothesis], id, EXPECT_FAIL));
    }
    let mut out = vec![hypothesis];
    let origin = [0.0, 0.0];
    for r in [0.5, 1.0, 2.0] {
        out.push(ball_pohozaev_radial(
            u,
            origin,
            r,
            &quad,
            cfg.tol("ball_pohozaev_radial"),
        )?);
    }
    let fields = [
        HoloField::new(ComplexPoly::from_real(&[1.0])),
        HoloField::new(ComplexPoly::monomial(1)),
        HoloField::new(ComplexPoly::monomial(2)),
    ];
    for center in [origin, OFF_CENTER] {
        for field in &fields {
            out.push(ball_pohozaev(u, center, 1.0, field, &quad, cfg.tol("ball_pohozaev"))?);
        }
    }
    for t in [0.5, 1.0] {
        for center in [origin, OFF_CENTER] {
            let field = HoloField::radial(center);
            out.extend(gaussian_pohozaev(
                u,
                center,
                t,
                &field,
                &quad,
                cfg.tol("gaussian_pohozaev"),
            )?);
        }
    }
    let skew = HoloField::new(ComplexPoly::from_real(&[1.0, 1.0]));
    out.extend(gaussian_pohozaev(
        u,
        OFF_CENTER,
        0.5,
        &skew,
        &quad,
        cfg.tol("gaussian_pohozaev"),
    )?);
    Ok(tag(out, id, EXPECT_PASS))
}

fn run_anti(cfg: &SuiteConfig) -> Result<Vec<IdentityReport>, CliError> {
    let u = planar_map(ANTI_MAP)?;
    let field = HoloField::anti_holomorphic(ComplexPoly::monomial(1));
    let report = ball_pohozaev(
        u.as_ref(),
        ANTI_CENTER,
        1.0,
        &field,
        &QuadratureConfig::default(),
        cfg.tol("ball_pohozaev"),
    )?
    .param("case", "anti_holomorphic_field");
    Ok(tag(vec![report], ANTI_MAP, EXPECT_FAIL))
}

fn run_pullback(t: f64, cfg: &SuiteConfig) -> Result<Vec<IdentityReport>, CliError> {
    let report = pullback_halflap_check(&PoissonProfile { t }, cfg.grid, cfg.tol("stereographic_pullback"))?;
    Ok(tag(vec![report], &format!("poisson:{t}"), EXPECT_PASS))
}

pub fn run_case(case: &Case, cfg: &SuiteConfig) -> Result<Vec<IdentityReport>, CliError> {
    match case {
        Case::Circle(id) => run_circle(id, cfg),
        Case::Planar(id) => run_planar(id, cfg),
        Case::AntiHolomorphicField => run_anti(cfg),
        Case::Pullback(t) => run_pullback(*t, cfg),
    }
}

/// Runs every case in parallel and returns the reports in deterministic order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<IdentityReport>, CliError> {
    validate(cfg)?;
    let results: Vec<Result<Vec<IdentityReport>, CliError>> = cases(cfg).par_iter().map(|c| run_case(c, cfg)).collect();
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    sort_reports(&mut reports);
    Ok(reports)
}

/// Outcome of comparing reports against their expectations.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Verdict {
    pub unexpected_failures: Vec<String>,
    pub unexpected_passes: Vec<String>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.unexpected_failures.is_empty() && self.unexpected_passes.is_empty()
    }
}

pub fn judge(reports: &[IdentityReport]) -> Verdict {
    let mut verdict = Verdict::default();
    let mut control_groups: BTreeMap<String, bool> = BTreeMap::new();
    for r in reports {
        let map = r.get_param("map").unwrap_or("?");
        match r.get_param("expect") {
            Some(EXPECT_FAIL) => {
                let key = format!("{map} {}", r.identity_name);
                *control_groups.entry(key).or_insert(false) |= !r.pass;
            }
            _ if !r.pass => verdict
                .unexpected_failures
                .push(format!("{map} {} rel_gap={:e}", r.identity_name, r.rel_gap)),
            _ => {}
        }
    }
    verdict.unexpected_passes = control_groups
        .into_iter()
        .filter(|(_, failed)| !failed)
        .map(|(k, _)| k)
        .collect();
    verdict
}
