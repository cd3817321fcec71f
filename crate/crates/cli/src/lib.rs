//! Command implementations behind the `poho` binary.

pub mod config;
pub mod suite;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use pohozaev_core::flow::{certify, half_harmonic_flow, FlowConfig};
use pohozaev_core::identities::FourierData;
use pohozaev_core::report::{reports_to_json, sort_reports};
use pohozaev_core::spectral::fmt_sig17;
use pohozaev_core::zoo::{perturb_tangent, winding_number, BlaschkeProduct};
use pohozaev_core::IdentityReport;
use thiserror::Error;

use config::{FlowSettings, SuiteConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] pohozaev_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Exit code for a run whose verdicts match their expectations.
pub const EXIT_OK: i32 = 0;

/// Exit code for an unexpected pass or fail.
pub const EXIT_UNEXPECTED: i32 = 1;

pub fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, contents.as_bytes()),
        None => io::stdout()
            .lock()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

/// Runs the verification suite and writes the sorted JSON report.
pub fn cmd_verify(cfg: &SuiteConfig) -> Result<i32, CliError> {
    let reports = suite::run_suite(cfg)?;
    emit(cfg.out.as_deref(), &reports_to_json(&reports))?;
    let verdict = suite::judge(&reports);
    let passed = reports.iter().filter(|r| r.pass).count();
    log::info!("{} reports, {passed} passing", reports.len());
    for line in &verdict.unexpected_failures {
        eprintln!("unexpected failure: {line}");
    }
    for group in &verdict.unexpected_passes {
        eprintln!("control did not fail: {group}");
    }
    Ok(if verdict.ok() { EXIT_OK } else { EXIT_UNEXPECTED })
}

/// Flows a perturbed identity map, writes the trace CSV and certifies the
/// terminal state.
pub fn cmd_flow(settings: &FlowSettings) -> Result<i32, CliError> {
    let base = BlaschkeProduct::identity().trace(settings.grid)?;
    let u0 = perturb_tangent(&base, settings.amplitude, settings.seed)?;
    let cfg = FlowConfig {
        tau: settings.tau,
        max_steps: settings.max_steps,
        tol: settings.tol,
    };
    let trace = half_harmonic_flow(&u0, &cfg)?;
    let trace_path = settings.trace.clone().unwrap_or_else(|| match &settings.out {
        Some(out) => out.with_extension("trace.csv"),
        None => PathBuf::from("flow_trace.csv"),
    });
    let mut csv = Vec::new();
    trace.write_csv(&mut csv).map_err(|e| CliError::io(&trace_path, e))?;
    write_file(&trace_path, &csv)?;

    let state = &trace.state;
    let degree = if state.u.dim() == 2 {
        winding_number(&state.u)?
    } else {
        0.0
    };
    let energy = IdentityReport::balanced(
        "flow_energy",
        state.energy,
        2.0 * std::f64::consts::PI * degree.abs(),
        settings.tol,
    )
    .param("steps", state.step)
    .param("converged", trace.converged)
    .param_f64("max_energy_increase", trace.max_energy_increase().max(0.0));
    let mut reports = certify(&trace)?;
    reports.push(energy);
    let mut reports: Vec<IdentityReport> = reports
        .into_iter()
        .map(|r| {
            r.param("seed", settings.seed)
                .param_f64("amplitude", settings.amplitude)
                .param("N", settings.grid)
        })
        .collect();
    sort_reports(&mut reports);
    emit(settings.out.as_deref(), &reports_to_json(&reports))?;
    let ok = trace.converged && reports.iter().all(|r| r.pass);
    if !trace.converged {
        eprintln!(
            "flow did not converge in {} steps (el_residual {:e})",
            state.step, state.el_residual
        );
    }
    Ok(if ok { EXIT_OK } else { EXIT_UNEXPECTED })
}

/// Path of the relations CSV written next to the coefficient CSV.
pub fn relations_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".relations.csv");
    PathBuf::from(s)
}

/// Writes `k, a_k, b_k` per component, and `n, S_n, T_n, scale_n` to the
/// companion file when `out` is given (stdout otherwise, coefficients first).
pub fn cmd_fourier(id: &str, n_max: usize, cfg: &SuiteConfig) -> Result<i32, CliError> {
    let u = suite::circle_input(id, cfg.grid, cfg.seed)?.0;
    if n_max < 2 {
        return Err(CliError::Config(format!("n_max must be at least 2, got {n_max}")));
    }
    let data = FourierData::of_map(&u, n_max - 1).map_err(|e| CliError::Config(e.to_string()))?;
    let m = u.dim();

    let mut coeffs = String::from("k");
    for c in 0..m {
        coeffs.push_str(&format!(",a{c},b{c}"));
    }
    coeffs.push('\n');
    for k in 0..=data.max_order() {
        coeffs.push_str(&k.to_string());
        for c in 0..m {
            coeffs.push_str(&format!(",{},{}", fmt_sig17(data.a(k)[c]), fmt_sig17(data.b(k)[c])));
        }
        coeffs.push('\n');
    }

    let mut relations = String::from("n,S_n,T_n,scale_n\n");
    for n in 2..=n_max {
        let (s, t, scale) = data.relation(n)?;
        relations.push_str(&format!("{n},{},{},{}\n", fmt_sig17(s), fmt_sig17(t), fmt_sig17(scale)));
    }

    match cfg.out.as_deref() {
        Some(path) => {
            write_file(path, coeffs.as_bytes())?;
            write_file(&relations_path(path), relations.as_bytes())?;
        }
        None => emit(None, &format!("{coeffs}\n{relations}"))?,
    }
    Ok(EXIT_OK)
}
