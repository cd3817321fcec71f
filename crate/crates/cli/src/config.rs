//! Line-oriented `key = value` configuration with `[verify]` and `[flow]`
//! sections. `#` starts a comment; list values are comma separated.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::CliError;

/// Circle maps in the default verification suite.
pub const DEFAULT_CIRCLE_MAPS: [&str; 7] = [
    "blaschke:0",
    "blaschke:0.5",
    "blaschke:0.3/-0.2",
    "blaschke:0.5+0.2i",
    "negctrl:1",
    "negctrl:2",
    "perturbed:0.1",
];

/// Planar maps in the default verification suite.
pub const DEFAULT_PLANAR_MAPS: [&str; 6] = ["holo:z", "holo:z2", "s2:z", "re:z2", "holo:1", "broken:x2y"];

/// Default tolerance per identity name.
pub const DEFAULT_TOLERANCES: [(&str, f64); 15] = [
    ("stationarity", 1e-10),
    ("euler_lagrange", 1e-9),
    ("poho_s1", 1e-8),
    ("poho_s1_first", 1e-10),
    ("fourier_relation", 1e-10),
    ("fourier_relation_alpha", 1e-10),
    ("low_order_relation", 1e-10),
    ("mobius", 1e-8),
    ("mobius_covariance", 1e-8),
    ("poho_r", 1e-6),
    ("planar_hypothesis", 1e-6),
    ("ball_pohozaev", 1e-10),
    ("ball_pohozaev_radial", 1e-10),
    ("gaussian_pohozaev", 1e-8),
    ("stereographic_pullback", 1e-6),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub circle_maps: Vec<String>,
    pub planar_maps: Vec<String>,
    pub grid: usize,
    pub t_grid: Vec<f64>,
    pub n_max: usize,
    /// `(a, alpha)` pairs for the Möbius reruns.
    pub mobius: Vec<(f64, f64)>,
    pub tolerances: BTreeMap<String, f64>,
    /// Overrides every per-identity tolerance when set.
    pub global_tol: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            circle_maps: DEFAULT_CIRCLE_MAPS.iter().map(|s| s.to_string()).collect(),
            planar_maps: DEFAULT_PLANAR_MAPS.iter().map(|s| s.to_string()).collect(),
            grid: 1024,
            t_grid: vec![0.1, 0.5, 1.0, 2.0],
            n_max: 10,
            mobius: vec![(0.3, 0.0), (0.5, 0.3)],
            tolerances: DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            global_tol: None,
            seed: 42,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn tol(&self, identity: &str) -> f64 {
        self.global_tol
            .or_else(|| self.tolerances.get(identity).copied())
            .unwrap_or(1e-8)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowSettings {
    pub grid: usize,
    pub seed: u64,
    pub amplitude: f64,
    pub tau: f64,
    pub max_steps: usize,
    pub tol: f64,
    pub trace: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Default for FlowSettings {
    fn default() -> Self {
        let flow = pohozaev_core::flow::FlowConfig::default();
        Self {
            grid: 256,
            seed: 42,
            amplitude: 0.1,
            tau: flow.tau,
            max_steps: flow.max_steps,
            tol: flow.tol,
            trace: None,
            out: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub verify: SuiteConfig,
    pub flow: FlowSettings,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("line {line}: {msg}"))
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| bad(line, format!("invalid value '{v}' for {key}")))
}

fn parse_list(v: &str) -> Vec<String> {
    v.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_f64_list(line: usize, key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    parse_list(v).iter().map(|s| parse_num(line, key, s)).collect()
}

/// Parses `a@alpha` pairs.
fn parse_mobius(line: usize, v: &str) -> Result<Vec<(f64, f64)>, CliError> {
    parse_list(v)
        .iter()
        .map(|item| {
            let (a, alpha) = item.split_once('@').unwrap_or((item.as_str(), "0"));
            Ok((parse_num(line, "mobius", a)?, parse_num(line, "mobius", alpha)?))
        })
        .collect()
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = name.trim().to_string();
                if section != "verify" && section != "flow" {
                    return Err(bad(line, format!("unknown section [{section}]")));
                }
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| bad(line, "expected key = value"))?;
            match section.as_str() {
                "verify" => cfg.set_verify(line, key, value)?,
                "flow" => cfg.set_flow(line, key, value)?,
                _ => return Err(bad(line, "key outside a section")),
            }
        }
        Ok(cfg)
    }

    fn set_verify(&mut self, line: usize, key: &str, value: &str) -> Result<(), CliError> {
        let v = &mut self.verify;
        match key {
            "maps" => v.circle_maps = parse_list(value),
            "planar" => v.planar_maps = parse_list(value),
            "grid" => v.grid = parse_num(line, key, value)?,
            "t_grid" => v.t_grid = parse_f64_list(line, key, value)?,
            "n_max" => v.n_max = parse_num(line, key, value)?,
            "mobius" => v.mobius = parse_mobius(line, value)?,
            "tol" => v.global_tol = Some(parse_num(line, key, value)?),
            "seed" => v.seed = parse_num(line, key, value)?,
            "out" => v.out = Some(PathBuf::from(value)),
            _ => match key.strip_prefix("tol.") {
                Some(name) if v.tolerances.contains_key(name) => {
                    let tol = parse_num(line, key, value)?;
                    v.tolerances.insert(name.to_string(), tol);
                }
                _ => return Err(bad(line, format!("unknown key '{key}' in [verify]"))),
            },
        }
        Ok(())
    }

    fn set_flow(&mut self, line: usize, key: &str, value: &str) -> Result<(), CliError> {
        let f = &mut self.flow;
        match key {
            "grid" => f.grid = parse_num(line, key, value)?,
            "seed" => f.seed = parse_num(line, key, value)?,
            "amplitude" => f.amplitude = parse_num(line, key, value)?,
            "tau" => f.tau = parse_num(line, key, value)?,
            "max_steps" => f.max_steps = parse_num(line, key, value)?,
            "tol" => f.tol = parse_num(line, key, value)?,
            "trace" => f.trace = Some(PathBuf::from(value)),
            "out" => f.out = Some(PathBuf::from(value)),
            _ => return Err(bad(line, format!("unknown key '{key}' in [flow]"))),
        }
        Ok(())
    }
}
