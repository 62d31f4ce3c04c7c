//! `key=value` run configuration files and run manifests.
//!
//! Generator keys are the [`GeneratorConfig`] field names; the remaining keys
//! set [`RunOptions`]. `#` starts a comment. Missing keys keep their defaults,
//! with `alpha` following `n` and `joint_set_azimuths` following `njs` unless
//! given explicitly.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::advection::SteadyOptions;
use crate::dfn::{default_alpha, GeneratorConfig, JointSet};
use crate::error::{Error, Result};
use crate::lbm::LbmParams;
use crate::metrics::DEFAULT_CENSUS_CAP;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Lattice cells per side; `None` means one cell per domain unit.
    pub grid_n: Option<usize>,
    pub lbm: LbmParams,
    pub advect: SteadyOptions,
    pub census_cap: u64,
    /// Monte Carlo realizations per sweep grid point.
    pub realizations: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            grid_n: None,
            lbm: LbmParams::default(),
            advect: SteadyOptions::default(),
            census_cap: DEFAULT_CENSUS_CAP,
            realizations: 5,
        }
    }
}

impl RunOptions {
    pub const KEYS: [&'static str; 14] = [
        "grid_n",
        "tau",
        "rho_in",
        "rho_out",
        "lbm_tol",
        "lbm_max_iters",
        "advect_tol",
        "advect_max_steps",
        "advect_dt",
        "epsilon",
        "u_src",
        "u_snk",
        "census_cap",
        "realizations",
    ];

    pub fn grid_for(&self, config: &GeneratorConfig) -> usize {
        self.grid_n.unwrap_or(config.n as usize)
    }

    fn set_key(&mut self, key: &str, value: &str) -> std::result::Result<bool, String> {
        match key {
            "grid_n" => self.grid_n = Some(parse(value)?),
            "tau" => self.lbm.tau = parse(value)?,
            "rho_in" => self.lbm.rho_in = parse(value)?,
            "rho_out" => self.lbm.rho_out = parse(value)?,
            "lbm_tol" => self.lbm.tol = parse(value)?,
            "lbm_max_iters" => self.lbm.max_iters = parse(value)?,
            "advect_tol" => self.advect.tol = parse(value)?,
            "advect_max_steps" => self.advect.max_steps = parse(value)?,
            "advect_dt" => self.advect.dt = Some(parse(value)?),
            "epsilon" => self.advect.epsilon = parse(value)?,
            "u_src" => self.advect.u_src = parse(value)?,
            "u_snk" => self.advect.u_snk = parse(value)?,
            "census_cap" => self.census_cap = parse(value)?,
            "realizations" => self.realizations = parse(value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn validate(&self) -> Result<()> {
        self.lbm.validate()?;
        if self.grid_n.is_some_and(|g| g < 16) {
            return Err(Error::invalid("grid_n", "must be >= 16"));
        }
        if !(self.advect.tol > 0.0) {
            return Err(Error::invalid("advect_tol", "must be > 0"));
        }
        if !(self.advect.epsilon > 0.0) {
            return Err(Error::invalid("epsilon", "must be > 0"));
        }
        if self.advect.dt.is_some_and(|dt| !(dt > 0.0)) {
            return Err(Error::invalid("advect_dt", "must be > 0"));
        }
        if self.realizations == 0 {
            return Err(Error::invalid("realizations", "must be >= 1"));
        }
        Ok(())
    }

    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        if let Some(g) = self.grid_n {
            writeln!(s, "grid_n={g}").unwrap();
        }
        for (k, v) in self.lbm.to_kv() {
            let k = match k.as_str() {
                "tol" => "lbm_tol".to_string(),
                "max_iters" => "lbm_max_iters".to_string(),
                _ => k,
            };
            writeln!(s, "{k}={v}").unwrap();
        }
        writeln!(s, "advect_tol={}", self.advect.tol).unwrap();
        writeln!(s, "advect_max_steps={}", self.advect.max_steps).unwrap();
        if let Some(dt) = self.advect.dt {
            writeln!(s, "advect_dt={dt}").unwrap();
        }
        writeln!(s, "epsilon={}", self.advect.epsilon).unwrap();
        writeln!(s, "u_src={}", self.advect.u_src).unwrap();
        writeln!(s, "u_snk={}", self.advect.u_snk).unwrap();
        writeln!(s, "census_cap={}", self.census_cap).unwrap();
        writeln!(s, "realizations={}", self.realizations).unwrap();
        s
    }
}

fn parse<T: FromStr>(value: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| format!("cannot parse `{value}`: {e}"))
}

pub fn parse_config_str(text: &str) -> Result<(GeneratorConfig, RunOptions)> {
    let mut config = GeneratorConfig::default();
    let mut options = RunOptions::default();
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got `{body}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key.to_string()) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        if GeneratorConfig::KEYS.contains(&key) {
            config.set_key(key, value).map_err(err)?;
        } else if !options.set_key(key, value).map_err(err)? {
            return Err(err(format!("unknown key `{key}`")));
        }
    }
    if !seen.contains("alpha") {
        config.alpha = default_alpha(config.n);
    }
    if !seen.contains("joint_set_azimuths") {
        config.joint_set_azimuths = JointSet::evenly_spaced(config.njs);
    }
    config.validate()?;
    options.validate()?;
    Ok((config, options))
}

pub fn parse_config(path: &Path) -> Result<(GeneratorConfig, RunOptions)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    parse_config_str(&text)
}

/// Record of one run. Its text form is itself a valid config file: metadata
/// sits in comments and the resolved settings follow as `key=value` lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: GeneratorConfig,
    pub options: RunOptions,
    pub seed: u64,
    pub version: String,
    pub outputs: Vec<PathBuf>,
    pub wall_clock_secs: f64,
}

impl RunManifest {
    pub fn new(command: &str, config: &GeneratorConfig, options: &RunOptions) -> Self {
        Self {
            command: command.to_string(),
            config: config.clone(),
            options: options.clone(),
            seed: config.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
            wall_clock_secs: 0.0,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# command={}", self.command).unwrap();
        writeln!(s, "# version={}", self.version).unwrap();
        writeln!(s, "# seed={}", self.seed).unwrap();
        writeln!(s, "# wall_clock_secs={:.3}", self.wall_clock_secs).unwrap();
        for p in &self.outputs {
            writeln!(s, "# output={}", p.display()).unwrap();
        }
        s.push_str(&self.config.to_kv());
        s.push_str(&self.options.to_kv());
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::file(path, e))
    }
}
