//! Monte Carlo ensembles over generator parameters.
//!
//! A [`SweepSpec`] varies one parameter over a grid of values and runs
//! `realizations` independent networks per value. Each realization derives its
//! seed from the master seed and its grid and realization indices, so results
//! do not depend on scheduling.

mod output;
mod sweeps;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::advection::{default_terminals, solve_steady, SteadyState};
use crate::stats::Moments;
use crate::config::RunOptions;
use crate::dfn::{generate_network, parse_joint_sets, FractureNetwork, GeneratorConfig, JointSet};
use crate::error::{Error, Result};
use crate::graph::build_graph;
use crate::lbm::{rasterize, simulate, PermeabilityResult};
use crate::metrics::{compute_report, Census4};

pub use output::write_sweep_outputs;
pub use sweeps::{
    correlate_l_vs_k, correlate_rows, sweep_azimuth, sweep_gamma, sweep_hub_growth, AzimuthReport,
    Correlation, GammaReport, GrowthReport, TrendVerdict,
};

/// The parameter a sweep varies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Vary {
    /// Any [`GeneratorConfig`] key, values as config text.
    Key { name: String, values: Vec<String> },
    /// Azimuth of joint set 1 in degrees; set 2 is held perpendicular.
    Azimuth(Vec<f64>),
    /// `(hub_growth, back_growth)` pairs.
    Growth(Vec<(u32, u32)>),
}

impl Vary {
    pub fn name(&self) -> &str {
        match self {
            Vary::Key { name, .. } => name,
            Vary::Azimuth(_) => "azimuth",
            Vary::Growth(_) => "growth",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Vary::Key { values, .. } => values.len(),
            Vary::Azimuth(v) => v.len(),
            Vary::Growth(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, g: usize) -> String {
        match self {
            Vary::Key { values, .. } => values[g].clone(),
            Vary::Azimuth(v) => v[g].to_string(),
            Vary::Growth(v) => format!("{}:{}", v[g].0, v[g].1),
        }
    }

    /// Parse `name` and comma-separated values as given on the command line.
    /// Growth pairs are written `HG:BG`.
    pub fn parse(name: &str, values: &str) -> Result<Self> {
        let items: Vec<&str> = values
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let bad = |v: &str| Error::invalid("vary", format!("cannot parse value `{v}`"));
        match name {
            "azimuth" => items
                .iter()
                .map(|v| v.parse().map_err(|_| bad(v)))
                .collect::<Result<_>>()
                .map(Vary::Azimuth),
            "growth" => items
                .iter()
                .map(|v| {
                    let (a, b) = v.split_once(':').ok_or_else(|| bad(v))?;
                    Ok((a.parse().map_err(|_| bad(v))?, b.parse().map_err(|_| bad(v))?))
                })
                .collect::<Result<_>>()
                .map(Vary::Growth),
            _ => Ok(Vary::Key {
                name: name.to_string(),
                values: items.into_iter().map(String::from).collect(),
            }),
        }
    }

    /// The configuration for grid point `g`.
    pub fn apply(&self, base: &GeneratorConfig, g: usize) -> Result<GeneratorConfig> {
        let mut c = base.clone();
        match self {
            Vary::Key { name, values } => {
                c.set_key(name, &values[g])
                    .map_err(|reason| Error::invalid(name, reason))?;
                if name == "njs" {
                    c.joint_set_azimuths = JointSet::evenly_spaced(c.njs);
                }
                if name == "joint_set_azimuths" {
                    c.njs = parse_joint_sets(&values[g]).map(|s| s.len()).unwrap_or(c.njs);
                }
            }
            Vary::Azimuth(v) => {
                let spread = base
                    .joint_set_azimuths
                    .first()
                    .map_or(crate::dfn::DEFAULT_SPREAD, |s| s.spread);
                c.njs = 2;
                c.joint_set_azimuths =
                    vec![JointSet::new(v[g], spread), JointSet::new(v[g] + 90.0, spread)];
            }
            Vary::Growth(v) => {
                c.hub_growth = v[g].0;
                c.back_growth = v[g].1;
            }
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Base configuration; its seed is the master seed.
    pub base: GeneratorConfig,
    pub options: RunOptions,
    pub vary: Vary,
    pub realizations: usize,
    pub lbm: bool,
    pub advect: bool,
    pub metrics: bool,
}

impl SweepSpec {
    pub fn new(base: GeneratorConfig, vary: Vary) -> Self {
        Self {
            base,
            options: RunOptions::default(),
            vary,
            realizations: 5,
            lbm: false,
            advect: false,
            metrics: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::invalid("realizations", "must be >= 1"));
        }
        if self.vary.is_empty() {
            return Err(Error::invalid("vary", "empty value grid"));
        }
        if let Vary::Key { name, .. } = &self.vary {
            if !GeneratorConfig::KEYS.contains(&name.as_str()) {
                return Err(Error::invalid("vary", format!("unknown parameter `{name}`")));
            }
        }
        self.options.validate()
    }

    pub fn master_seed(&self) -> u64 {
        self.base.seed
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of realization `r` at grid point `g`.
pub fn realization_seed(master: u64, g: usize, r: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ g as u64) ^ r as u64)
}

/// Everything one realization produced.
#[derive(Debug, Clone)]
pub struct Realization {
    pub network: FractureNetwork,
    pub permeability: Option<PermeabilityResult>,
    pub mean_path_length: Option<f64>,
    pub clustering: Option<f64>,
    pub census: Option<Census4>,
    pub ck_slope: Option<f64>,
    pub degree_slope: Option<f64>,
    pub steady: Option<SteadyState>,
}

/// Run the pipeline stages selected by the flags on one configuration.
pub fn run_realization(
    config: &GeneratorConfig,
    options: &RunOptions,
    lbm: bool,
    advect: bool,
    metrics: bool,
) -> Result<Realization> {
    let network = generate_network(config)?;
    let mut out = Realization {
        network,
        permeability: None,
        mean_path_length: None,
        clustering: None,
        census: None,
        ck_slope: None,
        degree_slope: None,
        steady: None,
    };
    if metrics || advect {
        let graph = build_graph(&out.network);
        if metrics {
            let report = compute_report(&graph, Some(options.census_cap));
            out.mean_path_length = report.paths.mean;
            out.clustering = Some(report.clustering);
            out.census = report.census;
            out.ck_slope = report.ck.slope();
            out.degree_slope = report.degree.fit.map(|f| f.slope);
        }
        if advect {
            let (sources, sinks) = default_terminals(graph.n_nodes())?;
            out.steady = Some(solve_steady(&graph, &sources, &sinks, &options.advect)?);
        }
    }
    if lbm {
        let mask = rasterize(&out.network, options.grid_for(config))?;
        out.permeability = Some(simulate(mask, &options.lbm)?.result);
    }
    Ok(out)
}

/// One realization of a sweep, or the reason it failed.
#[derive(Debug, Clone)]
pub struct EnsembleRow {
    pub grid_index: usize,
    pub value: String,
    pub realization: usize,
    pub seed: u64,
    pub outcome: std::result::Result<Realization, String>,
}

impl EnsembleRow {
    pub fn ok(&self) -> Option<&Realization> {
        self.outcome.as_ref().ok()
    }

    pub fn k(&self) -> Option<f64> {
        self.ok().and_then(|r| r.permeability.map(|p| p.k))
    }

    pub fn l(&self) -> Option<f64> {
        self.ok().and_then(|r| r.mean_path_length)
    }

    /// Tail statistics of the free-node steady values.
    pub fn advection_moments(&self) -> Option<Moments> {
        self.ok()
            .and_then(|r| r.steady.as_ref())
            .and_then(|s| Moments::of(&s.free_values()))
    }
}

/// Aggregates of one grid point over its successful realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub value: String,
    pub ok: usize,
    pub failed: usize,
    pub k_mean: Option<f64>,
    pub k_sd: Option<f64>,
    pub l_mean: Option<f64>,
    pub l_sd: Option<f64>,
    pub c_mean: Option<f64>,
    pub c_sd: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<EnsembleRow>,
    pub points: Vec<GridPoint>,
}

impl SweepResult {
    pub fn rows_at(&self, g: usize) -> impl Iterator<Item = &EnsembleRow> {
        self.rows.iter().filter(move |r| r.grid_index == g)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }
}

pub(crate) fn aggregate(value: String, rows: &[&EnsembleRow]) -> GridPoint {
    use crate::stats::{mean, std_dev};
    let pick = |f: &dyn Fn(&Realization) -> Option<f64>| -> Vec<f64> {
        rows.iter().filter_map(|r| r.ok().and_then(f)).collect()
    };
    let k = pick(&|r| r.permeability.map(|p| p.k));
    let l = pick(&|r| r.mean_path_length);
    let c = pick(&|r| r.clustering);
    let ok = rows.iter().filter(|r| r.outcome.is_ok()).count();
    GridPoint {
        value,
        ok,
        failed: rows.len() - ok,
        k_mean: mean(&k),
        k_sd: std_dev(&k),
        l_mean: mean(&l),
        l_sd: std_dev(&l),
        c_mean: mean(&c),
        c_sd: std_dev(&c),
    }
}

/// Run every realization of the sweep. Fails when more than half of them
/// fail.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let configs: Vec<GeneratorConfig> = (0..spec.vary.len())
        .map(|g| spec.vary.apply(&spec.base, g))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..configs.len())
        .flat_map(|g| (0..spec.realizations).map(move |r| (g, r)))
        .collect();
    let rows: Vec<EnsembleRow> = jobs
        .par_iter()
        .map(|&(g, r)| {
            let seed = realization_seed(spec.master_seed(), g, r);
            let mut cfg = configs[g].clone();
            cfg.seed = seed;
            let outcome = run_realization(&cfg, &spec.options, spec.lbm, spec.advect, spec.metrics)
                .map_err(|e| e.to_string());
            EnsembleRow {
                grid_index: g,
                value: spec.vary.label(g),
                realization: r,
                seed,
                outcome,
            }
        })
        .collect();
    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    if 2 * failed > rows.len() {
        let first = rows
            .iter()
            .find_map(|r| r.outcome.as_ref().err())
            .cloned()
            .unwrap_or_default();
        return Err(Error::GenerationFailed(format!(
            "{failed} of {} realizations failed; first: {first}",
            rows.len()
        )));
    }
    let points = (0..configs.len())
        .map(|g| {
            let at: Vec<&EnsembleRow> = rows.iter().filter(|r| r.grid_index == g).collect();
            aggregate(spec.vary.label(g), &at)
        })
        .collect();
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        points,
    })
}
