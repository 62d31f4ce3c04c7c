use serde::{Deserialize, Serialize};

use super::{run_sweep, SweepResult, SweepSpec, Vary};
use crate::advection::{ensemble_value_distribution, NodeValueDistribution, SteadyState, ValueBins};
use crate::error::{Error, Result};
use crate::stats::{pearson, spearman};

/// Direction of mean K across the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendVerdict {
    /// Rank correlation of grid value against mean K; absent when undefined.
    pub spearman: Option<f64>,
    pub non_increasing: bool,
}

impl TrendVerdict {
    pub fn of(xs: &[f64], ys: &[f64]) -> Self {
        Self {
            spearman: spearman(xs, ys),
            non_increasing: ys.windows(2).all(|w| w[1] <= w[0]),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GammaReport {
    pub result: SweepResult,
    pub verdict: TrendVerdict,
}

fn mean_k(result: &SweepResult) -> Result<Vec<f64>> {
    result
        .points
        .iter()
        .map(|p| {
            p.k_mean.ok_or_else(|| {
                Error::InsufficientData(format!("no permeability at {}={}", result.spec.vary.name(), p.value))
            })
        })
        .collect()
}

/// Permeability against the length exponent.
pub fn sweep_gamma(spec: &SweepSpec) -> Result<GammaReport> {
    let Vary::Key { name, values } = &spec.vary else {
        return Err(Error::invalid("vary", "sweep_gamma varies gamma"));
    };
    if name != "gamma" {
        return Err(Error::invalid("vary", "sweep_gamma varies gamma"));
    }
    let gammas: Vec<f64> = values
        .iter()
        .map(|v| v.parse::<f64>().ok().filter(|g| *g > 0.0 && *g <= 1.5))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::invalid("gamma", "grid values must lie in (0, 1.5]"))?;
    let mut spec = spec.clone();
    spec.lbm = true;
    let result = run_sweep(&spec)?;
    let k = mean_k(&result)?;
    Ok(GammaReport {
        verdict: TrendVerdict::of(&gammas, &k),
        result,
    })
}

#[derive(Debug, Clone)]
pub struct AzimuthReport {
    pub result: SweepResult,
    /// Largest minus smallest mean K over the grid.
    pub spread: f64,
}

/// Permeability against the azimuth of a perpendicular joint-set pair,
/// without hubs.
pub fn sweep_azimuth(spec: &SweepSpec) -> Result<AzimuthReport> {
    if !matches!(spec.vary, Vary::Azimuth(_)) {
        return Err(Error::invalid("vary", "sweep_azimuth varies azimuth"));
    }
    let mut spec = spec.clone();
    spec.lbm = true;
    spec.base.n_fz = 0;
    let result = run_sweep(&spec)?;
    let k = mean_k(&result)?;
    let max = k.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = k.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(AzimuthReport {
        result,
        spread: max - min,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub n: usize,
    pub spearman: Option<f64>,
    pub pearson: Option<f64>,
}

/// Correlation of `(L, K)` pairs; at least ten are required.
pub fn correlate_l_vs_k(pairs: &[(f64, f64)]) -> Result<Correlation> {
    if pairs.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "{} (L, K) pairs, need at least 10",
            pairs.len()
        )));
    }
    let (l, k): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
    Ok(Correlation {
        n: pairs.len(),
        spearman: spearman(&l, &k),
        pearson: pearson(&l, &k),
    })
}

/// `(L, K)` pairs of every realization that produced both.
pub fn lk_pairs(result: &SweepResult) -> Vec<(f64, f64)> {
    result
        .rows
        .iter()
        .filter_map(|r| Some((r.l()?, r.k()?)))
        .collect()
}

pub fn correlate_rows(result: &SweepResult) -> Result<Correlation> {
    correlate_l_vs_k(&lk_pairs(result))
}

#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub result: SweepResult,
    /// Ensemble node-value distribution per growth pair.
    pub distributions: Vec<NodeValueDistribution>,
}

/// Steady advection distributions against hub and background growth.
pub fn sweep_hub_growth(spec: &SweepSpec, bins: ValueBins) -> Result<GrowthReport> {
    if !matches!(spec.vary, Vary::Growth(_)) {
        return Err(Error::invalid("vary", "sweep_hub_growth varies growth"));
    }
    let mut spec = spec.clone();
    spec.advect = true;
    let result = run_sweep(&spec)?;
    let distributions = (0..spec.vary.len())
        .map(|g| {
            let states: Vec<SteadyState> = result
                .rows_at(g)
                .filter_map(|r| r.ok().and_then(|x| x.steady.clone()))
                .collect();
            ensemble_value_distribution(&states, bins)
        })
        .collect();
    Ok(GrowthReport {
        result,
        distributions,
    })
}
