use serde::{Deserialize, Serialize};

use super::clustering::local_clustering_all;
use crate::graph::FractureGraph;
use crate::stats::{fit_log_log, LineFit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CkPoint {
    pub k: usize,
    pub mean_c: f64,
    pub nodes: usize,
}

/// Mean clustering per degree class and its log-log slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CkSpectrum {
    /// One point per degree present with `k >= 2`.
    pub points: Vec<CkPoint>,
    /// Fit over points with nonzero mean clustering; absent with fewer than
    /// three of them.
    pub fit: Option<LineFit>,
}

impl CkSpectrum {
    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

pub fn ck_spectrum(graph: &FractureGraph) -> CkSpectrum {
    ck_from_clustering(graph, &local_clustering_all(graph))
}

pub(crate) fn ck_from_clustering(graph: &FractureGraph, c: &[f64]) -> CkSpectrum {
    let kmax = graph.max_degree();
    let mut sum = vec![0.0; kmax + 1];
    let mut cnt = vec![0usize; kmax + 1];
    for (i, &ci) in c.iter().enumerate() {
        let k = graph.degree(i);
        sum[k] += ci;
        cnt[k] += 1;
    }
    let points: Vec<CkPoint> = (2..=kmax)
        .filter(|&k| cnt[k] > 0)
        .map(|k| CkPoint {
            k,
            mean_c: sum[k] / cnt[k] as f64,
            nodes: cnt[k],
        })
        .collect();
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.mean_c > 0.0)
        .map(|p| (p.k as f64, p.mean_c))
        .collect();
    let fit = if usable.len() >= 3 {
        fit_log_log(&usable)
    } else {
        None
    };
    CkSpectrum { points, fit }
}
