//! Linear diffusion/advection of a node scalar over the fracture graph,
//! `du_i/dt = eps * sum_j L_ij u_j` with `L_ij = A_ij - k_i delta_ij`, with
//! clamped source and sink nodes.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FractureGraph;
use crate::stats::{Histogram, Moments};

pub const SOURCE_VALUE: f64 = 10.0;
pub const SINK_VALUE: f64 = -10.0;

/// Graph Laplacian evaluated on the fly from the adjacency lists.
#[derive(Debug, Clone, Copy)]
pub struct LaplacianView<'g> {
    graph: &'g FractureGraph,
}

pub fn laplacian(graph: &FractureGraph) -> LaplacianView<'_> {
    LaplacianView { graph }
}

impl<'g> LaplacianView<'g> {
    pub fn graph(&self) -> &'g FractureGraph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n_nodes()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            -(self.graph.degree(i) as i64)
        } else if self.graph.has_edge(i, j) {
            1
        } else {
            0
        }
    }

    /// Nonzero entries of row `i` as `(column, value)`, diagonal first.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, i64)> + 'g {
        let g = self.graph;
        std::iter::once((i, -(g.degree(i) as i64))).chain(g.neighbors(i).iter().map(|&j| (j, 1)))
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.row(i).map(|(_, v)| v).sum()
    }

    /// `(L u)_i`, evaluated as `sum_j (u_j - u_i)` over neighbours.
    pub fn apply_row(&self, u: &[f64], i: usize) -> f64 {
        let ui = u[i];
        self.graph.neighbors(i).iter().map(|&j| u[j] - ui).sum()
    }

    /// Dense copy, mainly for inspection and cross-checks.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Upper bound on the spectral radius of `-L`: the largest `k_i + k_j`
    /// over edges.
    pub fn spectral_bound(&self) -> usize {
        self.graph
            .edges()
            .map(|(i, j)| self.graph.degree(i) + self.graph.degree(j))
            .max()
            .unwrap_or(0)
    }
}

/// Largest stable explicit Euler step (exclusive) for diffusion constant
/// `epsilon`; infinite on an edgeless graph.
pub fn stability_bound(graph: &FractureGraph, epsilon: f64) -> f64 {
    let rho = laplacian(graph).spectral_bound();
    if rho == 0 {
        f64::INFINITY
    } else {
        2.0 / (epsilon * rho as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvectionState {
    pub u: Vec<f64>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub u_src: f64,
    pub u_snk: f64,
    pub epsilon: f64,
    pub dt: f64,
    pub t: u64,
    clamp: Vec<Option<f64>>,
}

impl AdvectionState {
    pub fn new(
        u0: Vec<f64>,
        sources: Vec<usize>,
        sinks: Vec<usize>,
        u_src: f64,
        u_snk: f64,
        epsilon: f64,
        dt: f64,
    ) -> Result<Self> {
        let n = u0.len();
        let mut clamp = vec![None; n];
        for (set, value, name) in [(&sources, u_src, "sources"), (&sinks, u_snk, "sinks")] {
            for &i in set.iter() {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
                if clamp[i].is_some() && name == "sinks" {
                    return Err(Error::invalid(
                        "sinks",
                        format!("node {i} is both a source and a sink"),
                    ));
                }
                clamp[i] = Some(value);
            }
        }
        if !(epsilon > 0.0 && dt > 0.0) {
            return Err(Error::invalid("dt", "epsilon and dt must be positive"));
        }
        let mut state = Self {
            u: u0,
            sources,
            sinks,
            u_src,
            u_snk,
            epsilon,
            dt,
            t: 0,
            clamp,
        };
        state.restore_clamps();
        Ok(state)
    }

    /// Unclamped state.
    pub fn free(u0: Vec<f64>, epsilon: f64, dt: f64) -> Result<Self> {
        Self::new(u0, Vec::new(), Vec::new(), 0.0, 0.0, epsilon, dt)
    }

    pub fn is_clamped(&self, i: usize) -> bool {
        self.clamp[i].is_some()
    }

    fn restore_clamps(&mut self) {
        for (u, c) in self.u.iter_mut().zip(&self.clamp) {
            if let Some(v) = c {
                *u = *v;
            }
        }
    }
}

/// One synchronous explicit Euler step; returns the largest change of a free
/// node.
pub fn advect_step(state: &mut AdvectionState, lap: &LaplacianView<'_>) -> Result<f64> {
    let bound = stability_bound(lap.graph(), state.epsilon);
    if state.dt >= bound {
        return Err(Error::Stability {
            dt: state.dt,
            bound,
        });
    }
    Ok(euler_step(state, lap, None))
}

fn euler_step(state: &mut AdvectionState, lap: &LaplacianView<'_>, active: Option<&[bool]>) -> f64 {
    let scale = state.dt * state.epsilon;
    let old = state.u.clone();
    let mut max_change = 0.0_f64;
    for i in 0..old.len() {
        if state.clamp[i].is_some() || active.is_some_and(|a| !a[i]) {
            continue;
        }
        let du = scale * lap.apply_row(&old, i);
        state.u[i] = old[i] + du;
        max_change = max_change.max(du.abs());
    }
    state.t += 1;
    max_change
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyOptions {
    pub u_src: f64,
    pub u_snk: f64,
    pub epsilon: f64,
    /// Euler step; `None` picks 90% of the stability bound.
    pub dt: Option<f64>,
    pub tol: f64,
    pub max_steps: u64,
}

impl Default for SteadyOptions {
    fn default() -> Self {
        Self {
            u_src: SOURCE_VALUE,
            u_snk: SINK_VALUE,
            epsilon: 1.0,
            dt: None,
            tol: 1e-10,
            max_steps: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    pub u: Vec<f64>,
    pub clamped: Vec<bool>,
    /// Free nodes in components without any clamped node; held at zero.
    pub undetermined: Vec<usize>,
    pub steps: u64,
    pub dt: f64,
    pub last_change: f64,
}

impl SteadyState {
    pub fn is_determined(&self, i: usize) -> bool {
        self.undetermined.binary_search(&i).is_err()
    }

    /// Values of clamped nodes and of free nodes reached from a clamp.
    pub fn determined_values(&self) -> Vec<f64> {
        (0..self.u.len())
            .filter(|&i| self.is_determined(i))
            .map(|i| self.u[i])
            .collect()
    }

    /// Values of free nodes reached from a clamp.
    pub fn free_values(&self) -> Vec<f64> {
        (0..self.u.len())
            .filter(|&i| !self.clamped[i] && self.is_determined(i))
            .map(|i| self.u[i])
            .collect()
    }

    /// `eps (u_i - u_j)` for every edge `i < j`.
    pub fn edge_flux(&self, graph: &FractureGraph, epsilon: f64) -> Vec<f64> {
        graph
            .edges()
            .map(|(i, j)| epsilon * (self.u[i] - self.u[j]))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "node,u")?;
        for (i, u) in self.u.iter().enumerate() {
            writeln!(out, "{i},{u}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_flux_csv<W: Write>(
        &self,
        mut out: W,
        graph: &FractureGraph,
        epsilon: f64,
    ) -> Result<()> {
        writeln!(out, "i,j,flux")?;
        for ((i, j), q) in graph.edges().zip(self.edge_flux(graph, epsilon)) {
            writeln!(out, "{i},{j},{q}")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Source/sink nodes by creation order: the first and last ten, or the first
/// and last tenth (at least one) below 25 nodes.
pub fn default_terminals(n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "{n} nodes cannot host disjoint sources and sinks"
        )));
    }
    let m = if n >= 25 { 10 } else { (n / 10).max(1) };
    Ok(((0..m).collect(), (n - m..n).collect()))
}

/// Iterate Euler steps until no free node moves by `tol` and every free node
/// is within `tol` of its neighbour mean.
pub fn solve_steady(
    graph: &FractureGraph,
    sources: &[usize],
    sinks: &[usize],
    opts: &SteadyOptions,
) -> Result<SteadyState> {
    let n = graph.n_nodes();
    let lap = laplacian(graph);
    let bound = stability_bound(graph, opts.epsilon);
    let dt = match opts.dt {
        Some(dt) if dt >= bound => return Err(Error::Stability { dt, bound }),
        Some(dt) => dt,
        None if bound.is_finite() => 0.9 * bound,
        None => 1.0,
    };
    let mut state = AdvectionState::new(
        vec![0.0; n],
        sources.to_vec(),
        sinks.to_vec(),
        opts.u_src,
        opts.u_snk,
        opts.epsilon,
        dt,
    )?;

    // free nodes cut off from every clamp stay at zero
    let comp = graph.components();
    let mut anchored = vec![false; n];
    for i in sources.iter().chain(sinks) {
        anchored[comp[*i]] = true;
    }
    let active: Vec<bool> = (0..n).map(|i| anchored[comp[i]]).collect();
    let undetermined: Vec<usize> = (0..n).filter(|&i| !active[i]).collect();

    let mut last_change = f64::INFINITY;
    while state.t < opts.max_steps {
        last_change = euler_step(&mut state, &lap, Some(&active));
        if last_change < opts.tol && max_harmonic_defect(&state, &lap, &active) < opts.tol {
            break;
        }
    }
    if state.t >= opts.max_steps
        && !(last_change < opts.tol && max_harmonic_defect(&state, &lap, &active) < opts.tol)
    {
        return Err(Error::NonConvergence {
            steps: state.t,
            residual: last_change,
        });
    }
    let clamped = (0..n).map(|i| state.is_clamped(i)).collect();
    Ok(SteadyState {
        u: state.u,
        clamped,
        undetermined,
        steps: state.t,
        dt,
        last_change,
    })
}

/// Largest `|u_i - mean(u_neighbours)|` over free active nodes.
fn max_harmonic_defect(state: &AdvectionState, lap: &LaplacianView<'_>, active: &[bool]) -> f64 {
    (0..state.u.len())
        .filter(|&i| active[i] && !state.is_clamped(i) && lap.graph().degree(i) > 0)
        .map(|i| (lap.apply_row(&state.u, i) / lap.graph().degree(i) as f64).abs())
        .fold(0.0, f64::max)
}

/// Binning of steady node values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueBins {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl Default for ValueBins {
    /// Unit-width bins centred on the integers -10..=10.
    fn default() -> Self {
        Self {
            lo: -10.5,
            hi: 10.5,
            bins: 21,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeValueDistribution {
    /// Counts over determined nodes (clamps included), averaged over
    /// realizations for an ensemble.
    pub histogram: Histogram,
    /// Moments of the free-node values (equal weight per realization).
    pub moments: Option<Moments>,
    pub realizations: usize,
}

impl NodeValueDistribution {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "bin_center,count,frequency")?;
        let freq = self.histogram.frequencies();
        for (b, (&c, f)) in self.histogram.counts.iter().zip(freq).enumerate() {
            writeln!(out, "{},{},{}", self.histogram.center(b), c, f)?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn node_value_distribution(state: &SteadyState, bins: ValueBins) -> NodeValueDistribution {
    ensemble_value_distribution(std::slice::from_ref(state), bins)
}

/// Mean of the per-realization histograms, with mixture moments of the free
/// node values.
pub fn ensemble_value_distribution(states: &[SteadyState], bins: ValueBins) -> NodeValueDistribution {
    let hists: Vec<Histogram> = states
        .iter()
        .map(|s| {
            let mut h = Histogram::new(bins.lo, bins.hi, bins.bins);
            s.determined_values().into_iter().for_each(|v| h.add(v));
            h
        })
        .collect();
    let histogram =
        Histogram::mean_of(&hists).unwrap_or_else(|| Histogram::new(bins.lo, bins.hi, bins.bins));
    let free: Vec<Vec<f64>> = states.iter().map(SteadyState::free_values).collect();
    let parts: Vec<&[f64]> = free.iter().map(Vec::as_slice).collect();
    NodeValueDistribution {
        histogram,
        moments: Moments::of_mixture(&parts),
        realizations: states.len(),
    }
}

/// Histogram of edge fluxes over `[-range, range]`.
pub fn edge_flux_histogram(flux: &[f64], range: f64, bins: usize) -> Histogram {
    let mut h = Histogram::new(-range, range, bins);
    flux.iter().for_each(|&f| h.add(f));
    h
}
