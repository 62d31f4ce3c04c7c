//! Graph statistics of fracture graphs: clustering, degree distribution,
//! geodesic distances, the c-k spectrum and the 4-node subgraph census.

mod census;
mod ck;
mod clustering;
mod degree;
mod paths;
mod report;

pub use census::{subgraph_census4, Census4, Quad, DEFAULT_CENSUS_CAP};
pub use ck::{ck_spectrum, CkPoint, CkSpectrum};
pub use clustering::{clustering_coefficient, local_clustering, local_clustering_all};
pub use degree::{degree_distribution, DegreeBin, DegreeDistribution};
pub use paths::{mean_path_length, DistanceMatrix, PathStats};
pub use report::{compute_report, MetricsReport};

#[cfg(test)]
pub(crate) mod test_graphs {
    use crate::graph::FractureGraph;

    pub fn complete(n: usize) -> FractureGraph {
        FractureGraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn star(leaves: usize) -> FractureGraph {
        FractureGraph::from_edges(leaves + 1, (1..=leaves).map(|j| (0, j)))
    }

    pub fn path(n: usize) -> FractureGraph {
        FractureGraph::from_edges(n, (1..n).map(|j| (j - 1, j)))
    }

    pub fn cycle(n: usize) -> FractureGraph {
        FractureGraph::from_edges(n, (0..n).map(|j| (j, (j + 1) % n)))
    }

    /// Triangle 0-1-2 with pendant 3 on node 0.
    pub fn paw() -> FractureGraph {
        FractureGraph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    }
}
