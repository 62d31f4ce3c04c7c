use serde::{Deserialize, Serialize};

use crate::graph::FractureGraph;
use crate::stats::{fit_log_log, LineFit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeBin {
    pub k: usize,
    pub count: usize,
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    /// Nonzero bins in increasing `k`.
    pub bins: Vec<DegreeBin>,
    /// Log-log least-squares fit of frequency against `k` over bins with
    /// `k >= 2`; absent with fewer than three such bins.
    pub fit: Option<LineFit>,
}

pub fn degree_distribution(graph: &FractureGraph) -> DegreeDistribution {
    let n = graph.n_nodes();
    let mut counts = vec![0usize; graph.max_degree() + 1];
    for k in graph.degrees() {
        counts[k] += 1;
    }
    let bins: Vec<DegreeBin> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(k, &count)| DegreeBin {
            k,
            count,
            frequency: count as f64 / n as f64,
        })
        .collect();
    let tail: Vec<(f64, f64)> = bins
        .iter()
        .filter(|b| b.k >= 2)
        .map(|b| (b.k as f64, b.frequency))
        .collect();
    let fit = if tail.len() >= 3 {
        fit_log_log(&tail)
    } else {
        None
    };
    DegreeDistribution { bins, fit }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::test_graphs::*;

    #[test]
    fn cycle_is_single_bin() {
        let d = degree_distribution(&cycle(4));
        assert_eq!(
            d.bins,
            vec![DegreeBin {
                k: 2,
                count: 4,
                frequency: 1.0
            }]
        );
        assert!(d.fit.is_none());
    }

    #[test]
    fn star_with_five_leaves() {
        let d = degree_distribution(&star(5));
        assert_eq!(d.bins.len(), 2);
        assert_eq!((d.bins[0].k, d.bins[0].count), (1, 5));
        assert!((d.bins[0].frequency - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!((d.bins[1].k, d.bins[1].count), (5, 1));
        assert!((d.bins[1].frequency - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn frequencies_sum_to_one_and_fit_sign() {
        // degrees 2 (x8), 3 (x4), 4 (x2)... a decaying tail
        let mut edges = Vec::new();
        let mut next = 0;
        let mut add_node_with_degree = |k: usize, edges: &mut Vec<(usize, usize)>| {
            let c = next;
            for j in 0..k {
                edges.push((c, c + 1 + j));
            }
            next += k + 1;
        };
        for (k, reps) in [(2, 8), (3, 4), (4, 2), (5, 1)] {
            for _ in 0..reps {
                add_node_with_degree(k, &mut edges);
            }
        }
        let n = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
        let d = degree_distribution(&FractureGraph::from_edges(n, edges));
        let total: f64 = d.bins.iter().map(|b| b.frequency).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(d.fit.unwrap().slope < 0.0);
    }
}
