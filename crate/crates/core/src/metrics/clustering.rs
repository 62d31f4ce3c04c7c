use crate::error::{Error, Result};
use crate::graph::FractureGraph;

/// Fraction of realized edges among the neighbors of node `i`; zero when the
/// node has fewer than two neighbors.
pub fn local_clustering(graph: &FractureGraph, i: usize) -> Result<f64> {
    if i >= graph.n_nodes() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: graph.n_nodes(),
        });
    }
    Ok(local_unchecked(graph, i))
}

fn local_unchecked(graph: &FractureGraph, i: usize) -> f64 {
    let nbrs = graph.neighbors(i);
    let k = nbrs.len();
    if k <= 1 {
        return 0.0;
    }
    let mut links = 0usize;
    for (a, &u) in nbrs.iter().enumerate() {
        // both lists are sorted: count common members of N(u) and the tail
        let tail = &nbrs[a + 1..];
        links += sorted_intersection_len(graph.neighbors(u), tail);
    }
    links as f64 / (k * (k - 1) / 2) as f64
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

pub fn local_clustering_all(graph: &FractureGraph) -> Vec<f64> {
    (0..graph.n_nodes()).map(|i| local_unchecked(graph, i)).collect()
}

/// Mean local clustering over all nodes; zero for the empty graph.
pub fn clustering_coefficient(graph: &FractureGraph) -> f64 {
    let c = local_clustering_all(graph);
    if c.is_empty() {
        0.0
    } else {
        c.iter().sum::<f64>() / c.len() as f64
    }
}
