use std::collections::VecDeque;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::FractureGraph;

/// Dense hop-distance matrix; `-1` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<i32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let d = self.data[i * self.n + j];
        (d >= 0).then_some(d as u32)
    }

    pub fn raw(&self, i: usize, j: usize) -> i32 {
        self.data[i * self.n + j]
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let mut line = String::new();
        for i in 0..self.n {
            line.clear();
            for j in 0..self.n {
                if j > 0 {
                    line.push(',');
                }
                line.push_str(&self.raw(i, j).to_string());
            }
            writeln!(out, "{line}")?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    /// Mean hop distance over unordered reachable pairs; absent without
    /// edges.
    pub mean: Option<f64>,
    pub reachable_pairs: u64,
    /// Longest finite hop distance.
    pub diameter: u32,
    pub giant_fraction: f64,
    pub distances: DistanceMatrix,
}

/// Breadth-first search from every node.
pub fn mean_path_length(graph: &FractureGraph) -> PathStats {
    let n = graph.n_nodes();
    let mut data = vec![-1i32; n * n];
    let mut queue = VecDeque::new();
    let mut sum: u64 = 0;
    let mut pairs: u64 = 0;
    let mut diameter = 0u32;
    let mut largest = 0usize;
    for s in 0..n {
        let row = &mut data[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        let mut reached = 1usize;
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &v in graph.neighbors(u) {
                if row[v] < 0 {
                    row[v] = du + 1;
                    reached += 1;
                    queue.push_back(v);
                    if v > s {
                        sum += (du + 1) as u64;
                        pairs += 1;
                    }
                    diameter = diameter.max((du + 1) as u32);
                }
            }
        }
        largest = largest.max(reached);
    }
    PathStats {
        mean: (pairs > 0).then(|| sum as f64 / pairs as f64),
        reachable_pairs: pairs,
        diameter,
        giant_fraction: if n == 0 { 0.0 } else { largest as f64 / n as f64 },
        distances: DistanceMatrix { n, data },
    }
}
