//! Census of connected induced 4-node subgraphs by ESU enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FractureGraph;

pub const DEFAULT_CENSUS_CAP: u64 = 100_000_000;

/// The six connected graphs on four vertices, ordered by edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quad {
    Path,
    Star,
    Paw,
    Cycle,
    Diamond,
    Complete,
}

impl Quad {
    pub const ALL: [Quad; 6] = [
        Quad::Path,
        Quad::Star,
        Quad::Paw,
        Quad::Cycle,
        Quad::Diamond,
        Quad::Complete,
    ];

    /// 1-based class index used in the CSV output.
    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// Classify from the edge count and the degree sequence within the
    /// 4-vertex subgraph (assumed connected).
    pub fn classify(edges: u32, max_degree: u32) -> Quad {
        match (edges, max_degree) {
            (3, 3) => Quad::Star,
            (3, _) => Quad::Path,
            (4, 3) => Quad::Paw,
            (4, _) => Quad::Cycle,
            (5, _) => Quad::Diamond,
            (6, _) => Quad::Complete,
            _ => unreachable!("connected 4-vertex graph with {edges} edges"),
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quad::Path => "path",
            Quad::Star => "star",
            Quad::Paw => "paw",
            Quad::Cycle => "cycle",
            Quad::Diamond => "diamond",
            Quad::Complete => "complete",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Census4(pub [u64; 6]);

impl Census4 {
    pub fn get(&self, q: Quad) -> u64 {
        self.0[q as usize]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Count every connected induced 4-vertex subgraph exactly once.
///
/// Fails with [`Error::Resource`] once more than `cap` subgraphs are found.
pub fn subgraph_census4(graph: &FractureGraph, cap: u64) -> Result<Census4> {
    let mut esu = Esu {
        graph,
        counts: [0; 6],
        found: 0,
        cap,
        blocked: vec![0; graph.n_nodes()],
    };
    if graph.n_nodes() < 4 {
        return Ok(Census4::default());
    }
    for root in 0..graph.n_nodes() {
        let ext: Vec<usize> = graph
            .neighbors(root)
            .iter()
            .copied()
            .filter(|&u| u > root)
            .collect();
        let mut sub = [root, 0, 0, 0];
        esu.block(root, 1);
        esu.extend(&mut sub, 1, ext, root)?;
        esu.block(root, -1);
    }
    Ok(Census4(esu.counts))
}

struct Esu<'g> {
    graph: &'g FractureGraph,
    counts: [u64; 6],
    found: u64,
    cap: u64,
    /// Multiplicity of each node in the closed neighbourhood of the current
    /// subgraph.
    blocked: Vec<u32>,
}

impl Esu<'_> {
    fn block(&mut self, w: usize, delta: i32) {
        let step = |b: &mut u32| *b = b.wrapping_add_signed(delta);
        step(&mut self.blocked[w]);
        for &u in self.graph.neighbors(w) {
            step(&mut self.blocked[u]);
        }
    }

    fn extend(
        &mut self,
        sub: &mut [usize; 4],
        size: usize,
        mut ext: Vec<usize>,
        root: usize,
    ) -> Result<()> {
        if size == 3 {
            return self.record_all(sub, &ext);
        }
        while let Some(w) = ext.pop() {
            // ext already lies inside the closed neighbourhood, so unblocked
            // neighbours of w are new and exclusive to it
            let mut next = ext.clone();
            next.extend(
                self.graph
                    .neighbors(w)
                    .iter()
                    .copied()
                    .filter(|&u| u > root && self.blocked[u] == 0),
            );
            sub[size] = w;
            self.block(w, 1);
            let r = self.extend(sub, size + 1, next, root);
            self.block(w, -1);
            r?;
        }
        Ok(())
    }

    /// Classify `sub[..3] + w` for every `w` in `ext`.
    fn record_all(&mut self, sub: &[usize; 4], ext: &[usize]) -> Result<()> {
        self.found += ext.len() as u64;
        if self.found > self.cap {
            return Err(Error::Resource(format!(
                "more than {} connected 4-node subgraphs",
                self.cap
            )));
        }
        let g = self.graph;
        let mut base_deg = [0u32; 3];
        let mut base_edges = 0;
        for a in 0..3 {
            for b in a + 1..3 {
                if g.has_edge(sub[a], sub[b]) {
                    base_edges += 1;
                    base_deg[a] += 1;
                    base_deg[b] += 1;
                }
            }
        }
        for &w in ext {
            let mut deg = [base_deg[0], base_deg[1], base_deg[2], 0];
            for a in 0..3 {
                if g.has_edge(sub[a], w) {
                    deg[a] += 1;
                    deg[3] += 1;
                }
            }
            let edges = base_edges + deg[3];
            let q = Quad::classify(edges, *deg.iter().max().unwrap());
            self.counts[q as usize] += 1;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::test_graphs::*;

    #[test]
    fn single_classes() {
        assert_eq!(subgraph_census4(&cycle(4), DEFAULT_CENSUS_CAP).unwrap().0, [0, 0, 0, 1, 0, 0]);
        assert_eq!(subgraph_census4(&complete(4), DEFAULT_CENSUS_CAP).unwrap().0, [0, 0, 0, 0, 0, 1]);
        assert_eq!(subgraph_census4(&path(4), DEFAULT_CENSUS_CAP).unwrap().0, [1, 0, 0, 0, 0, 0]);
        assert_eq!(subgraph_census4(&star(3), DEFAULT_CENSUS_CAP).unwrap().0, [0, 1, 0, 0, 0, 0]);
        assert_eq!(subgraph_census4(&paw(), DEFAULT_CENSUS_CAP).unwrap().0, [0, 0, 1, 0, 0, 0]);
        let diamond = FractureGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        assert_eq!(subgraph_census4(&diamond, DEFAULT_CENSUS_CAP).unwrap().0, [0, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn complete_five() {
        // every 4-subset of K5 is K4
        assert_eq!(subgraph_census4(&complete(5), DEFAULT_CENSUS_CAP).unwrap().0, [0, 0, 0, 0, 0, 5]);
    }

    #[test]
    fn small_graphs_are_zero() {
        assert_eq!(subgraph_census4(&complete(3), DEFAULT_CENSUS_CAP).unwrap().total(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            subgraph_census4(&complete(6), 10),
            Err(Error::Resource(_))
        ));
        assert_eq!(subgraph_census4(&complete(6), 15).unwrap().total(), 15);
    }
}
