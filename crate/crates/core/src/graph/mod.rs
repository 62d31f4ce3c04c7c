//! Fracture graph: one node per fracture, one edge per intersecting pair.

mod index;
mod union_find;

use std::io::{BufRead, Write};
use std::path::Path;

pub use index::SpatialIndex;
pub use union_find::UnionFind;

use crate::dfn::{Fracture, FractureNetwork};
use crate::error::{Error, Result};
use crate::geometry::{Point, Segment};

/// Intersection point of two fracture traces, if any.
pub fn segment_intersection(f1: &Fracture, f2: &Fracture) -> Option<Point> {
    f1.segment.intersection(&f2.segment)
}

/// Simple undirected graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FractureGraph {
    adjacency: Vec<Vec<usize>>,
}

impl FractureGraph {
    /// Graph on `n` nodes from an edge list. Self-loops and duplicates are
    /// dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (i, j) in edges {
            assert!(i < n && j < n, "edge ({i}, {j}) out of range for {n} nodes");
            if i != j {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        Self { adjacency }
    }

    pub fn n_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// Component label per node; labels are the smallest node id of each
    /// component.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n_nodes());
        for (i, j) in self.edges() {
            uf.union(i, j);
        }
        let mut label = vec![usize::MAX; self.n_nodes()];
        let mut out = vec![0; self.n_nodes()];
        for i in 0..self.n_nodes() {
            let r = uf.find(i);
            if label[r] == usize::MAX {
                label[r] = i;
            }
            out[i] = label[r];
        }
        out
    }

    /// `# nodes=N` followed by one `i,j` line per edge with `i < j`.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# nodes={}", self.n_nodes())?;
        for (i, j) in self.edges() {
            writeln!(out, "{i},{j}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn save_edge_list(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::file(path, e))?;
        self.write_edge_list(std::io::BufWriter::new(file))
    }

    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("nodes=") {
                    n = Some(v.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("bad node count `{v}`"),
                    })?);
                }
                continue;
            }
            let parse_pair = || -> Option<(usize, usize)> {
                let (a, b) = t.split_once(',')?;
                Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
            };
            let (i, j) = parse_pair().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("expected `i,j`, got `{t}`"),
            })?;
            edges.push((i, j));
        }
        let n = n.ok_or_else(|| Error::Parse {
            line: 1,
            message: "missing `# nodes=N` header".into(),
        })?;
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(Error::Parse {
                line: 0,
                message: format!("edge ({i}, {j}) references a node >= {n}"),
            });
        }
        Ok(Self::from_edges(n, edges))
    }
}

/// Bucket size used when indexing fracture traces.
pub fn bucket_size(network: &FractureNetwork) -> f64 {
    (network.config.alpha / 8.0).max(1.0)
}

/// Fracture graph of a network; node `i` is the `i`-th fracture in creation
/// order.
pub fn build_graph(network: &FractureNetwork) -> FractureGraph {
    let mut index = SpatialIndex::new(network.domain, bucket_size(network));
    let mut edges = Vec::new();
    for (i, f) in network.fractures.iter().enumerate() {
        for j in index.candidates(&f.segment) {
            if segment_intersection(f, &network.fractures[j]).is_some() {
                edges.push((j, i));
            }
        }
        index.insert(i, &f.segment);
    }
    FractureGraph::from_edges(network.len(), edges)
}

/// Reference O(N^2) construction, kept for cross-checking the bucketed path.
pub fn build_graph_all_pairs(network: &FractureNetwork) -> FractureGraph {
    let fr = &network.fractures;
    let mut edges = Vec::new();
    for i in 0..fr.len() {
        for j in i + 1..fr.len() {
            if segment_intersection(&fr[i], &fr[j]).is_some() {
                edges.push((i, j));
            }
        }
    }
    FractureGraph::from_edges(fr.len(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Incremental side-to-side connectivity over fractures, with two virtual
/// nodes standing for the low and high faces of the chosen axis.
#[derive(Debug, Clone)]
pub struct SpanningTracker {
    axis: Axis,
    extent: f64,
    index: SpatialIndex,
    segments: Vec<Segment>,
    uf: UnionFind,
}

const LOW: usize = 0;
const HIGH: usize = 1;

impl SpanningTracker {
    pub fn new(extent: f64, bucket: f64, axis: Axis) -> Self {
        Self {
            axis,
            extent,
            index: SpatialIndex::new(extent, bucket),
            segments: Vec::new(),
            uf: UnionFind::new(2),
        }
    }

    /// Add a trace with the given aperture; returns whether the faces are now
    /// connected.
    pub fn add(&mut self, segment: Segment, aperture: f64) -> bool {
        let id = self.segments.len();
        let node = self.uf.push();
        for j in self.index.candidates(&segment) {
            if segment.intersection(&self.segments[j]).is_some() {
                self.uf.union(node, j + 2);
            }
        }
        let (lo, hi) = match self.axis {
            Axis::X => (segment.min_x(), segment.max_x()),
            Axis::Y => (segment.min_y(), segment.max_y()),
        };
        let half = 0.5 * aperture;
        if lo <= half {
            self.uf.union(node, LOW);
        }
        if hi >= self.extent - half {
            self.uf.union(node, HIGH);
        }
        self.index.insert(id, &segment);
        self.segments.push(segment);
        self.spans()
    }

    pub fn spans(&mut self) -> bool {
        self.uf.connected(LOW, HIGH)
    }
}

/// Whether one connected cluster of fractures touches both faces normal to
/// `axis`. A fracture touches a face when its trace comes within half its
/// aperture of it.
pub fn percolates(network: &FractureNetwork, axis: Axis) -> bool {
    let mut tracker = SpanningTracker::new(network.domain, bucket_size(network), axis);
    let mut spans = false;
    for f in &network.fractures {
        spans = tracker.add(f.segment, f.aperture);
    }
    spans
}
