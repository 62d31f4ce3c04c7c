//! Uniform bucket grid over the domain for candidate intersection pairs.

use crate::geometry::Segment;

#[derive(Debug, Clone)]
pub struct SpatialIndex {
    cell: f64,
    cols: usize,
    rows: usize,
    buckets: Vec<Vec<usize>>,
    /// last query stamp per id, for deduplication without sorting
    seen: Vec<u32>,
    stamp: u32,
}

impl SpatialIndex {
    /// Grid over `[0, extent]^2` with square buckets of side `cell`.
    pub fn new(extent: f64, cell: f64) -> Self {
        let cell = if cell.is_finite() && cell > 0.0 {
            cell
        } else {
            extent.max(1.0)
        };
        let cols = ((extent / cell).ceil() as usize).max(1);
        Self {
            cell,
            cols,
            rows: cols,
            buckets: vec![Vec::new(); cols * cols],
            seen: Vec::new(),
            stamp: 0,
        }
    }

    fn span(&self, lo: f64, hi: f64, limit: usize) -> (usize, usize) {
        let to_idx = |v: f64| ((v / self.cell).floor().max(0.0) as usize).min(limit - 1);
        (to_idx(lo), to_idx(hi))
    }

    fn cells(&self, s: &Segment) -> impl Iterator<Item = usize> + '_ {
        // pad so near-touching pairs on a bucket boundary still meet
        const PAD: f64 = 1e-6;
        let (c0, c1) = self.span(s.min_x() - PAD, s.max_x() + PAD, self.cols);
        let (r0, r1) = self.span(s.min_y() - PAD, s.max_y() + PAD, self.rows);
        (r0..=r1).flat_map(move |r| (c0..=c1).map(move |c| r * self.cols + c))
    }

    pub fn insert(&mut self, id: usize, s: &Segment) {
        let cells: Vec<usize> = self.cells(s).collect();
        for c in cells {
            self.buckets[c].push(id);
        }
        if self.seen.len() <= id {
            self.seen.resize(id + 1, 0);
        }
    }

    /// Ids sharing at least one bucket with `s`, ascending.
    pub fn candidates(&mut self, s: &Segment) -> Vec<usize> {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|v| *v = 0);
            self.stamp = 1;
        }
        let cells: Vec<usize> = self.cells(s).collect();
        let mut out = Vec::new();
        for c in cells {
            for &id in &self.buckets[c] {
                if self.seen[id] != self.stamp {
                    self.seen[id] = self.stamp;
                    out.push(id);
                }
            }
        }
        out.sort_unstable();
        out
    }
}
