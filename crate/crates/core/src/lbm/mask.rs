//! Binary fluid/solid masks: rasterization, connectivity and PGM files.

use std::collections::VecDeque;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::dfn::FractureNetwork;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// Row-major mask, `fluid[y * width + x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    pub width: usize,
    pub height: usize,
    pub fluid: Vec<bool>,
}

impl Mask {
    pub fn solid(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            fluid: vec![false; width * height],
        }
    }

    pub fn all_fluid(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            fluid: vec![true; width * height],
        }
    }

    /// Horizontal channel spanning the width, rows `y0..y0 + h` fluid.
    pub fn channel(width: usize, height: usize, y0: usize, h: usize) -> Self {
        let mut m = Self::solid(width, height);
        for y in y0..(y0 + h).min(height) {
            for x in 0..width {
                m.set(x, y, true);
            }
        }
        m
    }

    #[inline]
    pub fn idx(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    #[inline]
    pub fn is_fluid(&self, x: usize, y: usize) -> bool {
        self.fluid[self.idx(x, y)]
    }

    pub fn set(&mut self, x: usize, y: usize, fluid: bool) {
        let i = self.idx(x, y);
        self.fluid[i] = fluid;
    }

    pub fn fluid_count(&self) -> usize {
        self.fluid.iter().filter(|&&f| f).count()
    }

    pub fn porosity(&self) -> f64 {
        if self.fluid.is_empty() {
            0.0
        } else {
            self.fluid_count() as f64 / self.fluid.len() as f64
        }
    }

    /// Whether fluid connects column 0 to the last column. Diagonal contacts
    /// count, since D2Q9 streams along diagonals.
    pub fn percolates_x(&self) -> bool {
        if self.width == 0 || self.height == 0 {
            return false;
        }
        let mut seen = vec![false; self.fluid.len()];
        let mut queue = VecDeque::new();
        for y in 0..self.height {
            if self.is_fluid(0, y) {
                seen[self.idx(0, y)] = true;
                queue.push_back((0usize, y));
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            if x + 1 == self.width {
                return true;
            }
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    if nx < 0 || ny < 0 || nx >= self.width as i64 || ny >= self.height as i64 {
                        continue;
                    }
                    let k = self.idx(nx as usize, ny as usize);
                    if self.fluid[k] && !seen[k] {
                        seen[k] = true;
                        queue.push_back((nx as usize, ny as usize));
                    }
                }
            }
        }
        false
    }

    /// Plain (`P2`) or binary (`P5`) PGM; 0 is solid and 255 fluid. Row `y = 0`
    /// is written first.
    pub fn write_pgm<W: Write>(&self, mut out: W, binary: bool) -> Result<()> {
        let px = |f: bool| if f { 255u8 } else { 0 };
        if binary {
            write!(out, "P5\n{} {}\n255\n", self.width, self.height)?;
            let bytes: Vec<u8> = self.fluid.iter().map(|&f| px(f)).collect();
            out.write_all(&bytes)?;
        } else {
            writeln!(out, "P2\n{} {}\n255", self.width, self.height)?;
            for row in self.fluid.chunks(self.width.max(1)) {
                let line: Vec<String> = row.iter().map(|&f| px(f).to_string()).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn save_pgm(&self, path: &Path, binary: bool) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| Error::file(path, e))?;
        self.write_pgm(std::io::BufWriter::new(f), binary)
    }

    /// Reads P2 or P5; pixels above half the maximum value are fluid.
    pub fn read_pgm<R: BufRead>(mut input: R) -> Result<Self> {
        let mut data = Vec::new();
        input.read_to_end(&mut data)?;
        let bad = |m: &str| Error::Parse {
            line: 0,
            message: format!("pgm: {m}"),
        };
        let mut pos = 0;
        let mut header = Vec::new();
        while header.len() < 4 {
            // skip whitespace and comments
            while pos < data.len() && (data[pos].is_ascii_whitespace() || data[pos] == b'#') {
                if data[pos] == b'#' {
                    while pos < data.len() && data[pos] != b'\n' {
                        pos += 1;
                    }
                } else {
                    pos += 1;
                }
            }
            let start = pos;
            while pos < data.len() && !data[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err(bad("truncated header"));
            }
            header.push(String::from_utf8_lossy(&data[start..pos]).into_owned());
        }
        let binary = match header[0].as_str() {
            "P5" => true,
            "P2" => false,
            other => return Err(bad(&format!("unsupported magic {other}"))),
        };
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad(&format!("bad number {s}")));
        let (width, height, maxval) = (num(&header[1])?, num(&header[2])?, num(&header[3])?);
        if maxval == 0 || maxval > 255 {
            return Err(bad("maxval must be in 1..=255"));
        }
        let n = width * height;
        let values: Vec<usize> = if binary {
            // exactly one whitespace byte separates header and raster
            let body = data.get(pos + 1..).unwrap_or(&[]);
            if body.len() < n {
                return Err(bad("truncated raster"));
            }
            body[..n].iter().map(|&b| b as usize).collect()
        } else {
            let text = String::from_utf8_lossy(&data[pos..]);
            let v: Vec<usize> = text
                .split_ascii_whitespace()
                .map(num)
                .collect::<Result<_>>()?;
            if v.len() < n {
                return Err(bad("truncated raster"));
            }
            v[..n].to_vec()
        };
        Ok(Self {
            width,
            height,
            fluid: values.into_iter().map(|v| 2 * v > maxval).collect(),
        })
    }

    pub fn load_pgm(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| Error::file(path, e))?;
        Self::read_pgm(std::io::BufReader::new(f))
    }
}

/// Thickness in cells of a fracture with `aperture` on a grid with `scale`
/// cells per domain unit.
pub fn cell_thickness(aperture: f64, scale: f64) -> f64 {
    (aperture * scale).round().max(1.0)
}

/// Paint every fracture as a capsule of its (rounded) aperture onto a solid
/// `grid_n` x `grid_n` lattice covering the domain.
pub fn rasterize(network: &FractureNetwork, grid_n: usize) -> Result<Mask> {
    if grid_n < 16 {
        return Err(Error::invalid("grid_n", "must be at least 16"));
    }
    let mut mask = Mask::solid(grid_n, grid_n);
    let scale = grid_n as f64 / network.domain;
    for f in &network.fractures {
        let half = 0.5 * cell_thickness(f.aperture, scale) / scale;
        let s = &f.segment;
        let cell_range = |lo: f64, hi: f64| {
            let a = ((lo - half) * scale - 0.5).floor().max(0.0) as usize;
            let b = (((hi + half) * scale - 0.5).ceil().max(0.0) as usize).min(grid_n - 1);
            a..=b
        };
        for y in cell_range(s.min_y(), s.max_y()) {
            for x in cell_range(s.min_x(), s.max_x()) {
                let c = Point::new((x as f64 + 0.5) / scale, (y as f64 + 0.5) / scale);
                if s.distance_to(c) <= half + 1e-9 {
                    mask.set(x, y, true);
                }
            }
        }
    }
    Ok(mask)
}
