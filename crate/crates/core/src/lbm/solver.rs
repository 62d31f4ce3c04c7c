//! BGK collide-and-stream on the fluid cells of a mask.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::{equilibrium_unchecked, moments, E, OPP, Q};
use super::mask::Mask;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;
const PAR_MIN_CELLS: usize = 512;
/// Steps between convergence checks.
pub const CHECK_INTERVAL: u64 = 100;
/// Distributions below this (or NaN) abort the run.
pub const NEGATIVE_LIMIT: f64 = -1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    /// Fixed densities on the first and last column; solid beyond the top and
    /// bottom rows.
    Pressure { rho_in: f64, rho_out: f64 },
    /// Wraps in both directions.
    Periodic,
    /// Solid beyond every edge.
    Closed,
}

/// Distributions on the fluid cells of a mask plus the precomputed streaming
/// table.
#[derive(Debug, Clone)]
pub struct LatticeDomain {
    pub mask: Mask,
    pub boundary: Boundary,
    /// Grid index of each fluid cell.
    cells: Vec<u32>,
    /// Fluid cell index of each grid cell, `NONE` on solid.
    cell_of: Vec<u32>,
    /// `src[c * Q + i]` is where direction `i` of cell `c` pulls from.
    src: Vec<u32>,
    /// Boundary cells paired with their interior neighbour (or `NONE`).
    inlet: Vec<(u32, u32)>,
    outlet: Vec<(u32, u32)>,
    pub f: Vec<f64>,
    tmp: Vec<f64>,
    pub steps: u64,
}

impl LatticeDomain {
    /// Fluid at rest; under a pressure boundary the density falls linearly
    /// from inlet to outlet, otherwise it is 1.
    pub fn new(mask: Mask, boundary: Boundary) -> Result<Self> {
        let (w, h) = (mask.width, mask.height);
        if w == 0 || h == 0 {
            return Err(Error::invalid("mask", "empty lattice"));
        }
        if let Boundary::Pressure { rho_in, rho_out } = boundary {
            if !(rho_in > 0.0 && rho_out > 0.0 && rho_in > rho_out) {
                return Err(Error::invalid("rho_in", "need rho_in > rho_out > 0"));
            }
            if w < 3 {
                return Err(Error::invalid("mask", "pressure boundaries need width >= 3"));
            }
        }
        let mut cells = Vec::new();
        let mut cell_of = vec![NONE; w * h];
        for (g, &fl) in mask.fluid.iter().enumerate() {
            if fl {
                cell_of[g] = cells.len() as u32;
                cells.push(g as u32);
            }
        }
        let periodic = boundary == Boundary::Periodic;
        let mut src = vec![0u32; cells.len() * Q];
        for (c, &g) in cells.iter().enumerate() {
            let (x, y) = ((g as usize % w) as i64, (g as usize / w) as i64);
            for i in 0..Q {
                let (mut sx, mut sy) = (x - E[i].0 as i64, y - E[i].1 as i64);
                if periodic {
                    sx = sx.rem_euclid(w as i64);
                    sy = sy.rem_euclid(h as i64);
                }
                let inside = sx >= 0 && sy >= 0 && sx < w as i64 && sy < h as i64;
                let s = if inside {
                    cell_of[sy as usize * w + sx as usize]
                } else {
                    NONE
                };
                src[c * Q + i] = if s == NONE {
                    (c * Q + OPP[i]) as u32
                } else {
                    (s as usize * Q + i) as u32
                };
            }
        }
        let column = |x: usize, inward: usize| -> Vec<(u32, u32)> {
            (0..h)
                .filter(|&y| mask.is_fluid(x, y))
                .map(|y| (cell_of[y * w + x], cell_of[y * w + inward]))
                .collect()
        };
        let (inlet, outlet) = match boundary {
            Boundary::Pressure { .. } => (column(0, 1), column(w - 1, w - 2)),
            _ => (Vec::new(), Vec::new()),
        };
        let n = cells.len() * Q;
        let mut domain = Self {
            mask,
            boundary,
            cells,
            cell_of,
            src,
            inlet,
            outlet,
            f: vec![0.0; n],
            tmp: vec![0.0; n],
            steps: 0,
        };
        let ramp = match boundary {
            Boundary::Pressure { rho_in, rho_out } => Some((rho_in, rho_out)),
            _ => None,
        };
        domain.set_state(|x, _| match ramp {
            Some((a, b)) => (a + (b - a) * x as f64 / (w - 1) as f64, 0.0, 0.0),
            None => (1.0, 0.0, 0.0),
        });
        Ok(domain)
    }

    /// Reset every fluid cell to the equilibrium of `state(x, y) = (rho, vx, vy)`.
    pub fn set_state(&mut self, state: impl Fn(usize, usize) -> (f64, f64, f64)) {
        let w = self.mask.width;
        for (c, &g) in self.cells.iter().enumerate() {
            let (rho, vx, vy) = state(g as usize % w, g as usize / w);
            self.f[c * Q..(c + 1) * Q].copy_from_slice(&equilibrium_unchecked(rho, vx, vy));
        }
        self.steps = 0;
    }

    pub fn fluid_cells(&self) -> usize {
        self.cells.len()
    }

    /// Distributions of grid cell `(x, y)`, `None` on solid.
    pub fn cell(&self, x: usize, y: usize) -> Option<&[f64]> {
        let c = self.cell_of[self.mask.idx(x, y)];
        (c != NONE).then(|| &self.f[c as usize * Q..(c as usize + 1) * Q])
    }

    pub fn total_mass(&self) -> f64 {
        self.f.iter().sum()
    }

    /// One collide-then-stream update followed by the boundary columns.
    pub fn step(&mut self, tau: f64) -> Result<()> {
        if !(tau > 0.5) {
            return Err(Error::invalid("tau", "relaxation time must exceed 1/2"));
        }
        let omega = 1.0 / tau;
        self.f
            .par_chunks_mut(Q)
            .with_min_len(PAR_MIN_CELLS)
            .for_each(|fc| {
                let (rho, vx, vy) = moments(fc);
                let feq = equilibrium_unchecked(rho, vx, vy);
                for i in 0..Q {
                    fc[i] -= omega * (fc[i] - feq[i]);
                }
            });

        let (f, src) = (&self.f, &self.src);
        self.tmp
            .par_chunks_mut(Q)
            .with_min_len(PAR_MIN_CELLS)
            .enumerate()
            .for_each(|(c, out)| {
                for i in 0..Q {
                    out[i] = f[src[c * Q + i] as usize];
                }
            });
        std::mem::swap(&mut self.f, &mut self.tmp);

        if let Boundary::Pressure { rho_in, rho_out } = self.boundary {
            apply_pressure(&mut self.f, &self.inlet, rho_in);
            apply_pressure(&mut self.f, &self.outlet, rho_out);
        }
        self.steps += 1;

        if self.f.par_iter().any(|v| !(*v >= NEGATIVE_LIMIT)) {
            return Err(Error::Instability {
                step: self.steps,
                detail: "negative or non-finite distribution".into(),
            });
        }
        Ok(())
    }

    /// Mean speed over fluid cells.
    pub fn mean_speed(&self) -> f64 {
        if self.cells.is_empty() {
            return 0.0;
        }
        let sum: f64 = self
            .f
            .chunks(Q)
            .map(|fc| {
                let (_, vx, vy) = moments(fc);
                vx.hypot(vy)
            })
            .sum();
        sum / self.cells.len() as f64
    }

    pub fn flow_field(&self, converged: bool) -> FlowField {
        let n = self.mask.fluid.len();
        let mut field = FlowField {
            width: self.mask.width,
            height: self.mask.height,
            rho: vec![0.0; n],
            vx: vec![0.0; n],
            vy: vec![0.0; n],
            iterations: self.steps,
            converged,
            residual: f64::NAN,
        };
        for (c, &g) in self.cells.iter().enumerate() {
            let (rho, vx, vy) = moments(&self.f[c * Q..(c + 1) * Q]);
            field.rho[g as usize] = rho;
            field.vx[g as usize] = vx;
            field.vy[g as usize] = vy;
        }
        field
    }
}

fn apply_pressure(f: &mut [f64], cells: &[(u32, u32)], rho: f64) {
    for &(c, inner) in cells {
        let (vx, vy) = if inner == NONE {
            (0.0, 0.0)
        } else {
            let k = inner as usize * Q;
            let (_, vx, vy) = moments(&f[k..k + Q]);
            (vx, vy)
        };
        let k = c as usize * Q;
        f[k..k + Q].copy_from_slice(&equilibrium_unchecked(rho, vx, vy));
    }
}

/// Macroscopic fields on the full grid; solid cells hold zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowField {
    pub width: usize,
    pub height: usize,
    pub rho: Vec<f64>,
    pub vx: Vec<f64>,
    pub vy: Vec<f64>,
    pub iterations: u64,
    pub converged: bool,
    /// Relative change of the mean speed at the last check; NaN before any.
    pub residual: f64,
}

impl FlowField {
    pub fn pressure(&self) -> Vec<f64> {
        self.rho.iter().map(|r| super::lattice::CS2 * r).collect()
    }

    pub fn speed(&self) -> Vec<f64> {
        self.vx.iter().zip(&self.vy).map(|(x, y)| x.hypot(*y)).collect()
    }
}

/// Step until the relative change of the mean fluid speed over
/// [`CHECK_INTERVAL`] steps drops below `tol`, or `max_iters` steps ran.
///
/// Under a pressure boundary a mask without an inlet-outlet fluid path is
/// returned at rest, marked converged.
pub fn run_to_steady(
    domain: &mut LatticeDomain,
    tau: f64,
    tol: f64,
    max_iters: u64,
) -> Result<FlowField> {
    if matches!(domain.boundary, Boundary::Pressure { .. }) && !domain.mask.percolates_x() {
        let mut field = domain.flow_field(true);
        field.residual = 0.0;
        return Ok(field);
    }
    let mut prev: Option<f64> = None;
    let mut residual = f64::NAN;
    while domain.steps < max_iters {
        let chunk = CHECK_INTERVAL.min(max_iters - domain.steps);
        for _ in 0..chunk {
            domain.step(tau)?;
        }
        let m = domain.mean_speed();
        if let Some(p) = prev {
            let change = (m - p).abs();
            residual = if change == 0.0 { 0.0 } else { change / m };
            if change == 0.0 || change < tol * m {
                let mut field = domain.flow_field(true);
                field.residual = residual;
                return Ok(field);
            }
        }
        prev = Some(m);
    }
    let mut field = domain.flow_field(false);
    field.residual = residual;
    Ok(field)
}
