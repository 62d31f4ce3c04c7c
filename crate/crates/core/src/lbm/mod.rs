//! Rasterized fracture networks and D2Q9 lattice-Boltzmann flow with
//! Darcy permeability.

mod io;
pub mod lattice;
mod mask;
mod permeability;
mod solver;

use serde::{Deserialize, Serialize};

pub use io::{append_permeability_row, write_raster_csv};
pub use lattice::{equilibrium, moments, viscosity, CS2, E, OPP, Q, W};
pub use mask::{cell_thickness, rasterize, Mask};
pub use permeability::{darcy_permeability, permeability, PermeabilityResult};
pub use solver::{run_to_steady, Boundary, FlowField, LatticeDomain, CHECK_INTERVAL, NEGATIVE_LIMIT};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LbmParams {
    pub tau: f64,
    pub rho_in: f64,
    pub rho_out: f64,
    pub tol: f64,
    pub max_iters: u64,
}

impl Default for LbmParams {
    fn default() -> Self {
        Self {
            tau: 1.0,
            rho_in: 1.001,
            rho_out: 0.999,
            tol: 1e-9,
            max_iters: 1_000_000,
        }
    }
}

impl LbmParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.5) {
            return Err(Error::invalid("tau", "must exceed 1/2"));
        }
        if !(self.rho_in > self.rho_out && self.rho_out > 0.0) {
            return Err(Error::invalid("rho_in", "need rho_in > rho_out > 0"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tol", "must be positive"));
        }
        Ok(())
    }

    pub fn to_kv(&self) -> Vec<(String, String)> {
        vec![
            ("tau".into(), self.tau.to_string()),
            ("rho_in".into(), self.rho_in.to_string()),
            ("rho_out".into(), self.rho_out.to_string()),
            ("tol".into(), self.tol.to_string()),
            ("max_iters".into(), self.max_iters.to_string()),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct LbmRun {
    pub flow: FlowField,
    pub result: PermeabilityResult,
}

/// Pressure-driven flow along x through `mask` and its permeability.
pub fn simulate(mask: Mask, params: &LbmParams) -> Result<LbmRun> {
    params.validate()?;
    let boundary = Boundary::Pressure {
        rho_in: params.rho_in,
        rho_out: params.rho_out,
    };
    let mut domain = LatticeDomain::new(mask, boundary)?;
    let flow = run_to_steady(&mut domain, params.tau, params.tol, params.max_iters)?;
    let result = permeability(&flow, &domain, params.tau)?;
    Ok(LbmRun { flow, result })
}
