use serde::{Deserialize, Serialize};

use super::lattice::{viscosity, CS2};
use super::solver::{Boundary, FlowField, LatticeDomain};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PermeabilityResult {
    /// Lattice units squared.
    pub k: f64,
    /// Flow-axis velocity averaged over every cell, solid ones included.
    pub v_avg: f64,
    pub grad_p: f64,
    pub mu: f64,
    pub tau: f64,
    pub nu: f64,
    /// Mean density over fluid cells.
    pub rho_mean: f64,
    pub iterations: u64,
    pub converged: bool,
}

impl PermeabilityResult {
    pub const CSV_HEADER: &'static str =
        "K,v_avg,grad_p,mu,tau,nu,rho_mean,iterations,converged";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.k,
            self.v_avg,
            self.grad_p,
            self.mu,
            self.tau,
            self.nu,
            self.rho_mean,
            self.iterations,
            self.converged
        )
    }
}

/// `K = -<v> mu / grad_p`.
pub fn darcy_permeability(v_avg: f64, mu: f64, grad_p: f64) -> Result<f64> {
    if grad_p == 0.0 {
        return Err(Error::Domain("pressure gradient is zero".into()));
    }
    Ok(-v_avg * mu / grad_p)
}

/// Darcy permeability along x of a pressure-driven run. The gradient is taken
/// between the inlet and outlet column centres.
pub fn permeability(flow: &FlowField, domain: &LatticeDomain, tau: f64) -> Result<PermeabilityResult> {
    let Boundary::Pressure { rho_in, rho_out } = domain.boundary else {
        return Err(Error::Domain(
            "permeability needs a pressure-driven lattice".into(),
        ));
    };
    let cells = (flow.width * flow.height) as f64;
    let v_avg = flow.vx.iter().sum::<f64>() / cells;
    let grad_p = CS2 * (rho_out - rho_in) / (flow.width as f64 - 1.0);
    let fluid: Vec<f64> = flow
        .rho
        .iter()
        .zip(&domain.mask.fluid)
        .filter(|(_, &f)| f)
        .map(|(r, _)| *r)
        .collect();
    let rho_mean = if fluid.is_empty() {
        0.5 * (rho_in + rho_out)
    } else {
        fluid.iter().sum::<f64>() / fluid.len() as f64
    };
    let nu = viscosity(tau);
    let mu = rho_mean * nu;
    Ok(PermeabilityResult {
        k: darcy_permeability(v_avg, mu, grad_p)?,
        v_avg,
        grad_p,
        mu,
        tau,
        nu,
        rho_mean,
        iterations: flow.iterations,
        converged: flow.converged,
    })
}
