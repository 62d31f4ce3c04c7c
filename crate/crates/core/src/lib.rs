//! Fluid-flow complexity in 2D fracture networks.
//!
//! The pipeline runs from stochastic network generation ([`dfn`]) through the
//! fracture graph ([`graph`]) and its statistics ([`metrics`]), Laplacian
//! advection on that graph ([`advection`]), and D2Q9 lattice-Boltzmann flow
//! on the rasterized network ([`lbm`]). [`harness`] runs Monte Carlo sweeps
//! over generator parameters.

pub mod advection;
pub mod config;
pub mod dfn;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod lbm;
pub mod metrics;
pub mod stats;

pub use error::{Error, Result};
