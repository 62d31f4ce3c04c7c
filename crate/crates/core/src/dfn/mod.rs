//! Stochastic 2D fracture networks with power-law lengths, joint sets and
//! Gaussian-placed fracture zones.

mod config;
mod generate;
mod network;
mod sample;

pub use config::{
    default_alpha, format_joint_sets, parse_joint_sets, ApertureMode, GenerationMode,
    GeneratorConfig, JointSet, DEFAULT_SPREAD, MAX_HUBS,
};
pub use generate::generate_network;
pub use network::{Fracture, FractureKind, FractureNetwork};
pub use sample::{
    place_hubs, sample_azimuth, sample_fracture_length, AzimuthLaw, HubSpec, LengthLaw,
    MAX_PLACEMENT_RETRIES,
};
