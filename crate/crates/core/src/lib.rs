//! Anticonformity opinion dynamics: finite-population simulation, the
//! mean-field kinetic equation, and the fractal stationary law.

pub mod abm;
pub mod dist;
pub mod equilibrium;
pub mod error;
pub mod experiments;
pub mod io;
pub mod meanfield;
pub mod metrics;
pub mod par;
pub mod params;
pub mod plot;
pub mod rng;
pub mod stats;

pub use dist::{AtomicDistribution, EmpiricalDistribution, GridDistribution, InitialLaw, Law};
pub use error::{Error, Result};
pub use params::{MeanCurve, ModelParams};
pub use rng::{RngSpec, SimRng};
