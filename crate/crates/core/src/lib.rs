pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod oracle;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
