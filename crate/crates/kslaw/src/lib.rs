//! Exact and simulated limit laws for preferential-attachment degrees.
//!
//! (Crate-level docs are finalized together with the examples; see README.)

pub mod cli;
pub mod error;
pub mod graph;
pub mod ks;
pub mod metric;
pub mod pmf;
pub mod quad;
pub mod rng;
pub mod special;
pub mod stein;
pub mod transform;
pub mod urn;

pub use error::{Error, Result};
pub use ks::KsDist;
pub use pmf::Pmf;
pub use quad::QuadratureConfig;
pub use urn::UrnSpec;
