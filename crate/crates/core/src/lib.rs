//! Properly colored Hamilton (k,l)-cycles in edge-colored k-uniform hypergraphs.
//!
//! The crate implements the absorbing method at desk scale: absorbers and
//! absorbing paths, reservoirs, path covers, connecting paths, and an
//! end-to-end solver, next to an exhaustive backtracking oracle.

pub mod absorbers;
pub mod connecting;
pub mod covering;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod hypergraph;
pub mod paths;
pub mod pipeline;
pub mod reservoir;
pub mod rng;

pub use error::{Error, Result};
pub use hypergraph::{ColorId, ColoredKGraph};
pub use paths::{Certificate, KLCycle, KLPath};
