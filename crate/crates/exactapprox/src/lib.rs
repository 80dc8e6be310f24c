//! Exact-arithmetic machinery for approximation systems on `[0,1]^d`:
//! continued-fraction classification, layer enumeration with separation
//! certificates, local ubiquity measurement, a leveled Cantor-set builder
//! whose every counting and separation bound is checked as it is built,
//! and mass-distribution certificates over the resulting trees.
//!
//! See the `examples/` directory for one runnable entry point per major
//! capability, and the `exactapprox` binary for the batch experiment
//! runner.

pub mod cantor;
pub mod config;
pub mod contfrac;
pub mod enclosure;
pub mod error;
pub mod funcs;
pub mod geometry;
pub mod massdist;
pub mod rat;
pub mod report;
pub mod runner;
pub mod scale;
pub mod surd;
pub mod systems;
pub mod ubiquity;

pub use error::{Error, Result};
pub use rat::Rat;
