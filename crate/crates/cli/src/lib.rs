//! IO formats and experiment scenarios on top of `ssa-roots-core`.

pub mod formats;
pub mod scenario;

pub use ssa_roots_core as core;
