//! Analysis of time series governed by linear recursions: signal models as
//! sums of polynomially modulated exponentials, Hankel trajectory structure,
//! exact weak separability from signal roots, and the forecasting (Min-Norm)
//! recursion with the full theory of its extraneous roots.
//!
//! The crate is `no_std` (with `alloc`); all numerics are self-contained.
//! File formats, the CLI and experiment scenarios live in the companion
//! `ssa-roots` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod error;
mod linalg;
pub mod minnorm;
pub mod poly;
pub mod rng;
pub mod separability;
pub mod series;
pub mod trajectory;

pub use error::{Error, Result};
pub use num_complex::Complex64;
