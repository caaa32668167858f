//! Simulation of electromagnetically induced transparency with two
//! van der Waals coupled Rydberg atoms.
//!
//! Frequencies are cyclic MHz and times µs throughout the public API.

pub mod dynamics;
pub mod error;
pub mod model;
pub mod numerics;
pub mod spectra;
pub mod validator;

pub use error::{Error, Result};
