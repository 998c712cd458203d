//! Behavioral models for comparing analog and digital spatial Hadamard
//! transforms.
//!
//! The crate is `no_std` (it needs `alloc`) and is organized bottom-up:
//!
//! - [`transform`]: the orthonormal Hadamard matrix, the floating-point fast
//!   Hadamard transform and its bit-true fixed-point counterpart.
//! - [`analog`]: the passive capacitor-array transform with per-element
//!   mismatch and insertion loss.
//! - [`chain`]: signal generation, ADC quantization, output-SNR measurement
//!   and the Monte Carlo sweeps over both chain topologies.
//! - [`dse`]: ADC selection and area/energy efficiency analysis with Pareto
//!   extraction.
//!
//! File formats, the ADC survey loader, parallel execution and the command
//! line live in the `hadamard-dse` companion crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analog;
pub mod chain;
pub mod dse;
mod error;
pub mod math;
pub mod rng;
pub mod transform;

pub use error::{Error, Result};
