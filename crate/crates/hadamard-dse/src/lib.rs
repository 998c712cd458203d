//! File formats, parallel Monte Carlo and the command line for the
//! [`hadamard_core`] models.
//!
//! - [`survey`]: ADC survey CSV loading and writing.
//! - [`report`]: CSV writers for sweep curves and design points.
//! - [`config`]: the JSON run configuration.
//! - [`parallel`]: a rayon-backed [`hadamard_core::chain::Executor`].
//! - [`commands`]: `sweep-snr`, `dse` and `validate-tables`.

pub mod commands;
pub mod config;
pub mod parallel;
pub mod report;
pub mod survey;

pub use commands::{CliError, Manifest};
pub use config::RunConfig;
pub use parallel::Parallel;
