//! End-to-end chain simulation.
//!
//! Two topologies are modeled:
//!
//! - **analog**: capacitor-array transform, then one ADC per output;
//! - **digital**: one ADC per input, then the bit-true fixed-point FHT.
//!
//! Output SNR is the ratio of ideal output energy to error energy, with the
//! ideal output being the noise-free transform of the signal component.

mod adc;
mod signal;
mod snr;
mod sweep;

pub use adc::{quantize, quantize_codes, quantize_into, AdcModel};
pub use signal::{draw_input, generate_input, InputDraw, SignalModel};
pub use snr::{output_snr, quantile, snr_from_energies, yield_snr, DEFAULT_SNR_CEILING_DB};
pub use sweep::{
    analog_capability, digital_capability, run_analog_chain, run_digital_chain, SnrCurve, SnrPoint, SweepConfig,
    DEFAULT_ADC_LOADING, DEFAULT_TRIALS,
};

use alloc::vec::Vec;

/// Which side of the transform the ADCs sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainKind {
    Analog,
    Digital,
}

impl ChainKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChainKind::Analog => "analog",
            ChainKind::Digital => "digital",
        }
    }
}

impl core::fmt::Display for ChainKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evaluates independent Monte Carlo tasks.
///
/// Implementations must return results in index order so sweeps are
/// identical for any degree of parallelism.
pub trait Executor: Sync {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every task on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}
