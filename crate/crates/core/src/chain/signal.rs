use alloc::vec::Vec;

use rand_distr::{Distribution, StandardNormal};

use crate::{math, rng, Error, Result};

/// Input `x = s + n` with i.i.d. zero-mean Gaussian signal and noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalModel {
    /// Signal-to-noise ratio of `x` in dB; `+inf` disables the noise.
    pub input_snr_db: f64,
    pub dim: usize,
    pub signal_sigma: f64,
}

impl SignalModel {
    pub fn new(input_snr_db: f64, dim: usize) -> Self {
        Self { input_snr_db, dim, signal_sigma: 1.0 }
    }

    pub fn noise_sigma(&self) -> f64 {
        noise_sigma(self.signal_sigma, self.input_snr_db)
    }

    /// Standard deviation of each element of `x`.
    pub fn input_sigma(&self) -> f64 {
        let n = self.noise_sigma();
        math::sqrt(self.signal_sigma * self.signal_sigma + n * n)
    }
}

pub(crate) fn noise_sigma(signal_sigma: f64, input_snr_db: f64) -> f64 {
    if input_snr_db == f64::INFINITY {
        0.0
    } else {
        signal_sigma * math::sqrt(math::from_db10(-input_snr_db))
    }
}

/// Signal and unit-variance noise drawn from one seed.
///
/// Sweeps reuse one draw across all input-SNR points by rescaling the noise.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDraw {
    pub signal: Vec<f64>,
    pub unit_noise: Vec<f64>,
}

impl InputDraw {
    /// `s + noise_sigma * u`.
    pub fn mix(&self, noise_sigma: f64) -> Vec<f64> {
        self.signal.iter().zip(&self.unit_noise).map(|(s, u)| s + noise_sigma * u).collect()
    }
}

/// Draws `dim` signal samples (scaled by `signal_sigma`) followed by `dim`
/// unit noise samples.
pub fn draw_input(dim: usize, signal_sigma: f64, seed: u64) -> InputDraw {
    let mut r = rng::rng_from_seed(seed);
    let mut normal = || -> f64 { StandardNormal.sample(&mut r) };
    let signal = (0..dim).map(|_| signal_sigma * normal()).collect();
    let unit_noise = (0..dim).map(|_| normal()).collect();
    InputDraw { signal, unit_noise }
}

/// Returns `(s, x)` for one trial.
pub fn generate_input(model: &SignalModel, rng_seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    if model.dim == 0 {
        return Err(Error::invalid("signal dimension must be at least 1"));
    }
    if model.input_snr_db.is_nan() || model.input_snr_db == f64::NEG_INFINITY {
        return Err(Error::invalid("input SNR must be a number or +inf"));
    }
    if !(model.signal_sigma > 0.0 && model.signal_sigma.is_finite()) {
        return Err(Error::invalid("signal sigma must be positive"));
    }
    let draw = draw_input(model.dim, model.signal_sigma, rng_seed);
    let x = draw.mix(model.noise_sigma());
    Ok((draw.signal, x))
}
