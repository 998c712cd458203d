//! Monte Carlo input-SNR sweeps over both chain topologies.
//!
//! Every noise trial `t` draws its signal and unit noise from
//! `derive_seed(master, Input, t)`; every mismatch realization `r` from
//! `derive_seed(master, Mismatch, r)`. The same input draws are reused at
//! each sweep point (only the noise scale changes) and for each mismatch
//! realization, so differences between points and realizations come from the
//! swept parameter alone.
//!
//! Before computing the output SNR, the estimate can be divided by the
//! least-squares gain of the chain, estimated by regressing the estimate
//! onto the ideal transform of the actual (noisy) input. This removes the
//! deterministic insertion loss without rewarding noise suppression.

use alloc::vec;
use alloc::vec::Vec;

use super::adc::{quantize_codes, quantize_into, AdcModel};
use super::signal::{draw_input, noise_sigma, InputDraw};
use super::snr::{output_snr, yield_snr, DEFAULT_SNR_CEILING_DB};
use super::{ChainKind, Executor};
use crate::analog::{mismatch_sample, AnalogArray, CapacitorArraySpec};
use crate::rng::{derive_seed, Stream};
use crate::transform::{
    dequantize_fht_output, fht_fixed, fht_real, fht_real_in_place, CodeVector, FixedPointFormat, TransformSpec,
};
use crate::{math, Error, Result};

pub const DEFAULT_TRIALS: usize = 400;

/// ADC full scale as a multiple of the ideal quantizer-input std.
pub const DEFAULT_ADC_LOADING: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub input_snrs_db: Vec<f64>,
    pub n_mismatch_trials: usize,
    pub n_noise_trials: usize,
    pub master_seed: u64,
    pub chain_kind: ChainKind,
    pub signal_sigma: f64,
    /// `Some(k)`: full scale is `k` times the std of the unattenuated
    /// quantizer input at each sweep point. `None`: use the ADC's own value.
    pub adc_loading: Option<f64>,
    pub gain_compensation: bool,
    pub snr_ceiling_db: f64,
    /// Fraction of realizations that must meet the reported yield SNR.
    pub yield_fraction: f64,
}

impl SweepConfig {
    pub fn new(chain_kind: ChainKind, input_snrs_db: Vec<f64>) -> Self {
        Self {
            input_snrs_db,
            n_mismatch_trials: DEFAULT_TRIALS,
            n_noise_trials: DEFAULT_TRIALS,
            master_seed: 0,
            chain_kind,
            signal_sigma: 1.0,
            adc_loading: Some(DEFAULT_ADC_LOADING),
            gain_compensation: true,
            snr_ceiling_db: DEFAULT_SNR_CEILING_DB,
            yield_fraction: 0.9,
        }
    }

    pub fn with_trials(mut self, mismatch: usize, noise: usize) -> Self {
        self.n_mismatch_trials = mismatch;
        self.n_noise_trials = noise;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.input_snrs_db.is_empty() {
            return Err(Error::config("sweep needs at least one input SNR point"));
        }
        if self.input_snrs_db.iter().any(|s| s.is_nan() || *s == f64::NEG_INFINITY) {
            return Err(Error::config("input SNR points must be numbers or +inf"));
        }
        if self.n_mismatch_trials == 0 || self.n_noise_trials == 0 {
            return Err(Error::config("trial counts must be at least 1"));
        }
        if !(self.signal_sigma > 0.0 && self.signal_sigma.is_finite()) {
            return Err(Error::config("signal sigma must be positive"));
        }
        if let Some(k) = self.adc_loading {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::config("ADC loading factor must be positive"));
            }
        }
        if !(self.yield_fraction > 0.0 && self.yield_fraction < 1.0) {
            return Err(Error::config("yield fraction must lie strictly between 0 and 1"));
        }
        Ok(())
    }

    fn adc_at(&self, adc: &AdcModel, input_snr_db: f64) -> Result<AdcModel> {
        let adc = match self.adc_loading {
            Some(k) => {
                let n = noise_sigma(self.signal_sigma, input_snr_db);
                let input_sigma = math::sqrt(self.signal_sigma * self.signal_sigma + n * n);
                adc.with_full_scale(k * input_sigma)
            }
            None => *adc,
        };
        adc.validate()?;
        Ok(adc)
    }

    fn expect_kind(&self, kind: ChainKind) -> Result<()> {
        if self.chain_kind != kind {
            return Err(Error::config(alloc::format!(
                "sweep configured for the {} chain, not {kind}",
                self.chain_kind
            )));
        }
        Ok(())
    }
}

/// Output-SNR statistics at one input SNR, over mismatch realizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPoint {
    pub input_snr_db: f64,
    pub mean_db: f64,
    pub min_db: f64,
    pub max_db: f64,
    /// Yield line: the output SNR met by `yield_fraction` of realizations.
    pub p10_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnrCurve {
    pub points: Vec<SnrPoint>,
    /// Per-point output SNR of every realization, in realization order.
    pub samples: Vec<Vec<f64>>,
}

impl SnrCurve {
    fn from_samples(cfg: &SweepConfig, samples: Vec<Vec<f64>>) -> Result<Self> {
        let points = cfg
            .input_snrs_db
            .iter()
            .zip(&samples)
            .map(|(&input_snr_db, s)| {
                let mean_db = s.iter().sum::<f64>() / s.len() as f64;
                let min_db = s.iter().copied().fold(f64::INFINITY, f64::min);
                let max_db = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                Ok(SnrPoint { input_snr_db, mean_db, min_db, max_db, p10_db: yield_snr(s, cfg.yield_fraction)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { points, samples })
    }
}

/// Input draws shared by every sweep point and realization, with their
/// ideal transforms `H s` and `H u`.
struct TrialSet {
    dim: usize,
    draws: Vec<InputDraw>,
    ideal_signal: Vec<f64>,
    ideal_noise: Vec<f64>,
}

impl TrialSet {
    fn new<E: Executor>(cfg: &SweepConfig, spec: TransformSpec, exec: &E) -> Result<Self> {
        let dim = spec.dim();
        let prepared = exec.map(cfg.n_noise_trials, |t| -> Result<_> {
            let draw = draw_input(dim, cfg.signal_sigma, derive_seed(cfg.master_seed, Stream::Input, t as u64));
            let hs = fht_real(&draw.signal, spec)?;
            let hu = fht_real(&draw.unit_noise, spec)?;
            Ok((draw, hs, hu))
        });
        let mut set = Self {
            dim,
            draws: Vec::with_capacity(cfg.n_noise_trials),
            ideal_signal: Vec::with_capacity(cfg.n_noise_trials * dim),
            ideal_noise: Vec::with_capacity(cfg.n_noise_trials * dim),
        };
        for p in prepared {
            let (draw, hs, hu) = p?;
            set.draws.push(draw);
            set.ideal_signal.extend_from_slice(&hs);
            set.ideal_noise.extend_from_slice(&hu);
        }
        Ok(set)
    }

    /// `H x = H s + noise * H u` for every trial, flattened.
    fn ideal_input_transform(&self, noise: f64) -> Vec<f64> {
        combine(&self.ideal_signal, &self.ideal_noise, noise)
    }
}

fn combine(a: &[f64], b: &[f64], scale: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + scale * y).collect()
}

/// Ensemble output SNR, optionally after removing the least-squares gain.
fn ensemble_snr(cfg: &SweepConfig, ideal: &[f64], reference: &[f64], estimate: &mut [f64]) -> Result<f64> {
    if cfg.gain_compensation {
        let re = math::energy(reference);
        let gain = math::dot(reference, estimate) / re;
        if re > 0.0 && gain.is_finite() && gain > 0.0 {
            estimate.iter_mut().for_each(|e| *e /= gain);
        }
    }
    output_snr(ideal, estimate, cfg.snr_ceiling_db)
}

/// ADCs on each input followed by the bit-true FHT.
///
/// With `adc = None` the quantizer is bypassed and the floating-point FHT is
/// used. `fmt`, when given, must have the ADC's width; its LSB weight is
/// replaced by the ADC step at each sweep point. Mid-rise reconstruction
/// values are `(k + 1/2) * step`, so the datapath transforms the integer
/// codes `k` and the constant half-step offset is restored on the DC output.
pub fn run_digital_chain<E: Executor>(
    cfg: &SweepConfig,
    adc: Option<&AdcModel>,
    spec: TransformSpec,
    fmt: Option<FixedPointFormat>,
    exec: &E,
) -> Result<SnrCurve> {
    cfg.validate()?;
    cfg.expect_kind(ChainKind::Digital)?;
    if let Some(adc) = adc {
        let bits = adc.bits();
        if bits < 2 {
            return Err(Error::config("digital chain needs an ADC of at least 2 bits"));
        }
        if let Some(f) = fmt {
            if f.total_bits() != bits {
                return Err(Error::config(alloc::format!(
                    "ADC resolution of {bits} bits does not match the {}-bit FHT input format",
                    f.total_bits()
                )));
            }
        }
    }

    let trials = TrialSet::new(cfg, spec, exec)?;
    let dim = trials.dim;
    let dc_gain = math::sqrt(dim as f64);

    let per_point = exec.map(cfg.input_snrs_db.len(), |p| -> Result<f64> {
        let snr_db = cfg.input_snrs_db[p];
        let noise = noise_sigma(cfg.signal_sigma, snr_db);
        let mut estimate = Vec::with_capacity(cfg.n_noise_trials * dim);
        match adc {
            Some(adc) => {
                let adc = cfg.adc_at(adc, snr_db)?;
                let fmt = FixedPointFormat::new(adc.bits(), adc.step())?;
                for draw in &trials.draws {
                    let (codes, _) = quantize_codes(&draw.mix(noise), &adc)?;
                    let y = fht_fixed(&CodeVector::new(codes, fmt)?, spec)?;
                    let mut y = dequantize_fht_output(&y, spec)?;
                    y[0] += 0.5 * adc.step() * dc_gain;
                    estimate.extend_from_slice(&y);
                }
            }
            None => {
                for draw in &trials.draws {
                    let mut y = draw.mix(noise);
                    fht_real_in_place(&mut y)?;
                    estimate.extend_from_slice(&y);
                }
            }
        }
        let reference = trials.ideal_input_transform(noise);
        ensemble_snr(cfg, &trials.ideal_signal, &reference, &mut estimate)
    });

    let samples = per_point.into_iter().map(|r| r.map(|v| vec![v])).collect::<Result<Vec<_>>>()?;
    SnrCurve::from_samples(cfg, samples)
}

/// Capacitor-array transform followed by an ADC on each output.
///
/// The ADC full scale follows the unattenuated output, so insertion loss
/// costs effective resolution. `adc = None` bypasses quantization.
pub fn run_analog_chain<E: Executor>(
    cfg: &SweepConfig,
    adc: Option<&AdcModel>,
    array: &CapacitorArraySpec,
    spec: TransformSpec,
    exec: &E,
) -> Result<SnrCurve> {
    cfg.validate()?;
    cfg.expect_kind(ChainKind::Analog)?;
    array.validate()?;
    let adcs = match adc {
        Some(adc) => Some(cfg.input_snrs_db.iter().map(|&s| cfg.adc_at(adc, s)).collect::<Result<Vec<_>>>()?),
        None => None,
    };

    let trials = TrialSet::new(cfg, spec, exec)?;
    let dim = trials.dim;
    let n = cfg.n_noise_trials;
    let references: Vec<Vec<f64>> =
        cfg.input_snrs_db.iter().map(|&s| trials.ideal_input_transform(noise_sigma(cfg.signal_sigma, s))).collect();

    let per_realization = exec.map(cfg.n_mismatch_trials, |r| -> Result<Vec<f64>> {
        let seed = derive_seed(cfg.master_seed, Stream::Mismatch, r as u64);
        let realization = mismatch_sample(array, dim, seed)?;
        let array = AnalogArray::new(array, &realization)?;

        // the array is linear: W x = W s + noise * W u
        let mut ws = vec![0.0; n * dim];
        let mut wu = vec![0.0; n * dim];
        for (t, draw) in trials.draws.iter().enumerate() {
            array.apply_into(&draw.signal, &mut ws[t * dim..(t + 1) * dim])?;
            array.apply_into(&draw.unit_noise, &mut wu[t * dim..(t + 1) * dim])?;
        }

        let mut out = Vec::with_capacity(cfg.input_snrs_db.len());
        let mut estimate = vec![0.0; n * dim];
        for (p, &snr_db) in cfg.input_snrs_db.iter().enumerate() {
            let noise = noise_sigma(cfg.signal_sigma, snr_db);
            let analog = combine(&ws, &wu, noise);
            match &adcs {
                Some(adcs) => {
                    quantize_into(&analog, &adcs[p], &mut estimate)?;
                }
                None => estimate.copy_from_slice(&analog),
            }
            out.push(ensemble_snr(cfg, &trials.ideal_signal, &references[p], &mut estimate)?);
        }
        Ok(out)
    });

    let per_realization = per_realization.into_iter().collect::<Result<Vec<_>>>()?;
    let samples = (0..cfg.input_snrs_db.len()).map(|p| per_realization.iter().map(|r| r[p]).collect()).collect();
    SnrCurve::from_samples(cfg, samples)
}

/// Quantization-limited output SNR of the digital chain with `input_bits`
/// ADCs and a noise-free input.
pub fn digital_capability<E: Executor>(
    input_bits: u32,
    spec: TransformSpec,
    noise_trials: usize,
    seed: u64,
    exec: &E,
) -> Result<f64> {
    let cfg = SweepConfig::new(ChainKind::Digital, vec![f64::INFINITY]).with_trials(1, noise_trials).with_seed(seed);
    let adc = AdcModel::ideal(input_bits, 1.0);
    let curve = run_digital_chain(&cfg, Some(&adc), spec, None, exec)?;
    Ok(curve.points[0].mean_db)
}

/// Mismatch-limited yield SNR of an analog array with ideal ADCs and a
/// noise-free input.
pub fn analog_capability<E: Executor>(
    array: &CapacitorArraySpec,
    spec: TransformSpec,
    mismatch_trials: usize,
    noise_trials: usize,
    seed: u64,
    exec: &E,
) -> Result<f64> {
    let cfg = SweepConfig::new(ChainKind::Analog, vec![f64::INFINITY])
        .with_trials(mismatch_trials, noise_trials)
        .with_seed(seed);
    let curve = run_analog_chain(&cfg, None, array, spec, exec)?;
    Ok(curve.points[0].p10_db)
}
