//! JSON run configuration.
//!
//! Every field has a default, so `{}` is a valid configuration. Unknown keys
//! are rejected at every level. A run manifest written by the CLI can be
//! passed back as a configuration: its `config` member is used.

use std::path::{Path, PathBuf};

use hadamard_core::analog::{CapacitorArraySpec, ARRAY_PRESETS, DEFAULT_INSERTION_LOSS_DB};
use hadamard_core::chain::{ChainKind, SweepConfig, DEFAULT_ADC_LOADING, DEFAULT_SNR_CEILING_DB, DEFAULT_TRIALS};
use hadamard_core::dse::DigitalFhtRow;
use hadamard_core::transform::{TransformSpec, MAX_ORDER};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid config JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Transform order `m`; the transform has `2^m` points.
    pub order: u32,
    pub master_seed: u64,
    /// Output directory; `--out` overrides it. Defaults to `out`.
    pub out_dir: Option<PathBuf>,
    pub sweep: SweepParams,
    pub chains: Vec<ChainConfig>,
    pub dse: DseParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        let mut chains: Vec<ChainConfig> =
            (5..=10).map(|b| ChainConfig::Digital { input_bits: Some(b), name: None }).collect();
        chains.extend((7..=12).map(|b| ChainConfig::Analog {
            array: ArraySource::Preset(String::from("0.68fF")),
            adc_bits: Some(b),
            name: None,
        }));
        Self {
            order: 7,
            master_seed: 1,
            out_dir: None,
            sweep: SweepParams::default(),
            chains,
            dse: DseParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepParams {
    pub input_snrs_db: Vec<f64>,
    pub n_mismatch_trials: usize,
    pub n_noise_trials: usize,
    /// ADC full scale in multiples of the unattenuated input std.
    pub adc_loading: f64,
    pub gain_compensation: bool,
    pub yield_fraction: f64,
    pub snr_ceiling_db: f64,
    pub signal_sigma: f64,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            input_snrs_db: (0..=16).map(|i| 5.0 * i as f64).collect(),
            n_mismatch_trials: DEFAULT_TRIALS,
            n_noise_trials: DEFAULT_TRIALS,
            adc_loading: DEFAULT_ADC_LOADING,
            gain_compensation: true,
            yield_fraction: 0.9,
            snr_ceiling_db: DEFAULT_SNR_CEILING_DB,
            signal_sigma: 1.0,
        }
    }
}

/// One simulated chain. Omitting the resolution bypasses quantization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChainConfig {
    Digital {
        #[serde(default)]
        input_bits: Option<u32>,
        #[serde(default)]
        name: Option<String>,
    },
    Analog {
        array: ArraySource,
        #[serde(default)]
        adc_bits: Option<u32>,
        #[serde(default)]
        name: Option<String>,
    },
}

impl ChainConfig {
    pub fn kind(&self) -> ChainKind {
        match self {
            ChainConfig::Digital { .. } => ChainKind::Digital,
            ChainConfig::Analog { .. } => ChainKind::Analog,
        }
    }

    /// File stem for this chain's curve, e.g. `digital_5b` or
    /// `analog_0.68fF_7b`.
    pub fn file_stem(&self) -> Result<String, ConfigError> {
        Ok(match self {
            ChainConfig::Digital { name: Some(n), .. } | ChainConfig::Analog { name: Some(n), .. } => n.clone(),
            ChainConfig::Digital { input_bits, .. } => {
                format!("digital_{}", input_bits.map_or_else(|| String::from("float"), |b| format!("{b}b")))
            }
            ChainConfig::Analog { array, adc_bits, .. } => format!(
                "analog_{}_{}",
                array.resolve()?.label(),
                adc_bits.map_or_else(|| String::from("ideal-adc"), |b| format!("{b}b"))
            ),
        })
    }
}

/// A built-in array by label (`"0.68fF"`, `"4fF"`, `"1.5"`) or a custom array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArraySource {
    Preset(String),
    Custom(CustomArray),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomArray {
    pub c_unit_ff: f64,
    pub sigma_ratio: f64,
    pub f3db_hz: f64,
    pub unit_area_um2: f64,
    pub array_area_mm2: f64,
    #[serde(default = "default_loss")]
    pub insertion_loss_db: f64,
}

fn default_loss() -> f64 {
    DEFAULT_INSERTION_LOSS_DB
}

impl ArraySource {
    pub fn resolve(&self) -> Result<CapacitorArraySpec, ConfigError> {
        match self {
            ArraySource::Preset(label) => preset_by_label(label),
            ArraySource::Custom(c) => {
                let spec = CapacitorArraySpec {
                    c_unit_ff: c.c_unit_ff,
                    unit_area_um2: c.unit_area_um2,
                    array_area_mm2: c.array_area_mm2,
                    f3db_hz: c.f3db_hz,
                    sigma_ratio: c.sigma_ratio,
                    insertion_loss_db: c.insertion_loss_db,
                };
                spec.validate().map_err(|e| invalid(format!("custom array: {e}")))?;
                Ok(spec)
            }
        }
    }
}

pub fn preset_by_label(label: &str) -> Result<CapacitorArraySpec, ConfigError> {
    let value = label.trim().trim_end_matches("fF").trim();
    value.parse::<f64>().ok().and_then(CapacitorArraySpec::from_preset).ok_or_else(|| {
        let known: Vec<String> = ARRAY_PRESETS.iter().map(|p| p.label()).collect();
        invalid(format!("unknown array preset {label:?}; known presets: {}", known.join(", ")))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DseParams {
    /// ADC survey CSV; the bundled synthetic survey when absent.
    pub survey: Option<PathBuf>,
    pub targets_db: Vec<f64>,
    pub analog_presets: Vec<String>,
    pub digital_bits: Vec<u32>,
    pub n_channels: usize,
    pub guard_margin_db: f64,
    pub exclude_adc_area: bool,
    /// Noise-free trials for the digital output-SNR capability.
    pub digital_capability_trials: usize,
    pub analog_capability_mismatch_trials: usize,
    pub analog_capability_noise_trials: usize,
}

impl Default for DseParams {
    fn default() -> Self {
        Self {
            survey: None,
            targets_db: (5..=25).map(|i| 2.0 * i as f64).collect(),
            analog_presets: ARRAY_PRESETS.iter().map(|p| p.label()).collect(),
            digital_bits: (5..=10).collect(),
            n_channels: 128,
            guard_margin_db: 0.0,
            exclude_adc_area: false,
            digital_capability_trials: 2000,
            analog_capability_mismatch_trials: 100,
            analog_capability_noise_trials: 50,
        }
    }
}

impl RunConfig {
    /// Parses a configuration or a run manifest.
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let value = match value {
            serde_json::Value::Object(mut map) if map.contains_key("command") && map.contains_key("config") => {
                map.remove("config").unwrap_or_default()
            }
            v => v,
        };
        Ok(serde_json::from_value(value)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::from_json_str(&text)
    }

    pub fn transform_spec(&self) -> Result<TransformSpec, ConfigError> {
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(invalid(format!("order must be in 1..={MAX_ORDER}, got {}", self.order)));
        }
        TransformSpec::new(self.order).map_err(|e| invalid(e.to_string()))
    }

    pub fn sweep_config(&self, kind: ChainKind) -> SweepConfig {
        let s = &self.sweep;
        let mut cfg = SweepConfig::new(kind, s.input_snrs_db.clone())
            .with_trials(s.n_mismatch_trials, s.n_noise_trials)
            .with_seed(self.master_seed);
        cfg.adc_loading = Some(s.adc_loading);
        cfg.gain_compensation = s.gain_compensation;
        cfg.yield_fraction = s.yield_fraction;
        cfg.snr_ceiling_db = s.snr_ceiling_db;
        cfg.signal_sigma = s.signal_sigma;
        cfg
    }

    /// Checks everything `sweep-snr` needs.
    pub fn validate_sweep(&self) -> Result<(), ConfigError> {
        self.transform_spec()?;
        if self.sweep.input_snrs_db.iter().any(|s| !s.is_finite()) {
            return Err(invalid("sweep.input_snrs_db must be finite numbers"));
        }
        if !(self.sweep.snr_ceiling_db > 0.0 && self.sweep.snr_ceiling_db.is_finite()) {
            return Err(invalid("sweep.snr_ceiling_db must be positive"));
        }
        self.sweep_config(ChainKind::Digital).validate().map_err(|e| invalid(format!("sweep: {e}")))?;
        if self.chains.is_empty() {
            return Err(invalid("no chains configured"));
        }
        let mut stems = Vec::new();
        for chain in &self.chains {
            let bits = match chain {
                ChainConfig::Digital { input_bits, .. } => *input_bits,
                ChainConfig::Analog { array, adc_bits, .. } => {
                    array.resolve()?;
                    *adc_bits
                }
            };
            if let Some(b) = bits {
                if !(2..=32).contains(&b) {
                    return Err(invalid(format!("ADC resolution must be in 2..=32 bits, got {b}")));
                }
            }
            let stem = chain.file_stem()?;
            if stem.is_empty() || stem.contains(['/', '\\']) {
                return Err(invalid(format!("chain name {stem:?} is not a valid file stem")));
            }
            if stems.contains(&stem) {
                return Err(invalid(format!("two chains would both write {stem}.csv")));
            }
            stems.push(stem);
        }
        Ok(())
    }

    /// Checks everything `dse` needs.
    pub fn validate_dse(&self) -> Result<(), ConfigError> {
        self.transform_spec()?;
        let d = &self.dse;
        if d.targets_db.is_empty() {
            return Err(invalid("dse.targets_db is empty"));
        }
        if d.targets_db.iter().any(|t| !t.is_finite()) {
            return Err(invalid("dse.targets_db must be finite numbers"));
        }
        if d.analog_presets.is_empty() && d.digital_bits.is_empty() {
            return Err(invalid("dse has no designs to evaluate"));
        }
        for p in &d.analog_presets {
            preset_by_label(p)?;
        }
        for &b in &d.digital_bits {
            if DigitalFhtRow::from_bits(b).is_none() {
                return Err(invalid(format!("no digital FHT preset for {b}-bit inputs (available: 5..=10)")));
            }
        }
        if d.n_channels == 0 {
            return Err(invalid("dse.n_channels must be at least 1"));
        }
        if !d.guard_margin_db.is_finite() || d.guard_margin_db < 0.0 {
            return Err(invalid("dse.guard_margin_db must be non-negative"));
        }
        if d.digital_capability_trials == 0
            || d.analog_capability_mismatch_trials == 0
            || d.analog_capability_noise_trials == 0
        {
            return Err(invalid("dse capability trial counts must be at least 1"));
        }
        Ok(())
    }
}
