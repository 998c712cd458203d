use alloc::format;
use alloc::string::String;

use crate::analog::{nyquist_rate, CapacitorArraySpec};
use crate::chain::ChainKind;
use crate::{Error, Result};

/// One converter from an ADC survey.
#[derive(Debug, Clone, PartialEq)]
pub struct AdcRecord {
    pub name: String,
    pub architecture: String,
    pub technology_nm: u32,
    pub sndr_db: f64,
    pub nyquist_rate_hz: f64,
    pub power_w: f64,
    /// Silicon area when the survey reports it.
    pub area_mm2: Option<f64>,
}

impl AdcRecord {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.sndr_db) {
            return Err(Error::invalid("sndr_db must be positive"));
        }
        if !positive(self.nyquist_rate_hz) {
            return Err(Error::invalid("nyquist_rate_hz must be positive"));
        }
        if !positive(self.power_w) {
            return Err(Error::invalid("power_w must be positive"));
        }
        if let Some(a) = self.area_mm2 {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(Error::invalid("area_mm2 must be non-negative"));
            }
        }
        Ok(())
    }

    /// Joules per conversion, `power / rate`.
    pub fn energy_per_conversion(&self) -> f64 {
        self.power_w / self.nyquist_rate_hz
    }

    /// Converter with unlimited rate and resolution and no cost. Used to
    /// account for the transform alone.
    pub fn zero_cost() -> Self {
        Self {
            name: String::from("zero-cost"),
            architecture: String::from("ideal"),
            technology_nm: 0,
            sndr_db: f64::INFINITY,
            nyquist_rate_hz: f64::INFINITY,
            power_w: 0.0,
            area_mm2: Some(0.0),
        }
    }
}

/// Post-layout 128-point digital FHT, with the efficiency columns as
/// published (kept for cross-checking the recomputed values).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DigitalFhtRow {
    pub input_bits: u32,
    pub area_mm2: f64,
    pub max_freq_hz: f64,
    pub power_w: f64,
    pub published_area_eff: f64,
    pub published_energy_eff_pj: f64,
}

const fn fht_row(input_bits: u32, area_mm2: f64, ghz: f64, mw: f64, area_eff: f64, pj: f64) -> DigitalFhtRow {
    DigitalFhtRow {
        input_bits,
        area_mm2,
        max_freq_hz: ghz * 1e9,
        power_w: mw / 1e3,
        published_area_eff: area_eff,
        published_energy_eff_pj: pj,
    }
}

pub const DIGITAL_FHT_PRESETS: [DigitalFhtRow; 6] = [
    fht_row(5, 0.195, 1.603, 346.7, 0.122, 216.4),
    fht_row(6, 0.236, 1.605, 431.4, 0.147, 268.8),
    fht_row(7, 0.277, 1.439, 440.6, 0.192, 306.2),
    fht_row(8, 0.314, 1.429, 517.0, 0.219, 361.9),
    fht_row(9, 0.341, 1.431, 575.9, 0.239, 402.5),
    fht_row(10, 0.394, 1.377, 617.1, 0.287, 448.0),
];

impl DigitalFhtRow {
    pub fn from_bits(bits: u32) -> Option<Self> {
        DIGITAL_FHT_PRESETS.iter().copied().find(|r| r.input_bits == bits)
    }
}

/// A transform implementation as seen by the exploration.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformDesignRecord {
    pub name: String,
    pub kind: ChainKind,
    pub area_mm2: f64,
    /// Clock frequency (digital) or Nyquist rate (analog); a fully
    /// pipelined design sustains one transform per cycle.
    pub max_rate_hz: f64,
    /// Zero for the passive array.
    pub power_w: f64,
    pub input_bits: Option<u32>,
    pub c_unit_ff: Option<f64>,
    pub insertion_loss_db: f64,
    pub output_snr_capability_db: f64,
}

impl TransformDesignRecord {
    pub fn digital(row: &DigitalFhtRow, output_snr_capability_db: f64) -> Self {
        Self {
            name: format!("digital-{}b", row.input_bits),
            kind: ChainKind::Digital,
            area_mm2: row.area_mm2,
            max_rate_hz: row.max_freq_hz,
            power_w: row.power_w,
            input_bits: Some(row.input_bits),
            c_unit_ff: None,
            insertion_loss_db: 0.0,
            output_snr_capability_db,
        }
    }

    pub fn analog(array: &CapacitorArraySpec, output_snr_capability_db: f64) -> Self {
        Self {
            name: format!("analog-{}", array.label()),
            kind: ChainKind::Analog,
            area_mm2: array.array_area_mm2,
            max_rate_hz: nyquist_rate(array),
            power_w: 0.0,
            input_bits: None,
            c_unit_ff: Some(array.c_unit_ff),
            insertion_loss_db: array.insertion_loss_db,
            output_snr_capability_db,
        }
    }
}
