use alloc::vec::Vec;

use crate::{math, Error, Result};

/// Behavioral ADC: an ideal uniform mid-rise quantizer at `round(enob)`
/// bits, plus the cost figures used by design-space exploration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdcModel {
    pub enob: f64,
    /// Peak input amplitude; the quantizer spans `[-full_scale, full_scale]`.
    pub full_scale: f64,
    pub sample_rate_hz: f64,
    pub energy_per_conversion_j: f64,
    pub area_mm2: f64,
}

impl AdcModel {
    /// A cost-free quantizer with `bits` ideal bits.
    pub fn ideal(bits: u32, full_scale: f64) -> Self {
        Self { enob: bits as f64, full_scale, sample_rate_hz: 0.0, energy_per_conversion_j: 0.0, area_mm2: 0.0 }
    }

    pub fn with_full_scale(mut self, full_scale: f64) -> Self {
        self.full_scale = full_scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.enob > 0.0 && self.enob.is_finite()) {
            return Err(Error::invalid("ADC ENOB must be positive"));
        }
        if !(1..=62).contains(&self.bits()) {
            return Err(Error::invalid("ADC resolution must round to 1..=62 bits"));
        }
        if !(self.full_scale > 0.0 && self.full_scale.is_finite()) {
            return Err(Error::invalid("ADC full scale must be positive"));
        }
        Ok(())
    }

    /// Number of quantizer bits, `round(enob)`.
    pub fn bits(&self) -> u32 {
        math::round(self.enob).max(0.0) as u32
    }

    /// Code step, `2 * full_scale / 2^bits`.
    pub fn step(&self) -> f64 {
        2.0 * self.full_scale / (1u64 << self.bits()) as f64
    }

    pub fn min_code(&self) -> i64 {
        -(1i64 << (self.bits() - 1))
    }

    pub fn max_code(&self) -> i64 {
        (1i64 << (self.bits() - 1)) - 1
    }

    /// Output code for `v` and whether it saturated.
    #[inline]
    pub fn code(&self, v: f64) -> (i64, bool) {
        let k = math::floor(v / self.step());
        let (lo, hi) = (self.min_code() as f64, self.max_code() as f64);
        if k < lo {
            (self.min_code(), true)
        } else if k > hi {
            (self.max_code(), true)
        } else {
            (k as i64, false)
        }
    }

    /// Center value of code `k`: `(k + 1/2) * step`.
    #[inline]
    pub fn reconstruct(&self, code: i64) -> f64 {
        (code as f64 + 0.5) * self.step()
    }
}

/// Quantizes `v` into `out`; returns the number of saturated samples.
pub fn quantize_into(v: &[f64], adc: &AdcModel, out: &mut [f64]) -> Result<usize> {
    if v.len() != out.len() {
        return Err(Error::LengthMismatch { expected: v.len(), actual: out.len() });
    }
    adc.validate()?;
    let mut clipped = 0;
    for (o, &x) in out.iter_mut().zip(v) {
        let (k, sat) = adc.code(x);
        clipped += sat as usize;
        *o = adc.reconstruct(k);
    }
    Ok(clipped)
}

/// Quantizes and reconstructs every element of `v`.
pub fn quantize(v: &[f64], adc: &AdcModel) -> Result<Vec<f64>> {
    let mut out = alloc::vec![0.0; v.len()];
    quantize_into(v, adc, &mut out)?;
    Ok(out)
}

/// Raw two's-complement ADC codes for `v` and the saturation count.
pub fn quantize_codes(v: &[f64], adc: &AdcModel) -> Result<(Vec<i64>, usize)> {
    adc.validate()?;
    let mut clipped = 0;
    let codes = v
        .iter()
        .map(|&x| {
            let (k, sat) = adc.code(x);
            clipped += sat as usize;
            k
        })
        .collect();
    Ok((codes, clipped))
}
