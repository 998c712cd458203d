//! Passive capacitor-array Hadamard transform.
//!
//! Each output sums every input through a unit capacitor whose polarity
//! follows the Hadamard sign pattern. Fabrication mismatch perturbs each
//! coupling capacitor independently, and the passive network attenuates the
//! whole transform by a fixed insertion loss.

use alloc::vec::Vec;

use rand_distr::{Distribution, StandardNormal};

use crate::transform::{hadamard_sign, TransformSpec};
use crate::{math, rng, Error, Result};

/// Attenuation of the 128-point array, in amplitude dB.
pub const DEFAULT_INSERTION_LOSS_DB: f64 = 11.3;

/// Capacitor mismatch coefficient, in percent times sqrt(fF).
pub const MISMATCH_COEFF_PERCENT: f64 = 2.0;

/// Output conductance of the array drivers, in siemens.
pub const DEFAULT_DRIVER_CONDUCTANCE_S: f64 = 14.4e-6;

/// Physical parameters of one capacitor-array design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitorArraySpec {
    /// Unit capacitance in fF.
    pub c_unit_ff: f64,
    /// Area of one unit capacitor in µm².
    pub unit_area_um2: f64,
    /// Area of the full 128-point array in mm².
    pub array_area_mm2: f64,
    /// -3 dB bandwidth at the reference driver conductance, in Hz.
    pub f3db_hz: f64,
    /// Relative standard deviation of one unit capacitor.
    pub sigma_ratio: f64,
    pub insertion_loss_db: f64,
}

/// The four post-layout 128-point designs, smallest capacitor first.
pub const ARRAY_PRESETS: [CapacitorArraySpec; 4] = [
    CapacitorArraySpec::preset(0.68, 2.25, 0.078, 4.65e9, 0.06),
    CapacitorArraySpec::preset(1.5, 4.41, 0.153, 2.55e9, 0.024),
    CapacitorArraySpec::preset(2.0, 5.76, 0.200, 2.03e9, 0.016),
    CapacitorArraySpec::preset(4.0, 10.24, 0.356, 1.1e9, 0.01),
];

impl CapacitorArraySpec {
    const fn preset(c_unit_ff: f64, unit_area_um2: f64, array_area_mm2: f64, f3db_hz: f64, sigma_ratio: f64) -> Self {
        Self {
            c_unit_ff,
            unit_area_um2,
            array_area_mm2,
            f3db_hz,
            sigma_ratio,
            insertion_loss_db: DEFAULT_INSERTION_LOSS_DB,
        }
    }

    /// Looks up a built-in design by unit capacitance.
    pub fn from_preset(c_unit_ff: f64) -> Option<Self> {
        ARRAY_PRESETS.iter().copied().find(|p| (p.c_unit_ff - c_unit_ff).abs() < 1e-9)
    }

    /// Short label such as `0.68fF`.
    pub fn label(&self) -> alloc::string::String {
        alloc::format!("{}fF", self.c_unit_ff)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [self.c_unit_ff, self.unit_area_um2, self.array_area_mm2, self.f3db_hz];
        if positive.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::invalid("capacitor array dimensions and bandwidth must be positive"));
        }
        if !(0.0..0.5).contains(&self.sigma_ratio) {
            return Err(Error::invalid("sigma_ratio must lie in [0, 0.5)"));
        }
        if !(self.insertion_loss_db >= 0.0 && self.insertion_loss_db.is_finite()) {
            return Err(Error::invalid("insertion loss must be a non-negative dB value"));
        }
        Ok(())
    }

    /// Amplitude factor `10^(-loss/20)` applied by the passive network.
    pub fn attenuation(&self) -> f64 {
        math::from_db20(-self.insertion_loss_db)
    }

    pub fn with_sigma(mut self, sigma_ratio: f64) -> Self {
        self.sigma_ratio = sigma_ratio;
        self
    }

    pub fn with_insertion_loss(mut self, db: f64) -> Self {
        self.insertion_loss_db = db;
        self
    }
}

/// Array driver; kept for reporting, bandwidth comes from the presets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriverSpec {
    pub conductance_s: f64,
}

impl Default for DriverSpec {
    fn default() -> Self {
        Self { conductance_s: DEFAULT_DRIVER_CONDUCTANCE_S }
    }
}

/// One sampled set of relative capacitor errors, row-major `M x M`.
#[derive(Debug, Clone, PartialEq)]
pub struct MismatchRealization {
    dim: usize,
    epsilon: Vec<f64>,
    seed: u64,
}

impl MismatchRealization {
    /// Realization with no mismatch.
    pub fn ideal(dim: usize) -> Self {
        Self { dim, epsilon: alloc::vec![0.0; dim * dim], seed: 0 }
    }

    /// Wraps explicit errors; `epsilon` is row-major `dim x dim`.
    pub fn from_errors(dim: usize, epsilon: Vec<f64>) -> Result<Self> {
        if epsilon.len() != dim * dim {
            return Err(Error::LengthMismatch { expected: dim * dim, actual: epsilon.len() });
        }
        Ok(Self { dim, epsilon, seed: 0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epsilon(&self) -> &[f64] {
        &self.epsilon
    }

    pub fn error(&self, row: usize, col: usize) -> f64 {
        self.epsilon[row * self.dim + col]
    }

    /// Seed the realization was drawn from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same pattern with every error multiplied by `t`.
    pub fn scaled(&self, t: f64) -> Self {
        Self { dim: self.dim, epsilon: self.epsilon.iter().map(|e| e * t).collect(), seed: self.seed }
    }
}

/// Draws i.i.d. `N(0, sigma_ratio^2)` errors for every coupling capacitor.
pub fn mismatch_sample(spec: &CapacitorArraySpec, dim: usize, rng_seed: u64) -> Result<MismatchRealization> {
    if dim == 0 {
        return Err(Error::invalid("array dimension must be at least 1"));
    }
    if spec.sigma_ratio.is_nan() || spec.sigma_ratio < 0.0 {
        return Err(Error::invalid("sigma_ratio must be non-negative"));
    }
    let mut r = rng::rng_from_seed(rng_seed);
    let sigma = spec.sigma_ratio;
    let epsilon = (0..dim * dim)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut r);
            sigma * z
        })
        .collect();
    Ok(MismatchRealization { dim, epsilon, seed: rng_seed })
}

/// Area-law mismatch estimate `A / sqrt(C)`, with `A` in percent·sqrt(fF).
pub fn mismatch_sigma_from_cap(a_coef_percent: f64, c_unit_ff: f64) -> f64 {
    a_coef_percent / 100.0 / math::sqrt(c_unit_ff)
}

/// Maximum transform rate supported by the array: twice its bandwidth.
pub fn nyquist_rate(spec: &CapacitorArraySpec) -> f64 {
    2.0 * spec.f3db_hz
}

/// Effective coupling matrix of one realized array,
/// `a / sqrt(M) * h_kj * (1 + eps_kj)`.
#[derive(Debug, Clone)]
pub struct AnalogArray {
    dim: usize,
    weights: Vec<f64>,
}

impl AnalogArray {
    pub fn new(spec: &CapacitorArraySpec, realization: &MismatchRealization) -> Result<Self> {
        let dim = realization.dim();
        TransformSpec::from_dim(dim)?;
        let gain = spec.attenuation() / math::sqrt(dim as f64);
        let mut weights = Vec::with_capacity(dim * dim);
        for k in 0..dim {
            for j in 0..dim {
                weights.push(gain * hadamard_sign(k, j) * (1.0 + realization.error(k, j)));
            }
        }
        Ok(Self { dim, weights })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, actual: x.len() });
        }
        if out.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, actual: out.len() });
        }
        for (row, o) in self.weights.chunks_exact(self.dim).zip(out.iter_mut()) {
            *o = math::dot(row, x);
        }
        Ok(())
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = alloc::vec![0.0; self.dim];
        self.apply_into(x, &mut out)?;
        Ok(out)
    }
}

/// Output of the realized array for input `x`.
pub fn analog_transform(x: &[f64], spec: &CapacitorArraySpec, realization: &MismatchRealization) -> Result<Vec<f64>> {
    if x.len() != realization.dim() {
        return Err(Error::LengthMismatch { expected: realization.dim(), actual: x.len() });
    }
    AnalogArray::new(spec, realization)?.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::fht_real;

    fn preset(c: f64) -> CapacitorArraySpec {
        CapacitorArraySpec::from_preset(c).unwrap()
    }

    #[test]
    fn presets_validate() {
        for p in ARRAY_PRESETS {
            p.validate().unwrap();
            assert_eq!(p.insertion_loss_db, 11.3);
        }
        assert!(preset(4.0).with_sigma(0.6).validate().is_err());
        assert!(preset(4.0).with_sigma(0.0).with_insertion_loss(0.0).validate().is_ok());
    }

    #[test]
    fn zero_sigma_gives_zero_errors() {
        let r = mismatch_sample(&preset(4.0).with_sigma(0.0), 16, 3).unwrap();
        assert!(r.epsilon().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn sample_std_matches_four_ff_preset() {
        let r = mismatch_sample(&preset(4.0), 128, 11).unwrap();
        let n = r.epsilon().len() as f64;
        let mean = r.epsilon().iter().sum::<f64>() / n;
        let var = r.epsilon().iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!(mean.abs() < 4.0 * 0.01 / n.sqrt());
        assert!((var.sqrt() / 0.01 - 1.0).abs() < 0.05);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let p = preset(0.68);
        assert_eq!(mismatch_sample(&p, 8, 5).unwrap(), mismatch_sample(&p, 8, 5).unwrap());
        assert_ne!(mismatch_sample(&p, 8, 5).unwrap(), mismatch_sample(&p, 8, 6).unwrap());
    }

    #[test]
    fn area_law_estimates() {
        assert!((mismatch_sigma_from_cap(2.0, 4.0) - 0.01).abs() < 1e-15);
        assert!((mismatch_sigma_from_cap(2.0, 1.0) - 0.02).abs() < 1e-15);
        let small = mismatch_sigma_from_cap(2.0, 0.68);
        assert!((small - 0.024254).abs() < 1e-6);
        assert!((small - preset(0.68).sigma_ratio).abs() > 0.03);
    }

    #[test]
    fn nyquist_is_twice_bandwidth() {
        assert!((nyquist_rate(&preset(0.68)) - 9.3e9).abs() < 1.0);
        assert!(nyquist_rate(&preset(0.68)) > 8e9);
        assert!((nyquist_rate(&preset(4.0)) - 2.2e9).abs() < 1.0);
        assert_eq!(nyquist_rate(&preset(4.0).clone_with_f3db(0.0)), 0.0);
    }

    impl CapacitorArraySpec {
        fn clone_with_f3db(mut self, f: f64) -> Self {
            self.f3db_hz = f;
            self
        }
    }

    #[test]
    fn ideal_lossless_array_is_the_fht() {
        let spec = preset(4.0).with_sigma(0.0).with_insertion_loss(0.0);
        let x: Vec<f64> = (0..32).map(|i| ((i * 7 % 13) as f64) - 6.0).collect();
        let y = analog_transform(&x, &spec, &MismatchRealization::ideal(32)).unwrap();
        let want = fht_real(&x, TransformSpec::new(5).unwrap()).unwrap();
        for (a, b) in y.iter().zip(&want) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn impulse_sees_insertion_loss() {
        let spec = preset(0.68);
        let mut x = alloc::vec![0.0; 128];
        x[0] = 1.0;
        let y = analog_transform(&x, &spec, &MismatchRealization::ideal(128)).unwrap();
        let want = libm::pow(10.0, -11.3 / 20.0) / 128f64.sqrt();
        assert!(y.iter().all(|v| (v - want).abs() < 1e-15));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let r = MismatchRealization::ideal(8);
        assert!(matches!(analog_transform(&[0.0; 4], &preset(1.5), &r), Err(Error::LengthMismatch { .. })));
    }
}
