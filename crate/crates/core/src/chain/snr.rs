use alloc::vec::Vec;

use crate::{math, Error, Result};

/// Reported when the error energy is exactly zero.
pub const DEFAULT_SNR_CEILING_DB: f64 = 200.0;

/// `10 log10(signal / error)`, or `ceiling_db` when `error` is zero.
pub fn snr_from_energies(signal: f64, error: f64, ceiling_db: f64) -> f64 {
    if error <= 0.0 {
        ceiling_db
    } else {
        math::db10(signal / error).min(ceiling_db)
    }
}

/// Output SNR of an ensemble: `E|y|^2 / E|y - y_hat|^2` in dB.
///
/// Both slices hold the ensemble flattened trial by trial; expectations are
/// ensemble averages, so the ratio of sums is taken directly.
pub fn output_snr(ideal: &[f64], estimate: &[f64], ceiling_db: f64) -> Result<f64> {
    if ideal.len() != estimate.len() {
        return Err(Error::LengthMismatch { expected: ideal.len(), actual: estimate.len() });
    }
    let signal = math::energy(ideal);
    let error: f64 = ideal.iter().zip(estimate).map(|(y, e)| (y - e) * (y - e)).sum();
    Ok(snr_from_energies(signal, error, ceiling_db))
}

/// Linear-interpolation quantile of already sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = math::floor(h) as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Output SNR met by `yield_fraction` of the samples: the
/// `1 - yield_fraction` quantile, interpolated between order statistics.
pub fn yield_snr(samples: &[f64], yield_fraction: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::invalid("yield needs at least one sample"));
    }
    if !(yield_fraction > 0.0 && yield_fraction < 1.0) {
        return Err(Error::invalid("yield fraction must lie strictly between 0 and 1"));
    }
    if samples.iter().any(|s| s.is_nan()) {
        return Err(Error::invalid("SNR samples must not be NaN"));
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(quantile(&sorted, 1.0 - yield_fraction))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_estimate_hits_ceiling() {
        let y = [1.0, -2.0, 0.5];
        assert_eq!(output_snr(&y, &y, DEFAULT_SNR_CEILING_DB).unwrap(), 200.0);
    }

    #[test]
    fn zero_estimate_is_zero_db() {
        let y = [1.0, -2.0, 0.5];
        assert!(output_snr(&y, &[0.0; 3], 200.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(output_snr(&[1.0], &[1.0, 2.0], 200.0).is_err());
    }

    #[test]
    fn constant_samples() {
        assert_eq!(yield_snr(&[30.0; 10], 0.9).unwrap(), 30.0);
    }

    #[test]
    fn tenth_percentile_of_ten_values() {
        // h = 9 * 0.1 = 0.9 -> 21 + 0.9 * (22 - 21)
        let s: Vec<f64> = (21..=30).map(f64::from).collect();
        assert!((yield_snr(&s, 0.9).unwrap() - 21.9).abs() < 1e-12);
        // order of the input does not matter
        let rev: Vec<f64> = s.iter().rev().copied().collect();
        assert!((yield_snr(&rev, 0.9).unwrap() - 21.9).abs() < 1e-12);
    }

    #[test]
    fn half_yield_is_median() {
        assert_eq!(yield_snr(&[5.0, 1.0, 3.0], 0.5).unwrap(), 3.0);
        assert_eq!(yield_snr(&[4.0, 1.0, 3.0, 2.0], 0.5).unwrap(), 2.5);
    }

    #[test]
    fn yield_argument_errors() {
        assert!(yield_snr(&[], 0.9).is_err());
        assert!(yield_snr(&[1.0], 1.0).is_err());
        assert!(yield_snr(&[1.0], 0.0).is_err());
    }
}
