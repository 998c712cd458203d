use core::cmp::Ordering;
use core::fmt;

use super::AdcRecord;
use crate::chain::ChainKind;
use crate::{math, Error, Result};

/// What an ADC must deliver for one chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RequirementSet {
    pub required_sndr_db: f64,
    pub required_rate_hz: f64,
}

/// Constraint that made selection fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BindingConstraint {
    /// The survey is empty.
    NoCandidates,
    /// No ADC reaches the required SNDR.
    Sndr,
    /// No ADC reaches the required rate.
    Rate,
    /// Neither requirement is met by any ADC.
    SndrAndRate,
    /// Each requirement is met by some ADC, but never both by the same one.
    Joint,
}

impl fmt::Display for BindingConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BindingConstraint::NoCandidates => "no candidates",
            BindingConstraint::Sndr => "SNDR",
            BindingConstraint::Rate => "rate",
            BindingConstraint::SndrAndRate => "SNDR and rate",
            BindingConstraint::Joint => "SNDR with rate jointly",
        })
    }
}

/// SNDR margin the analog path adds for its insertion loss: the loss
/// rounded up to a whole dB (11.3 dB -> 12 dB).
pub fn insertion_loss_compensation_db(insertion_loss_db: f64) -> f64 {
    if insertion_loss_db <= 0.0 {
        0.0
    } else {
        math::ceil(insertion_loss_db)
    }
}

/// ADC resolution of an analog chain whose SNDR is raised by the insertion
/// loss compensation, relative to a digital chain with `input_bits` ADCs.
pub fn compensated_adc_bits(input_bits: u32, insertion_loss_db: f64) -> u32 {
    let extra = math::round(insertion_loss_compensation_db(insertion_loss_db) / 6.02);
    input_bits + extra as u32
}

/// Required ADC SNDR and rate for a chain reaching `target_output_snr_db` at
/// `transform_rate_hz`.
///
/// Digital chains need the target itself; analog chains add
/// [`insertion_loss_compensation_db`]. `guard_margin_db` is added to both.
pub fn adc_requirements(
    kind: ChainKind,
    target_output_snr_db: f64,
    transform_rate_hz: f64,
    insertion_loss_db: f64,
    guard_margin_db: f64,
) -> RequirementSet {
    let compensation = match kind {
        ChainKind::Digital => 0.0,
        ChainKind::Analog => insertion_loss_compensation_db(insertion_loss_db),
    };
    RequirementSet {
        required_sndr_db: target_output_snr_db + compensation + guard_margin_db,
        required_rate_hz: transform_rate_hz,
    }
}

fn cheaper(a: &AdcRecord, b: &AdcRecord) -> Ordering {
    a.energy_per_conversion()
        .total_cmp(&b.energy_per_conversion())
        .then(a.power_w.total_cmp(&b.power_w))
        .then_with(|| a.name.cmp(&b.name))
}

/// Cheapest feasible ADC by energy per conversion; ties go to lower power,
/// then to the lexicographically smaller name.
pub fn select_adc<'a>(records: &'a [AdcRecord], req: &RequirementSet) -> Result<&'a AdcRecord> {
    let meets_sndr = |r: &AdcRecord| r.sndr_db >= req.required_sndr_db;
    let meets_rate = |r: &AdcRecord| r.nyquist_rate_hz >= req.required_rate_hz;

    if let Some(best) = records.iter().filter(|r| meets_sndr(r) && meets_rate(r)).min_by(|a, b| cheaper(a, b)) {
        return Ok(best);
    }

    let binding = match (records.iter().any(meets_sndr), records.iter().any(meets_rate)) {
        _ if records.is_empty() => BindingConstraint::NoCandidates,
        (false, false) => BindingConstraint::SndrAndRate,
        (false, true) => BindingConstraint::Sndr,
        (true, false) => BindingConstraint::Rate,
        (true, true) => BindingConstraint::Joint,
    };
    Err(Error::Infeasible(binding))
}
