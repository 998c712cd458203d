use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{adc_requirements, select_adc, AdcRecord, BindingConstraint, TransformDesignRecord};
use crate::chain::ChainKind;
use crate::{Error, Result};

/// Whether ADC area is charged to the design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AreaAccounting {
    #[default]
    IncludeAdc,
    ExcludeAdc,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// One ADC per channel.
    pub n_channels: usize,
    pub area: AreaAccounting,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { n_channels: 128, area: AreaAccounting::IncludeAdc }
    }
}

/// One complete chain: transform plus its ADCs.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignPoint {
    pub label: String,
    /// Name of the transform design this point belongs to.
    pub design: String,
    pub kind: ChainKind,
    /// Transforms per second.
    pub throughput: f64,
    pub total_power_w: f64,
    /// `None` when ADC area is charged but the survey does not report it.
    pub total_area_mm2: Option<f64>,
    pub output_snr_db: f64,
    /// mm² per GT/s.
    pub area_eff: Option<f64>,
    /// pJ per transform.
    pub energy_eff_pj: f64,
    pub adc: AdcRecord,
}

impl DesignPoint {
    pub fn throughput_gts(&self) -> f64 {
        self.throughput / 1e9
    }
}

/// System-level cost of `transform` with `opts.n_channels` copies of `adc`.
///
/// Throughput is the slower of the transform and the ADC. ADC power is taken
/// at constant energy per conversion, i.e. scaled linearly to the operating
/// rate. The point's output SNR is the design's capability.
pub fn evaluate_design(transform: &TransformDesignRecord, adc: &AdcRecord, opts: &EvalOptions) -> DesignPoint {
    let throughput = transform.max_rate_hz.min(adc.nyquist_rate_hz);
    let adc_power = if adc.power_w == 0.0 { 0.0 } else { adc.power_w * throughput / adc.nyquist_rate_hz };
    let n = opts.n_channels as f64;
    let total_power_w = transform.power_w + n * adc_power;
    let total_area_mm2 = match opts.area {
        AreaAccounting::ExcludeAdc => Some(transform.area_mm2),
        AreaAccounting::IncludeAdc => adc.area_mm2.map(|a| transform.area_mm2 + n * a),
    };
    let gts = throughput / 1e9;
    DesignPoint {
        label: transform.name.clone(),
        design: transform.name.clone(),
        kind: transform.kind,
        throughput,
        total_power_w,
        total_area_mm2,
        output_snr_db: transform.output_snr_capability_db,
        area_eff: total_area_mm2.map(|a| a / gts),
        energy_eff_pj: total_power_w / throughput * 1e12,
        adc: adc.clone(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExploreOptions {
    /// Output-SNR targets in dB.
    pub targets_db: Vec<f64>,
    pub eval: EvalOptions,
    pub guard_margin_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Outcome {
    Feasible(DesignPoint),
    Infeasible(BindingConstraint),
}

/// One (design, target) evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DseRow {
    pub label: String,
    pub design: String,
    pub target_db: f64,
    pub outcome: Outcome,
}

impl DseRow {
    pub fn point(&self) -> Option<&DesignPoint> {
        match &self.outcome {
            Outcome::Feasible(p) => Some(p),
            Outcome::Infeasible(_) => None,
        }
    }
}

/// Evaluates every design at every target it can reach.
///
/// For each target at or below a design's output-SNR capability, the ADC
/// requirement is derived for the design's chain kind and the cheapest
/// feasible survey ADC is chosen. Targets above the capability are skipped;
/// ADC infeasibility yields an [`Outcome::Infeasible`] row.
pub fn explore(designs: &[TransformDesignRecord], survey: &[AdcRecord], opts: &ExploreOptions) -> Result<Vec<DseRow>> {
    let mut rows = Vec::new();
    for design in designs {
        for &target in &opts.targets_db {
            if target > design.output_snr_capability_db {
                continue;
            }
            let req = adc_requirements(
                design.kind,
                target,
                design.max_rate_hz,
                design.insertion_loss_db,
                opts.guard_margin_db,
            );
            let label = format!("{}@{}dB", design.name, target);
            let outcome = match select_adc(survey, &req) {
                Ok(adc) => {
                    let mut point = evaluate_design(design, adc, &opts.eval);
                    point.label = label.clone();
                    point.output_snr_db = target;
                    Outcome::Feasible(point)
                }
                Err(Error::Infeasible(b)) => Outcome::Infeasible(b),
                Err(e) => return Err(e),
            };
            rows.push(DseRow { label, design: design.name.clone(), target_db: target, outcome });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dse::DIGITAL_FHT_PRESETS;

    fn within(got: f64, want: f64, rel: f64) -> bool {
        ((got - want) / want).abs() <= rel
    }

    #[test]
    fn five_bit_preset_reproduces_published_efficiency() {
        let d = TransformDesignRecord::digital(&DIGITAL_FHT_PRESETS[0], 20.0);
        let p = evaluate_design(&d, &AdcRecord::zero_cost(), &EvalOptions::default());
        assert!(within(p.area_eff.unwrap(), 0.122, 0.005));
        assert!(within(p.energy_eff_pj, 216.4, 0.005));
        assert!((p.energy_eff_pj - 216.28).abs() < 0.01);
    }

    #[test]
    fn ten_bit_preset_reproduces_published_efficiency() {
        let d = TransformDesignRecord::digital(&DIGITAL_FHT_PRESETS[5], 40.0);
        let p = evaluate_design(&d, &AdcRecord::zero_cost(), &EvalOptions::default());
        assert!(within(p.area_eff.unwrap(), 0.287, 0.005));
        assert!(within(p.energy_eff_pj, 448.0, 0.005));
    }

    fn slow_adc() -> AdcRecord {
        AdcRecord {
            name: "slow".into(),
            architecture: "SAR".into(),
            technology_nm: 65,
            sndr_db: 50.0,
            nyquist_rate_hz: 1e9,
            power_w: 2e-3,
            area_mm2: None,
        }
    }

    #[test]
    fn throughput_is_clipped_by_adc() {
        let mut d = TransformDesignRecord::digital(&DIGITAL_FHT_PRESETS[0], 20.0);
        d.max_rate_hz = 2e9;
        let p = evaluate_design(&d, &slow_adc(), &EvalOptions::default());
        assert_eq!(p.throughput, 1e9);
        assert!((p.total_power_w - (d.power_w + 128.0 * 2e-3)).abs() < 1e-12);
    }

    #[test]
    fn adc_power_scales_with_operating_rate() {
        let mut d = TransformDesignRecord::digital(&DIGITAL_FHT_PRESETS[0], 20.0);
        d.max_rate_hz = 0.5e9;
        let p = evaluate_design(&d, &slow_adc(), &EvalOptions { n_channels: 4, ..Default::default() });
        assert!((p.total_power_w - (d.power_w + 4.0 * 1e-3)).abs() < 1e-12);
    }

    #[test]
    fn missing_adc_area_is_reported_not_zeroed() {
        let d = TransformDesignRecord::digital(&DIGITAL_FHT_PRESETS[0], 20.0);
        let p = evaluate_design(&d, &slow_adc(), &EvalOptions::default());
        assert_eq!(p.total_area_mm2, None);
        assert_eq!(p.area_eff, None);
        let excl = EvalOptions { area: AreaAccounting::ExcludeAdc, ..Default::default() };
        assert_eq!(evaluate_design(&d, &slow_adc(), &excl).total_area_mm2, Some(0.195));
    }

    #[test]
    fn explore_skips_unreachable_targets_and_marks_infeasible() {
        let d = TransformDesignRecord::digital(&DIGITAL_FHT_PRESETS[0], 25.0);
        let opts =
            ExploreOptions { targets_db: alloc::vec![20.0, 30.0], eval: EvalOptions::default(), guard_margin_db: 0.0 };
        let rows = explore(core::slice::from_ref(&d), &[], &opts).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].outcome, Outcome::Infeasible(BindingConstraint::NoCandidates));
        assert_eq!(rows[0].label, "digital-5b@20dB");

        let mut fast = slow_adc();
        fast.nyquist_rate_hz = 2e9;
        let rows = explore(&[d], &[fast], &opts).unwrap();
        let p = rows[0].point().unwrap();
        assert_eq!(p.output_snr_db, 20.0);
        assert_eq!(p.adc.name, "slow");
    }
}
