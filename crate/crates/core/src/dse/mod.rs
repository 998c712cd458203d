//! Design-space exploration: ADC requirements and selection, system-level
//! area and energy accounting, and Pareto extraction.
//!
//! Units follow the usual reporting conventions: area efficiency is mm² per
//! GT/s and energy efficiency is pJ per transform, where one transform
//! converts and transforms all `M` channels once.

mod evaluate;
mod pareto;
mod records;
mod select;

pub use evaluate::{
    evaluate_design, explore, AreaAccounting, DesignPoint, DseRow, EvalOptions, ExploreOptions, Outcome,
};
pub use pareto::{dominates, pareto_front, pareto_indices, Objective};
pub use records::{AdcRecord, DigitalFhtRow, TransformDesignRecord, DIGITAL_FHT_PRESETS};
pub use select::{
    adc_requirements, compensated_adc_bits, insertion_loss_compensation_db, select_adc, BindingConstraint,
    RequirementSet,
};
