//! CSV writers for sweep curves and design points.
//!
//! Floats are written in Rust's shortest round-trip form, so the files are
//! lossless and byte-stable for identical inputs.

use std::io::Write;

use hadamard_core::analog::{mismatch_sigma_from_cap, CapacitorArraySpec, MISMATCH_COEFF_PERCENT};
use hadamard_core::chain::SnrCurve;
use hadamard_core::dse::{DesignPoint, DseRow, Outcome, TransformDesignRecord};

pub const SNR_CURVE_HEADER: [&str; 5] = ["input_snr_db", "mean_db", "min_db", "max_db", "p10_db"];

pub const DESIGN_POINT_HEADER: [&str; 8] = [
    "label",
    "throughput_gts",
    "total_power_w",
    "total_area_mm2",
    "output_snr_db",
    "area_eff",
    "energy_eff",
    "adc_name",
];

pub const DESIGN_HEADER: [&str; 8] =
    ["name", "kind", "area_mm2", "max_rate_hz", "power_w", "input_bits", "c_unit_ff", "output_snr_capability_db"];

pub const AREA_UNAVAILABLE: &str = "area-unavailable";
pub const INFEASIBLE: &str = "infeasible";

pub fn num(v: f64) -> String {
    if v.is_nan() {
        String::from("nan")
    } else if v == f64::INFINITY {
        String::from("inf")
    } else if v == f64::NEG_INFINITY {
        String::from("-inf")
    } else {
        v.to_string()
    }
}

fn area(v: Option<f64>) -> String {
    v.map_or_else(|| AREA_UNAVAILABLE.to_string(), num)
}

pub fn write_snr_curve<W: Write>(writer: W, curve: &SnrCurve) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SNR_CURVE_HEADER)?;
    for p in &curve.points {
        w.write_record([num(p.input_snr_db), num(p.mean_db), num(p.min_db), num(p.max_db), num(p.p10_db)])?;
    }
    w.flush()?;
    Ok(())
}

fn point_record(p: &DesignPoint) -> [String; 8] {
    [
        p.label.clone(),
        num(p.throughput_gts()),
        num(p.total_power_w),
        area(p.total_area_mm2),
        num(p.output_snr_db),
        area(p.area_eff),
        num(p.energy_eff_pj),
        p.adc.name.clone(),
    ]
}

/// One line per exploration row. Infeasible rows keep their label and
/// target SNR and name the binding constraint in the ADC column.
pub fn write_dse_rows<W: Write>(writer: W, rows: &[DseRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(DESIGN_POINT_HEADER)?;
    for row in rows {
        match &row.outcome {
            Outcome::Feasible(p) => w.write_record(point_record(p))?,
            Outcome::Infeasible(b) => w.write_record([
                row.label.clone(),
                INFEASIBLE.into(),
                INFEASIBLE.into(),
                INFEASIBLE.into(),
                num(row.target_db),
                INFEASIBLE.into(),
                INFEASIBLE.into(),
                format!("{INFEASIBLE}: {b}"),
            ])?,
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_design_points<W: Write>(writer: W, points: &[DesignPoint]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(DESIGN_POINT_HEADER)?;
    for p in points {
        w.write_record(point_record(p))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_designs<W: Write>(writer: W, designs: &[TransformDesignRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(DESIGN_HEADER)?;
    for d in designs {
        w.write_record([
            d.name.clone(),
            d.kind.to_string(),
            num(d.area_mm2),
            num(d.max_rate_hz),
            num(d.power_w),
            d.input_bits.map(|b| b.to_string()).unwrap_or_default(),
            d.c_unit_ff.map(num).unwrap_or_default(),
            num(d.output_snr_capability_db),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Capacitor-array presets with the area-law mismatch estimate next to the
/// tabulated value.
pub fn write_array_presets<W: Write>(writer: W, presets: &[CapacitorArraySpec]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "c_unit_ff",
        "unit_area_um2",
        "array_area_mm2",
        "f3db_hz",
        "sigma_ratio",
        "sigma_area_law",
        "insertion_loss_db",
    ])?;
    for p in presets {
        w.write_record([
            num(p.c_unit_ff),
            num(p.unit_area_um2),
            num(p.array_area_mm2),
            num(p.f3db_hz),
            num(p.sigma_ratio),
            num(mismatch_sigma_from_cap(MISMATCH_COEFF_PERCENT, p.c_unit_ff)),
            num(p.insertion_loss_db),
        ])?;
    }
    w.flush()?;
    Ok(())
}
