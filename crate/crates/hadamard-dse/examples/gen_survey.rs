//! Generates the bundled synthetic ADC survey.
//!
//! The records are not measurements. They follow published trend lines:
//! a Schreier figure-of-merit envelope that rolls off with bandwidth, a
//! Walden energy-per-step floor, a jitter-limited SNDR ceiling and an area
//! that grows with rate and resolution. Each design sits a random distance
//! below the envelope.
//!
//! ```text
//! cargo run -p hadamard-dse --example gen_survey > crates/hadamard-dse/data/adc_survey_synthetic.csv
//! ```

use std::f64::consts::PI;

use hadamard_core::dse::AdcRecord;
use hadamard_core::rng::rng_from_seed;
use hadamard_dse::survey::write_adc_survey;
use rand_distr::{Distribution, Uniform};

const SEED: u64 = 20_240_601;
const RATES_GSPS: [f64; 10] = [0.1, 0.25, 0.5, 1.0, 1.6, 2.5, 4.0, 6.4, 10.0, 16.0];
const JITTER_S: f64 = 80e-15;

/// Best Schreier FoM (dB) at bandwidth `bw` (Hz).
fn schreier_envelope(bw: f64) -> f64 {
    178.0 - 10.0 * (1.0 + bw / 100e6).log10()
}

/// Best Walden FoM (J per conversion step) at rate `fs`.
fn walden_floor(fs: f64) -> f64 {
    2e-15 * (1.0 + fs / 2e9)
}

fn jitter_limit_db(fs: f64) -> f64 {
    -20.0 * (2.0 * PI * (fs / 2.0) * JITTER_S).log10()
}

fn architecture(fs: f64, sndr: f64) -> &'static str {
    match (fs, sndr) {
        (f, s) if f >= 4e9 && s < 38.0 => "Flash",
        (f, _) if f >= 4e9 => "TI-SAR",
        (f, s) if f >= 5e8 && s < 55.0 => "TI-SAR",
        (f, _) if f >= 5e8 => "Pipelined-SAR",
        (_, s) if s >= 62.0 => "Pipeline",
        _ => "SAR",
    }
}

fn main() {
    let mut rng = rng_from_seed(SEED);
    let unit = Uniform::new(0.0, 1.0).unwrap();
    let nodes = [65u32, 40, 28, 22, 16, 7];
    let mut records = Vec::new();

    for &gsps in &RATES_GSPS {
        for tier in 0..13 {
            let nominal_sndr = 26.0 + 4.0 * tier as f64;
            let fs = gsps * 1e9 * (0.9 + 0.4 * unit.sample(&mut rng));
            let sndr = nominal_sndr + 3.0 * (unit.sample(&mut rng) - 0.5);
            if sndr > jitter_limit_db(fs) {
                continue;
            }
            let enob = (sndr - 1.76) / 6.02;
            let gap_db = 2.0 + 10.0 * unit.sample(&mut rng);
            let schreier_w = fs / 2.0 * 10f64.powf((sndr - schreier_envelope(fs / 2.0) + gap_db) / 10.0);
            let walden_w = fs * walden_floor(fs) * 2f64.powf(enob);
            let power = schreier_w.max(walden_w);

            let area =
                0.0015 * (fs / 1e9).powf(0.6) * 2f64.powf((sndr - 26.0) / 8.0) * (0.6 + 1.2 * unit.sample(&mut rng));
            let reported = unit.sample(&mut rng) >= 0.08;
            let node_shift = (fs.log10() - 8.0).clamp(0.0, 2.2) / 2.2 * 4.0;
            let node = nodes[((node_shift + 2.0 * unit.sample(&mut rng)) as usize).min(nodes.len() - 1)];

            records.push(AdcRecord {
                name: format!("syn-{:03}", records.len()),
                architecture: architecture(fs, sndr).into(),
                technology_nm: node,
                sndr_db: (sndr * 100.0).round() / 100.0,
                nyquist_rate_hz: (fs / 1e6).round() * 1e6,
                power_w: format!("{power:.4e}").parse().unwrap(),
                area_mm2: reported.then(|| format!("{area:.4e}").parse().unwrap()),
            });
        }
    }
    write_adc_survey(std::io::stdout().lock(), &records).unwrap();
}
