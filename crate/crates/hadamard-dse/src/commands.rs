//! The three CLI commands as library functions.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use hadamard_core::analog::{mismatch_sigma_from_cap, nyquist_rate, ARRAY_PRESETS, MISMATCH_COEFF_PERCENT};
use hadamard_core::chain::{
    analog_capability, digital_capability, run_analog_chain, run_digital_chain, AdcModel, Executor,
};
use hadamard_core::dse::{
    evaluate_design, explore, pareto_front, AdcRecord, AreaAccounting, DesignPoint, DigitalFhtRow, EvalOptions,
    ExploreOptions, Objective, TransformDesignRecord, DIGITAL_FHT_PRESETS,
};
use serde::Serialize;

use crate::config::{preset_by_label, ChainConfig, ConfigError, RunConfig};
use crate::report;
use crate::survey::{load_adc_survey, read_adc_survey, SurveyError};

/// Survey shipped with the crate; see `data/README.md`.
pub const BUNDLED_SURVEY: &str = include_str!("../data/adc_survey_synthetic.csv");

pub const MANIFEST_FILE: &str = "manifest.json";

/// Relative tolerance of the digital preset efficiency check.
pub const TABLE_TOLERANCE: f64 = 0.005;

/// Area-law and tabulated mismatch differing by more than this fraction
/// are flagged.
pub const MISMATCH_FLAG_TOLERANCE: f64 = 0.10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Survey(#[from] SurveyError),
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
    #[error("simulation: {0}")]
    Model(#[from] hadamard_core::Error),
    #[error("{0} preset check(s) failed")]
    TableCheck(usize),
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Io { context, source }
}

/// Everything needed to repeat a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub version: String,
    pub command: String,
    pub master_seed: u64,
    pub config: RunConfig,
    /// File names relative to the output directory.
    pub outputs: Vec<String>,
    pub notes: Vec<String>,
}

impl Manifest {
    fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            version: format!("v{}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            master_seed: config.master_seed,
            config: config.clone(),
            outputs: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn write(&self, out: &Path) -> Result<(), CliError> {
        let path = out.join(MANIFEST_FILE);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text).map_err(io_err(format!("writing {}", path.display())))
    }
}

fn create_csv(out: &Path, name: &str) -> Result<BufWriter<File>, CliError> {
    let path = out.join(name);
    let f = File::create(&path).map_err(io_err(format!("creating {}", path.display())))?;
    Ok(BufWriter::new(f))
}

fn create_out_dir(out: &Path) -> Result<(), CliError> {
    fs::create_dir_all(out).map_err(io_err(format!("creating {}", out.display())))
}

/// Output directory: `--out`, else the config's `out_dir`, else `out`.
pub fn resolve_out_dir(flag: Option<&Path>, config: &RunConfig) -> PathBuf {
    flag.map(Path::to_path_buf).or_else(|| config.out_dir.clone()).unwrap_or_else(|| PathBuf::from("out"))
}

/// Simulates every configured chain and writes one `snr_<chain>.csv` each.
pub fn sweep_snr<E: Executor>(config: &RunConfig, out: &Path, exec: &E) -> Result<Manifest, CliError> {
    config.validate_sweep()?;
    let spec = config.transform_spec()?;
    create_out_dir(out)?;
    let mut manifest = Manifest::new("sweep-snr", config);

    for chain in &config.chains {
        let cfg = config.sweep_config(chain.kind());
        let curve = match chain {
            ChainConfig::Digital { input_bits, .. } => {
                let adc = input_bits.map(|b| AdcModel::ideal(b, 1.0));
                run_digital_chain(&cfg, adc.as_ref(), spec, None, exec)?
            }
            ChainConfig::Analog { array, adc_bits, .. } => {
                let adc = adc_bits.map(|b| AdcModel::ideal(b, 1.0));
                run_analog_chain(&cfg, adc.as_ref(), &array.resolve()?, spec, exec)?
            }
        };
        let name = format!("snr_{}.csv", chain.file_stem()?);
        report::write_snr_curve(create_csv(out, &name)?, &curve)?;
        manifest.outputs.push(name);
    }
    manifest.outputs.push(MANIFEST_FILE.into());
    manifest.write(out)?;
    Ok(manifest)
}

/// Transform designs with simulated output-SNR capabilities.
pub fn build_designs<E: Executor>(config: &RunConfig, exec: &E) -> Result<Vec<TransformDesignRecord>, CliError> {
    config.validate_dse()?;
    let spec = config.transform_spec()?;
    let d = &config.dse;
    let mut designs = Vec::new();
    for label in &d.analog_presets {
        let array = preset_by_label(label)?;
        let cap = analog_capability(
            &array,
            spec,
            d.analog_capability_mismatch_trials,
            d.analog_capability_noise_trials,
            config.master_seed,
            exec,
        )?;
        designs.push(TransformDesignRecord::analog(&array, cap));
    }
    for &bits in &d.digital_bits {
        let row = DigitalFhtRow::from_bits(bits).expect("validated");
        let cap = digital_capability(bits, spec, d.digital_capability_trials, config.master_seed, exec)?;
        designs.push(TransformDesignRecord::digital(&row, cap));
    }
    Ok(designs)
}

pub fn load_survey(config: &RunConfig) -> Result<Vec<AdcRecord>, CliError> {
    Ok(match &config.dse.survey {
        Some(path) => load_adc_survey(path)?,
        None => read_adc_survey(BUNDLED_SURVEY.as_bytes())?,
    })
}

pub fn explore_options(config: &RunConfig) -> ExploreOptions {
    let d = &config.dse;
    ExploreOptions {
        targets_db: d.targets_db.clone(),
        eval: EvalOptions {
            n_channels: d.n_channels,
            area: if d.exclude_adc_area { AreaAccounting::ExcludeAdc } else { AreaAccounting::IncludeAdc },
        },
        guard_margin_db: d.guard_margin_db,
    }
}

/// Explores every design against the survey and writes `designs.csv`,
/// `design_points.csv` and `pareto.csv`.
pub fn dse<E: Executor>(config: &RunConfig, out: &Path, exec: &E) -> Result<Manifest, CliError> {
    config.validate_dse()?;
    let survey = load_survey(config)?;
    let designs = build_designs(config, exec)?;
    let rows = explore(&designs, &survey, &explore_options(config))?;
    let feasible: Vec<DesignPoint> = rows.iter().filter_map(|r| r.point().cloned()).collect();
    let front = pareto_front(&feasible, &Objective::ALL);

    create_out_dir(out)?;
    let mut manifest = Manifest::new("dse", config);
    report::write_designs(create_csv(out, "designs.csv")?, &designs)?;
    report::write_dse_rows(create_csv(out, "design_points.csv")?, &rows)?;
    report::write_design_points(create_csv(out, "pareto.csv")?, &front)?;
    manifest.outputs =
        vec!["designs.csv".into(), "design_points.csv".into(), "pareto.csv".into(), MANIFEST_FILE.into()];
    manifest.notes = vec![
        String::from("digital FHT power is taken as the power at its maximum clock frequency"),
        String::from("ADC power is scaled linearly to the operating rate"),
        String::from("the passive array draws no power; driver power belongs to the signal source"),
        format!(
            "ADC survey: {}",
            config.dse.survey.as_ref().map_or_else(
                || String::from("bundled synthetic survey (not measured data)"),
                |p| p.display().to_string()
            )
        ),
        format!(
            "{} of {} design/target rows feasible; {} on the Pareto front",
            feasible.len(),
            rows.len(),
            front.len()
        ),
    ];
    manifest.write(out)?;
    Ok(manifest)
}

/// One recomputed digital preset.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCheck {
    pub row: DigitalFhtRow,
    pub area_eff: f64,
    pub energy_eff_pj: f64,
}

impl TableCheck {
    pub fn area_deviation(&self) -> f64 {
        self.area_eff / self.row.published_area_eff - 1.0
    }

    pub fn energy_deviation(&self) -> f64 {
        self.energy_eff_pj / self.row.published_energy_eff_pj - 1.0
    }

    pub fn passes(&self) -> bool {
        self.area_deviation().abs() <= TABLE_TOLERANCE && self.energy_deviation().abs() <= TABLE_TOLERANCE
    }
}

/// Recomputes area and energy efficiency of every digital preset with a
/// cost-free ADC.
pub fn check_digital_presets() -> Vec<TableCheck> {
    DIGITAL_FHT_PRESETS
        .iter()
        .map(|row| {
            let p = evaluate_design(
                &TransformDesignRecord::digital(row, 0.0),
                &AdcRecord::zero_cost(),
                &EvalOptions::default(),
            );
            TableCheck {
                row: *row,
                area_eff: p.area_eff.expect("zero-cost ADC has area"),
                energy_eff_pj: p.energy_eff_pj,
            }
        })
        .collect()
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Prints the preset checks; writes `array_presets.csv` when `out` is
/// given. Fails only if a digital preset is off by more than 0.5%.
pub fn validate_tables<W: Write>(w: &mut W, out: Option<&Path>) -> Result<(), CliError> {
    let ioe = io_err("writing report");
    let checks = check_digital_presets();
    let mut report = String::new();
    report.push_str(&format!(
        "digital FHT presets: recomputed efficiency vs. published, tolerance {}%\n",
        TABLE_TOLERANCE * 100.0
    ));
    for c in &checks {
        report.push_str(&format!(
            "  {:>2}b  area_eff {:.4} mm2/(GT/s) vs {} ({:+.2}%) {}  energy_eff {:.1} pJ vs {} ({:+.2}%) {}\n",
            c.row.input_bits,
            c.area_eff,
            c.row.published_area_eff,
            c.area_deviation() * 100.0,
            pass(c.area_deviation().abs() <= TABLE_TOLERANCE),
            c.energy_eff_pj,
            c.row.published_energy_eff_pj,
            c.energy_deviation() * 100.0,
            pass(c.energy_deviation().abs() <= TABLE_TOLERANCE),
        ));
    }

    report.push_str(&format!(
        "capacitor arrays: tabulated mismatch vs. area law A/sqrt(C), A = {MISMATCH_COEFF_PERCENT}% sqrt(fF)\n"
    ));
    for p in &ARRAY_PRESETS {
        let law = mismatch_sigma_from_cap(MISMATCH_COEFF_PERCENT, p.c_unit_ff);
        let dev = p.sigma_ratio / law - 1.0;
        let verdict =
            if dev.abs() <= MISMATCH_FLAG_TOLERANCE { "consistent" } else { "DEVIATION (tabulated value used)" };
        report.push_str(&format!(
            "  {:>7}  tabulated {:.4}  area law {:.4}  ({:+.0}%) {}\n",
            p.label(),
            p.sigma_ratio,
            law,
            dev * 100.0,
            verdict
        ));
    }

    report.push_str("capacitor array presets\n");
    report.push_str("  c_unit   unit_area  array_area  f3db      nyquist   sigma   loss\n");
    for p in &ARRAY_PRESETS {
        report.push_str(&format!(
            "  {:>6}  {:>6.2} um2  {:.3} mm2  {:.2} GHz  {:.2} GHz  {:.3}  {} dB\n",
            p.label(),
            p.unit_area_um2,
            p.array_area_mm2,
            p.f3db_hz * 1e-9,
            nyquist_rate(p) * 1e-9,
            p.sigma_ratio,
            p.insertion_loss_db
        ));
    }
    w.write_all(report.as_bytes()).map_err(ioe)?;

    if let Some(out) = out {
        create_out_dir(out)?;
        report::write_array_presets(create_csv(out, "array_presets.csv")?, &ARRAY_PRESETS)?;
    }

    let failed = checks.iter().filter(|c| !c.passes()).count();
    if failed > 0 {
        return Err(CliError::TableCheck(failed));
    }
    Ok(())
}
