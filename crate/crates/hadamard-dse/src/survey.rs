//! ADC survey CSV.
//!
//! One converter per row under the header
//! `name,architecture,technology_nm,sndr_db,nyquist_rate_hz,power_w,area_mm2`.
//! `area_mm2` may be left empty when the source does not report it.

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use hadamard_core::dse::AdcRecord;

pub const SURVEY_HEADER: [&str; 7] =
    ["name", "architecture", "technology_nm", "sndr_db", "nyquist_rate_hz", "power_w", "area_mm2"];

/// A data row that failed to parse or validate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    /// 1-based line in the file, counting the header.
    pub line: u64,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SurveyError {
    #[error("cannot read survey: {0}")]
    Io(#[from] std::io::Error),
    #[error("survey schema: {0}")]
    Schema(String),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("{} invalid survey row(s): {}", .0.len(), join_rows(.0))]
    Rows(Vec<RowError>),
}

fn join_rows(rows: &[RowError]) -> String {
    rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
}

/// Reads a survey from `path`.
pub fn load_adc_survey(path: impl AsRef<Path>) -> Result<Vec<AdcRecord>, SurveyError> {
    read_adc_survey(File::open(path)?)
}

/// Reads a survey from any reader. Every bad row is collected before
/// failing, so one pass reports all of them.
pub fn read_adc_survey<R: Read>(reader: R) -> Result<Vec<AdcRecord>, SurveyError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.is_empty() {
        return Ok(Vec::new());
    }
    check_header(&header)?;

    let mut records = Vec::new();
    let mut errors = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        match parse_row(&row) {
            Ok(r) => records.push(r),
            Err(message) => errors.push(RowError { line, message }),
        }
    }
    if errors.is_empty() {
        Ok(records)
    } else {
        Err(SurveyError::Rows(errors))
    }
}

fn check_header(header: &csv::StringRecord) -> Result<(), SurveyError> {
    let got: Vec<&str> = header.iter().collect();
    if got == SURVEY_HEADER {
        return Ok(());
    }
    let missing: Vec<&str> = SURVEY_HEADER.iter().copied().filter(|c| !got.contains(c)).collect();
    let unknown: Vec<&str> = got.iter().copied().filter(|c| !SURVEY_HEADER.contains(c)).collect();
    let mut msg = Vec::new();
    if !missing.is_empty() {
        msg.push(format!("missing column(s) {}", missing.join(", ")));
    }
    if !unknown.is_empty() {
        msg.push(format!("unexpected column(s) {}", unknown.join(", ")));
    }
    if msg.is_empty() {
        msg.push(String::from("columns out of order"));
    }
    Err(SurveyError::Schema(format!("{}; expected header `{}`", msg.join("; "), SURVEY_HEADER.join(","))))
}

fn parse_row(row: &csv::StringRecord) -> Result<AdcRecord, String> {
    if row.len() != SURVEY_HEADER.len() {
        return Err(format!("expected {} fields, found {}", SURVEY_HEADER.len(), row.len()));
    }
    let num = |i: usize| -> Result<f64, String> {
        row[i].parse::<f64>().map_err(|_| format!("{} is not a number: {:?}", SURVEY_HEADER[i], &row[i]))
    };
    let name = row[0].to_string();
    if name.is_empty() {
        return Err(String::from("name is empty"));
    }
    let technology_nm =
        row[2].parse::<u32>().map_err(|_| format!("technology_nm is not a non-negative integer: {:?}", &row[2]))?;
    let area_mm2 = if row[6].is_empty() { None } else { Some(num(6)?) };
    let record = AdcRecord {
        name,
        architecture: row[1].to_string(),
        technology_nm,
        sndr_db: num(3)?,
        nyquist_rate_hz: num(4)?,
        power_w: num(5)?,
        area_mm2,
    };
    record.validate().map_err(|e| format!("{} ({})", e, record.name))?;
    Ok(record)
}

/// Writes records under the survey header; floats use the shortest
/// representation that reads back exactly.
pub fn write_adc_survey<W: Write>(writer: W, records: &[AdcRecord]) -> Result<(), SurveyError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SURVEY_HEADER)?;
    for r in records {
        w.write_record([
            r.name.clone(),
            r.architecture.clone(),
            r.technology_nm.to_string(),
            r.sndr_db.to_string(),
            r.nyquist_rate_hz.to_string(),
            r.power_w.to_string(),
            r.area_mm2.map(|a| a.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
