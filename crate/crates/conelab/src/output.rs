//! Report files: canonical JSON, a CSV projection, and the timestamp sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};

use conelab_core::calibration::{calibration_table, CalibrationEntry, CALIBRATION_VERSION};
use conelab_core::plancherel::FormalDimensionRecord;
use conelab_core::report::{Probe, REPORT_SCHEMA};
use conelab_core::VerificationReport;
use serde::{Deserialize, Serialize};

use crate::config::{Format, SuiteConfig};
use crate::error::{CliError, Result};
use crate::suites::SuiteOutput;

pub const TOOL_NAME: &str = "conelab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub version: String,
    pub entries: Vec<CalibrationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Expected-divergence probes, whatever their verdict.
    pub probes: usize,
    pub probes_detected: usize,
    pub exit_status: i32,
}

/// Everything written for one run, except the timestamp.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: String,
    pub tool: String,
    pub tool_version: String,
    pub suite: String,
    pub config: SuiteConfig,
    pub calibration: Calibration,
    pub summary: Summary,
    pub records: Vec<VerificationReport>,
    pub formal_dimension: Vec<FormalDimensionRecord>,
}

/// Exit status 0 iff every identity check passes; divergence probes are
/// reported but do not set the status.
pub fn exit_status(records: &[VerificationReport]) -> i32 {
    let failed = records.iter().any(|r| r.probe == Probe::Identity && !r.passed);
    i32::from(failed)
}

impl ReportFile {
    pub fn assemble(label: &str, config: &SuiteConfig, out: SuiteOutput) -> Self {
        let records = out.records;
        let probes = records.iter().filter(|r| r.probe == Probe::ExpectDivergence).count();
        let summary = Summary {
            total: records.len(),
            passed: records.iter().filter(|r| r.passed).count(),
            failed: records.iter().filter(|r| !r.passed).count(),
            probes,
            probes_detected: records.iter().filter(|r| r.probe == Probe::ExpectDivergence && r.passed).count(),
            exit_status: exit_status(&records),
        };
        ReportFile {
            schema: REPORT_SCHEMA.to_string(),
            tool: TOOL_NAME.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            suite: label.to_string(),
            config: config.clone(),
            calibration: Calibration { version: CALIBRATION_VERSION.to_string(), entries: calibration_table() },
            summary,
            records,
            formal_dimension: out.formal_dimension,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.records.iter().filter(|r| r.probe == Probe::Identity && !r.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per record; formal-dimension rows are only in the JSON.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(CsvRow::from(r))?;
        }
        if self.records.is_empty() {
            w.write_record(CSV_COLUMNS)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::io("<csv buffer>", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Columns of the CSV projection of a report.
pub const CSV_COLUMNS: [&str; 15] = [
    "check",
    "algebra",
    "parameters",
    "computed",
    "oracle",
    "deviation",
    "tolerance",
    "metric",
    "probe",
    "verdict",
    "passed",
    "profile",
    "evaluations",
    "error_estimate",
    "notes",
];

#[derive(Serialize)]
struct CsvRow<'a> {
    check: &'a str,
    algebra: Option<&'a str>,
    parameters: String,
    computed: Option<f64>,
    oracle: Option<f64>,
    deviation: Option<f64>,
    tolerance: f64,
    metric: conelab_core::report::Metric,
    probe: Probe,
    verdict: conelab_core::report::Verdict,
    passed: bool,
    profile: Option<&'a str>,
    evaluations: Option<u64>,
    error_estimate: Option<f64>,
    notes: String,
}

impl<'a> From<&'a VerificationReport> for CsvRow<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        CsvRow {
            check: &r.check,
            algebra: r.algebra.as_deref(),
            parameters: r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
            computed: r.computed,
            oracle: r.oracle,
            deviation: r.deviation,
            tolerance: r.tolerance,
            metric: r.metric,
            probe: r.probe,
            verdict: r.verdict,
            passed: r.passed,
            profile: r.grid.as_ref().map(|g| g.profile.as_str()),
            evaluations: r.grid.as_ref().map(|g| g.evaluations),
            error_estimate: r.grid.as_ref().and_then(|g| g.error_estimate),
            notes: r.notes.join(" | "),
        }
    }
}

/// Run metadata kept out of the report so reports stay byte-identical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub report: String,
    pub generated_unix_seconds: u64,
    pub elapsed_seconds: f64,
}

/// `report.json` → `report.json.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))
}

/// Writes the report (and its sidecar) to `out`, or the report to stdout.
pub fn emit(report: &ReportFile, format: Format, out: Option<&Path>, elapsed_seconds: f64) -> Result<()> {
    let body = report.render(format)?;
    match out {
        Some(path) => {
            write_file(path, &body)?;
            let now = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            let side = Sidecar { report: path.display().to_string(), generated_unix_seconds: now, elapsed_seconds };
            write_file(&sidecar_path(path), &(serde_json::to_string_pretty(&side)? + "\n"))
        }
        None => {
            std::io::stdout().write_all(body.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SuiteName;
    use conelab_core::report::Metric;
    use conelab_core::GridProfile;

    fn sample() -> ReportFile {
        let recs = vec![
            VerificationReport::relative("a", 1.0 + 1e-12, 1.0, 1e-10).with_param("m", 3.0).with_note("x, \"quoted\""),
            VerificationReport::max_deviation("b", Metric::Absolute, 0.5, 0.1),
            VerificationReport::divergence_probe("c", false, 0.3),
            VerificationReport::relative("nan", f64::NAN, 1.0, 1.0),
        ];
        let cfg = SuiteConfig::new(SuiteName::Jordan, GridProfile::fast());
        ReportFile::assemble("jordan", &cfg, SuiteOutput { records: recs, formal_dimension: Vec::new() })
    }

    #[test]
    fn summary_and_exit_status() {
        let r = sample();
        assert_eq!(r.summary.total, 4);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.probes, 1);
        assert_eq!(r.summary.exit_status, 1);
        assert_eq!(r.failures().count(), 2);
        assert_eq!(exit_status(&r.records[..1]), 0);
        // A missed divergence alone does not set the status.
        assert_eq!(exit_status(&r.records[2..3]), 0);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let s = r.to_json().unwrap();
        let back = ReportFile::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), s);
    }

    #[test]
    fn csv_projection() {
        let csv = sample().to_csv().unwrap();
        let mut rd = csv::Reader::from_reader(csv.as_bytes());
        assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), CSV_COLUMNS.to_vec());
        let rows: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 4);
        assert_eq!(&rows[0][2], "m=3");
        assert_eq!(&rows[2][8], "expect_divergence");
        assert_eq!(&rows[3][3], "");
        let empty = ReportFile::assemble("x", &sample().config, SuiteOutput::default()).to_csv().unwrap();
        assert_eq!(empty.lines().count(), 1);
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("out/r.json")), PathBuf::from("out/r.json.meta.json"));
    }
}
