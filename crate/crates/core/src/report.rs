//! Structured records of identity checks.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::quadrature::{GridProfile, IntegralResult, QuadValue};

/// Schema tag written into every report file.
pub const REPORT_SCHEMA: &str = "conelab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `|computed − oracle|`.
    Absolute,
    /// `|computed − oracle| / |oracle|`.
    Relative,
    /// `(max − min) / |mean|` over a family of values.
    RelativeSpread,
    /// Largest violation of an ordering; zero when monotone.
    Monotonicity,
    /// Divergence probe; `deviation` is the shell ratio.
    ShellRatio,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Probe {
    /// Passes when the deviation is within tolerance.
    Identity,
    /// Passes when divergence is detected.
    ExpectDivergence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    DivergenceDetected,
    UnexpectedDivergence,
    MissedDivergence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub profile: String,
    pub evaluations: u64,
    pub error_estimate: Option<f64>,
}

/// One identity check: computed value, oracle value, tolerance and verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub algebra: Option<String>,
    pub parameters: BTreeMap<String, f64>,
    pub computed: Option<f64>,
    pub oracle: Option<f64>,
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub metric: Metric,
    pub probe: Probe,
    pub verdict: Verdict,
    pub passed: bool,
    pub grid: Option<GridMeta>,
    pub notes: Vec<String>,
}

/// Non-finite numbers are stored as `None` so reports stay valid JSON.
pub fn finite(x: f64) -> Option<f64> {
    if x.is_finite() {
        Some(x)
    } else {
        None
    }
}

impl VerificationReport {
    fn base(check: &str, metric: Metric, probe: Probe, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            algebra: None,
            parameters: BTreeMap::new(),
            computed: None,
            oracle: None,
            deviation: None,
            tolerance,
            metric,
            probe,
            verdict: Verdict::Fail,
            passed: false,
            grid: None,
            notes: Vec::new(),
        }
    }

    /// Generic identity check from a precomputed deviation.
    pub fn from_deviation(check: &str, metric: Metric, computed: f64, oracle: f64, deviation: f64, tolerance: f64) -> Self {
        let mut r = Self::base(check, metric, Probe::Identity, tolerance);
        r.computed = finite(computed);
        r.oracle = finite(oracle);
        r.deviation = finite(deviation);
        r.passed = deviation.is_finite() && deviation <= tolerance;
        r.verdict = if r.passed { Verdict::Pass } else { Verdict::Fail };
        r
    }

    pub fn relative(check: &str, computed: f64, oracle: f64, tolerance: f64) -> Self {
        let dev = (computed - oracle).abs() / oracle.abs();
        Self::from_deviation(check, Metric::Relative, computed, oracle, dev, tolerance)
    }

    pub fn absolute(check: &str, computed: f64, oracle: f64, tolerance: f64) -> Self {
        Self::from_deviation(check, Metric::Absolute, computed, oracle, (computed - oracle).abs(), tolerance)
    }

    /// Maximal deviation over a sample family, against an oracle of zero.
    pub fn max_deviation(check: &str, metric: Metric, worst: f64, tolerance: f64) -> Self {
        Self::from_deviation(check, metric, worst, 0.0, worst, tolerance)
    }

    /// Relative spread `(max − min)/|mean|` of values expected to coincide.
    pub fn spread(check: &str, values: &[f64], tolerance: f64) -> Self {
        let (lo, hi, mean) = spread_stats(values);
        let dev = (hi - lo) / mean.abs();
        Self::from_deviation(check, Metric::RelativeSpread, mean, mean, dev, tolerance)
    }

    /// A probe that is expected to diverge; passes when divergence was seen.
    pub fn divergence_probe(check: &str, detected: bool, ratio: f64) -> Self {
        let mut r = Self::base(check, Metric::ShellRatio, Probe::ExpectDivergence, 1.0);
        r.deviation = finite(ratio);
        r.passed = detected;
        r.verdict = if detected { Verdict::DivergenceDetected } else { Verdict::MissedDivergence };
        r
    }

    /// An identity check whose computation diverged.
    pub fn diverged(check: &str, ratio: f64, tolerance: f64) -> Self {
        let mut r = Self::base(check, Metric::ShellRatio, Probe::Identity, tolerance);
        r.deviation = finite(ratio);
        r.verdict = Verdict::UnexpectedDivergence;
        r
    }

    /// A failed check carrying an error message.
    pub fn errored(check: &str, message: &str) -> Self {
        let mut r = Self::base(check, Metric::Absolute, Probe::Identity, 0.0);
        r.notes.push(message.to_string());
        r
    }

    pub fn with_algebra(mut self, name: &str) -> Self {
        self.algebra = Some(name.to_string());
        self
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }

    pub fn with_grid<T: QuadValue>(mut self, profile: &GridProfile, result: &IntegralResult<T>) -> Self {
        self.grid = Some(GridMeta {
            profile: profile.name.clone(),
            evaluations: result.evaluations as u64,
            error_estimate: finite(result.error_estimate),
        });
        self
    }

    pub fn with_profile(mut self, profile: &GridProfile) -> Self {
        if self.grid.is_none() {
            self.grid = Some(GridMeta { profile: profile.name.clone(), evaluations: 0, error_estimate: None });
        }
        self
    }
}

/// `(min, max, mean)` of a nonempty slice.
pub fn spread_stats(values: &[f64]) -> (f64, f64, f64) {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (lo, hi, mean)
}
