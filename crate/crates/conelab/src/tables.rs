//! Special-function and formal-dimension tables.

use conelab_core::cone::{bessel_eval, gamma_tilde_scalar, BesselSeriesConfig, BESSEL_SERIES_LIMIT};
use conelab_core::plancherel::{formal_dimension_numeric, gamma_tilde_quadrature, lkt_norm_closed, lkt_norm_quadrature};
use conelab_core::{Algebra, ExponentVector, GridProfile};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, Result};
use crate::suites::gamma_cone_quadrature;

pub const TABLE_SCHEMA: &str = "conelab-table/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    #[value(name = "gamma_cone")]
    GammaCone,
    #[value(name = "gamma_tilde")]
    GammaTilde,
    #[value(name = "lkt_norm")]
    LktNorm,
    #[value(name = "formal_dim")]
    FormalDim,
    #[value(name = "bessel")]
    Bessel,
}

/// What to tabulate. `range` is the swept parameter: `s1` for `gamma_cone`,
/// `u` for `bessel`, `m` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct TableSpec {
    pub kind: TableKind,
    pub algebra: Algebra,
    pub range: Vec<f64>,
    /// Bessel weight.
    pub m: f64,
    /// Second entry of the rank-2 exponent vector of `gamma_cone`.
    pub s2: f64,
    pub profile: GridProfile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub schema: String,
    pub kind: TableKind,
    pub algebra: String,
    pub profile: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn columns(kind: TableKind, alg: Algebra) -> Vec<&'static str> {
    match kind {
        TableKind::GammaCone if alg.rank() == 1 => vec!["s1", "closed_form", "quadrature", "error_estimate", "rel_err"],
        TableKind::GammaCone => vec!["s1", "s2", "closed_form", "quadrature", "error_estimate", "rel_err"],
        TableKind::GammaTilde | TableKind::LktNorm => vec!["m", "closed_form", "quadrature", "error_estimate", "rel_err"],
        TableKind::FormalDim => vec![
            "m",
            "lkt_norm",
            "whittaker_inner",
            "gn_integral",
            "numeric_d",
            "closed_form_shape",
            "fitted_constant",
            "fitted_constant_reciprocal",
        ],
        TableKind::Bessel => vec!["m", "u", "value", "tail_estimate", "terms", "hankel"],
    }
}

fn domain(msg: String) -> CliError {
    CliError::Domain(conelab_core::ConeError::Domain(msg))
}

fn check_domain(spec: &TableSpec, x: f64) -> Result<()> {
    let alg = spec.algebra;
    let t = alg.discrete_series_threshold();
    match spec.kind {
        TableKind::GammaCone if alg.rank() == 1 && x <= 0.0 => Err(domain(format!("Γ_Ω(s) needs s > 0, got {x}"))),
        TableKind::GammaCone if alg.rank() == 2 && !(spec.s2 > 0.5 && x >= spec.s2) => {
            Err(domain(format!("Γ_Ω(s1, s2) needs s1 ≥ s2 > 1/2, got ({x}, {})", spec.s2)))
        }
        TableKind::GammaTilde | TableKind::LktNorm | TableKind::FormalDim if x <= t => {
            Err(domain(format!("m must exceed {t} on {}, got {x}", alg.name())))
        }
        TableKind::Bessel if x < 0.0 => Err(domain(format!("the Bessel table needs u ≥ 0, got {x}"))),
        TableKind::Bessel if spec.m <= 1.0 => Err(domain(format!("the Bessel table needs m > 1, got {}", spec.m))),
        _ => Ok(()),
    }
}

fn row(spec: &TableSpec, x: f64) -> Result<Vec<f64>> {
    let (alg, p) = (spec.algebra, &spec.profile);
    let rel = |q: f64, c: f64| (q - c).abs() / c.abs();
    Ok(match spec.kind {
        TableKind::GammaCone => {
            let s = if alg.rank() == 1 { ExponentVector::new(&[x])? } else { ExponentVector::new(&[x, spec.s2])? };
            let (c, q, err) = gamma_cone_quadrature(&s, alg, p)?;
            let mut r = s.entries().to_vec();
            r.extend([c, q, err, rel(q, c)]);
            r
        }
        TableKind::GammaTilde => {
            let c = gamma_tilde_scalar(&ExponentVector::uniform(alg, x), alg)?;
            let q = gamma_tilde_quadrature(x, alg, p)?;
            vec![x, c, q.value, q.error_estimate, rel(q.value, c)]
        }
        TableKind::LktNorm => {
            let c = lkt_norm_closed(x, alg)?;
            let q = lkt_norm_quadrature(x, alg, p)?;
            vec![x, c, q.value, q.error_estimate, rel(q.value, c)]
        }
        TableKind::FormalDim => {
            let r = formal_dimension_numeric(x, &alg.unit(), alg, p)?;
            vec![
                x,
                r.lkt_norm,
                r.whittaker_inner,
                r.gn_integral,
                r.numeric_d,
                r.closed_form_shape,
                r.fitted_constant,
                r.fitted_constant_reciprocal,
            ]
        }
        TableKind::Bessel => {
            let b = bessel_eval(spec.m, x, &BesselSeriesConfig::default())?;
            vec![spec.m, x, b.value, b.tail_estimate, b.terms as f64, f64::from(u8::from(x > BESSEL_SERIES_LIMIT))]
        }
    })
}

/// Builds the table; rows are sorted by the swept parameter and deduplicated.
/// Every parameter is checked before anything is computed.
pub fn emit_table(spec: &TableSpec) -> Result<Table> {
    let mut xs = spec.range.clone();
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(CliError::usage("table ranges must be finite"));
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for &x in &xs {
        check_domain(spec, x)?;
    }
    let rows = xs.iter().map(|&x| row(spec, x)).collect::<Result<Vec<_>>>()?;
    Ok(Table {
        schema: TABLE_SCHEMA.to_string(),
        kind: spec.kind,
        algebra: spec.algebra.name().to_string(),
        profile: spec.profile.name.clone(),
        columns: columns(spec.kind, spec.algebra).into_iter().map(String::from).collect(),
        rows,
    })
}

impl Table {
    /// CSV with a leading `schema` column; an empty table is a header line.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["schema".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![self.schema.clone()];
            rec.extend(r.iter().map(|x| x.to_string()));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::io("<csv buffer>", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.to_csv(),
        }
    }
}
