//! CSV outputs and the run manifest embedded in their leading comment lines.
//!
//! Every CSV starts with `# key=value` lines describing the run, then a
//! header row. Heterogeneity and clustering are written with their natural
//! sign.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{EvalRecord, Summary, SweepReport};
use crate::parfit::FitConfig;
use crate::params::ModelKind;
use crate::rng::Seed;

pub const TOOL_NAME: &str = "parfit";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub model: ModelKind,
    pub config: FitConfig,
    pub seed: Seed,
    pub samples: usize,
    pub grid: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        model: ModelKind,
        config: &FitConfig,
        seed: Seed,
        samples: usize,
        grid: impl Into<String>,
    ) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Self {
            tool_version: format!("{TOOL_NAME} {TOOL_VERSION}"),
            command: command.to_string(),
            model,
            config: config.clone(),
            seed,
            samples,
            grid: grid.into(),
            timestamp,
        }
    }

    pub fn comment_lines(&self) -> Vec<String> {
        vec![
            format!("tool={}", self.tool_version),
            format!("command={}", self.command),
            format!("model={}", self.model),
            format!("seed={}", self.seed),
            format!("samples={}", self.samples),
            format!("grid={}", self.grid),
            format!("config={}", serde_json::to_string(&self.config).expect("config serializes")),
            format!("timestamp={}", self.timestamp),
        ]
    }

    pub fn write_comments<W: Write>(&self, out: &mut W) -> Result<()> {
        for line in self.comment_lines() {
            writeln!(out, "# {line}")?;
        }
        Ok(())
    }

    /// Recover a manifest from the `#` lines at the top of a CSV file.
    pub fn from_comments(text: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            if let Some((key, value)) = line.trim_start_matches('#').trim().split_once('=') {
                fields.insert(key.to_string(), value.to_string());
            }
        }
        let get = |key: &str| {
            fields
                .get(key)
                .cloned()
                .ok_or_else(|| Error::Parse { line: 0, message: format!("manifest lacks `{key}`") })
        };
        let bad = |key: &str| Error::Parse { line: 0, message: format!("bad manifest `{key}`") };
        Ok(Self {
            tool_version: get("tool")?,
            command: get("command")?,
            model: get("model")?.parse()?,
            config: serde_json::from_str(&get("config")?).map_err(|_| bad("config"))?,
            seed: Seed(get("seed")?.parse().map_err(|_| bad("seed"))?),
            samples: get("samples")?.parse().map_err(|_| bad("samples"))?,
            grid: get("grid")?,
            timestamp: get("timestamp")?.parse().map_err(|_| bad("timestamp"))?,
        })
    }
}

fn csv_error(err: csv::Error) -> Error {
    Error::Io(err.to_string())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn record_header(kind: ModelKind) -> Vec<String> {
    let mut h: Vec<String> = ["index", "model", "status", "error"].map(String::from).to_vec();
    let params = kind.parameter_names();
    let features = kind.feature_names();
    h.extend(params.iter().map(|p| format!("true_{p}")));
    h.extend(features.iter().map(|f| format!("target_{f}")));
    h.extend(params.iter().map(|p| format!("fitted_{p}")));
    h.extend(features.iter().map(|f| format!("achieved_{f}")));
    h.extend(features.iter().map(|f| format!("abs_err_{f}")));
    h.extend(["iterations", "averaging_start", "terminated_by"].map(String::from));
    h
}

pub fn record_row(record: &EvalRecord) -> Vec<String> {
    let kind = record.model_kind;
    let dim = kind.dimension();
    let mut row = vec![
        record.index.to_string(),
        kind.to_string(),
        if record.outcome().is_some() { "ok" } else { "error" }.to_string(),
        record.error().unwrap_or_default().to_string(),
    ];
    match &record.true_params {
        Some(p) => row.extend(p.values().iter().map(f64::to_string)),
        None => row.extend(std::iter::repeat_n(String::new(), dim)),
    }
    match record.outcome() {
        Some(o) => {
            row.extend(o.target.natural().iter().map(f64::to_string));
            row.extend(o.fitted.values().iter().map(f64::to_string));
            row.extend(o.achieved.natural().iter().map(f64::to_string));
            row.extend(o.abs_errors.iter().map(f64::to_string));
            row.push(o.iterations.to_string());
            row.push(o.averaging_start.to_string());
            row.push(o.terminated_by.to_string());
        }
        None => row.extend(std::iter::repeat_n(String::new(), 4 * dim + 3)),
    }
    row
}

/// Streams evaluation records as CSV rows, flushing after each row so an
/// interrupted run leaves a well-formed prefix.
pub struct RecordWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut out: W, manifest: &RunManifest) -> Result<Self> {
        manifest.write_comments(&mut out)?;
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(record_header(manifest.model)).map_err(csv_error)?;
        inner.flush()?;
        Ok(Self { inner })
    }

    pub fn write(&mut self, record: &EvalRecord) -> Result<()> {
        self.inner.write_record(record_row(record)).map_err(csv_error)?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> Result<W> {
        self.inner.into_inner().map_err(|e| Error::Io(e.to_string()))
    }
}

pub fn write_summary<W: Write>(mut out: W, manifest: &RunManifest, summary: &Summary) -> Result<()> {
    manifest.write_comments(&mut out)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["model", "ok_records", "failed_records"].map(String::from).to_vec();
    let mut row = vec![
        summary.model_kind.to_string(),
        summary.ok_records.to_string(),
        summary.failed_records.to_string(),
    ];
    for f in &summary.features {
        header.extend(["pearson", "mae", "p90_abs_err"].map(|s| format!("{}_{s}", f.name)));
        row.extend([f.pearson, f.mae, f.p90_abs_error].map(|v| v.to_string()));
    }
    header.push("mean_iterations".into());
    row.push(summary.mean_iterations.to_string());
    w.write_record(header).map_err(csv_error)?;
    w.write_record(row).map_err(csv_error)?;
    w.flush()?;
    Ok(())
}

pub fn write_sweep<W: Write>(mut out: W, manifest: &RunManifest, report: &SweepReport) -> Result<()> {
    manifest.write_comments(&mut out)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![report.variable.to_string()];
    header.extend(report.model_kind.feature_names().iter().map(|f| format!("mae_{f}")));
    header.extend(["mean_iterations", "ok_records", "failed_records"].map(String::from));
    w.write_record(header).map_err(csv_error)?;
    for row in &report.rows {
        let mut fields = vec![row.value.to_string()];
        fields.extend(row.mae.iter().map(f64::to_string));
        fields.push(row.mean_iterations.to_string());
        fields.push(row.ok_records.to_string());
        fields.push(row.failed_records.to_string());
        w.write_record(fields).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Header of the per-network fit table: actual and measured value of each
/// feature followed by the fitted parameter.
pub fn fit_header(kind: ModelKind) -> Vec<String> {
    let mut h = vec!["graph".to_string()];
    for (f, p) in kind.feature_names().iter().zip(kind.parameter_names()) {
        h.extend([format!("actual_{f}"), format!("measured_{f}"), format!("fitted_{p}")]);
    }
    h.extend(["iterations", "averaging_start", "terminated_by"].map(String::from));
    h
}

pub fn fit_row(name: &str, record: &EvalRecord) -> Result<Vec<String>> {
    let o = record
        .outcome()
        .ok_or_else(|| Error::InvalidParameter(record.error().unwrap_or("failed").to_string()))?;
    let mut row = vec![name.to_string()];
    let actual = o.target.natural();
    let measured = o.achieved.natural();
    for i in 0..record.model_kind.dimension() {
        row.extend([
            fmt_opt(actual.get(i).copied()),
            fmt_opt(measured.get(i).copied()),
            fmt_opt(o.fitted.values().get(i).copied()),
        ]);
    }
    row.push(o.iterations.to_string());
    row.push(o.averaging_start.to_string());
    row.push(o.terminated_by.to_string());
    Ok(row)
}

pub fn write_fit<W: Write>(
    mut out: W,
    manifest: &RunManifest,
    name: &str,
    record: &EvalRecord,
) -> Result<()> {
    manifest.write_comments(&mut out)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(fit_header(record.model_kind)).map_err(csv_error)?;
    w.write_record(fit_row(name, record)?).map_err(csv_error)?;
    w.flush()?;
    Ok(())
}
