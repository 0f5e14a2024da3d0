//! Trace CSV, sidecar metadata, config hashing and JSON output.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{ensure, Context, Result};
use recurflow_core::{Precision, RealPolynomial, RecurrenceTrace};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const TRACE_FILE: &str = "trace.csv";
pub const TRACE_META_FILE: &str = "trace.meta.json";
pub const TRACE_HEADER: [&str; 5] = ["p", "log_c", "a_p", "xi_p", "delta_p"];

/// 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// SHA-256 over everything that determines a simulated trace.
pub fn config_hash(cfg: &RunConfig) -> String {
    #[derive(Serialize)]
    struct Key {
        format: u32,
        f_coeffs: Vec<u64>,
        horizon: usize,
        precision: String,
        renorm_threshold: u32,
    }
    let key = Key {
        format: 1,
        f_coeffs: cfg.f().coeffs().iter().map(|c| c.to_bits()).collect(),
        horizon: cfg.horizon,
        precision: cfg.precision.to_string(),
        renorm_threshold: cfg.renorm_threshold,
    };
    let bytes = serde_json::to_vec(&key).expect("hash key serializes");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub config_hash: String,
    pub f_coeffs: Vec<f64>,
    pub horizon: usize,
    pub precision: String,
    pub renorm_threshold: u32,
    pub scale_offset: f64,
    pub warnings: Vec<String>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn write_trace_csv(path: &Path, trace: &RecurrenceTrace) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(TRACE_HEADER)?;
    for p in 1..=trace.horizon() {
        let delta = trace.delta.get(p).copied().unwrap_or(f64::NAN);
        w.write_record([p.to_string(), fmt17(trace.log_c[p]), fmt17(trace.a[p]), fmt17(trace.xi[p]), fmt17(delta)])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns of a trace CSV, indexed by `p` with a NaN placeholder at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceColumns {
    pub log_c: Vec<f64>,
    pub a: Vec<f64>,
    pub xi: Vec<f64>,
    pub delta: Vec<f64>,
}

pub fn read_trace_csv(path: &Path) -> Result<TraceColumns> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    ensure!(header == TRACE_HEADER, "{} has header {header:?}, expected {TRACE_HEADER:?}", path.display());
    let mut cols = TraceColumns { log_c: vec![f64::NAN], a: vec![f64::NAN], xi: vec![f64::NAN], delta: vec![f64::NAN] };
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let p: usize = rec[0].parse().with_context(|| format!("row {}: bad p", i + 1))?;
        ensure!(p == i + 1, "row {} has p = {p}", i + 1);
        let num = |k: usize| -> Result<f64> {
            rec[k].parse::<f64>().with_context(|| format!("row {}: bad {}", i + 1, TRACE_HEADER[k]))
        };
        cols.log_c.push(num(1)?);
        cols.a.push(num(2)?);
        cols.xi.push(num(3)?);
        cols.delta.push(num(4)?);
    }
    Ok(cols)
}

pub fn write_trace(dir: &Path, trace: &RecurrenceTrace, cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_trace_csv(&dir.join(TRACE_FILE), trace)?;
    let meta = TraceMeta {
        config_hash: config_hash(cfg),
        f_coeffs: cfg.f().coeffs().to_vec(),
        horizon: cfg.horizon,
        precision: cfg.precision.to_string(),
        renorm_threshold: cfg.renorm_threshold,
        scale_offset: trace.scale_offset,
        warnings: trace.warnings.clone(),
    };
    write_json(&dir.join(TRACE_META_FILE), &meta)
}

/// A cached trace in `dir` whose metadata hash matches `cfg`, if any.
pub fn load_cached_trace(dir: &Path, cfg: &RunConfig) -> Result<Option<RecurrenceTrace>> {
    let (csv_path, meta_path) = (dir.join(TRACE_FILE), dir.join(TRACE_META_FILE));
    if !csv_path.exists() || !meta_path.exists() {
        return Ok(None);
    }
    let meta: TraceMeta = match fs::read_to_string(&meta_path).ok().and_then(|t| serde_json::from_str(&t).ok()) {
        Some(m) => m,
        None => return Ok(None),
    };
    if meta.config_hash != config_hash(cfg) {
        return Ok(None);
    }
    let cols = read_trace_csv(&csv_path)?;
    ensure!(cols.log_c.len() == cfg.horizon + 1, "cached trace has {} rows, expected {}", cols.log_c.len() - 1, cfg.horizon);
    let precision: Precision = meta.precision.parse()?;
    let mut trace = RecurrenceTrace::from_columns(&RealPolynomial::new(meta.f_coeffs), precision, &cols.log_c, &cols.xi);
    trace.scale_offset = meta.scale_offset;
    trace.warnings = meta.warnings;
    Ok(Some(trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_roundtrip() {
        for &x in &[0.1, 1.0 / 3.0, -2.5e-300, 1.7976931348623157e308, 5e-324] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt17(f64::NAN), "NaN");
        assert!(fmt17(f64::NAN).parse::<f64>().unwrap().is_nan());
        assert_eq!(fmt17(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn hash_tracks_trace_inputs_only() {
        let a = RunConfig::default();
        let b = RunConfig { seed: 99, samples: 3, ..RunConfig::default() };
        assert_eq!(config_hash(&a), config_hash(&b));
        let c = RunConfig { horizon: 2048, ..RunConfig::default() };
        assert_ne!(config_hash(&a), config_hash(&c));
        let d = RunConfig { f_coeffs: vec![4.0, -10.0, 6.0, 0.0], ..RunConfig::default() };
        assert_eq!(config_hash(&a), config_hash(&d));
    }
}
