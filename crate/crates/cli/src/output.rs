//! Report and partition writers. CSV reports put one community per row
//! with the fixed column order n_S, m_S, c_S, conductance, expansion,
//! cut_ratio, normalized_cut, avg_odf, internal_density, phi_eq1, followed
//! by mean/max/sum aggregate rows (and truth rows when a reference
//! partition is given). Undefined cells are written as `undefined` in CSV
//! and `null` in JSON; aggregates skip them.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use terminalcut_core::bench_data::IdMap;
use terminalcut_core::metrics::{MetricSuite, QualityReport};
use terminalcut_core::Partition;

fn cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => "undefined".to_string(),
    }
}

fn metric_cells(m: &MetricSuite, phi: Option<f64>) -> String {
    let mut out = String::new();
    for v in m.values() {
        write!(out, ",{}", cell(v)).unwrap();
    }
    write!(out, ",{}", cell(phi)).unwrap();
    out
}

fn report_rows(prefix: &str, report: &QualityReport, out: &mut String) {
    for row in &report.rows {
        write!(out, "{prefix}{}", row.community).unwrap();
        write!(out, ",{},{},{}", row.stats.n_s, row.stats.m_s, row.stats.c_s).unwrap();
        out.push_str(&metric_cells(&row.metrics, row.phi_eq1));
        out.push('\n');
    }
    let agg = &report.aggregate;
    let n = report.rows.len() as f64;
    let stat_sums = report.rows.iter().fold((0.0, 0.0, 0.0), |acc, r| {
        (
            acc.0 + r.stats.n_s as f64,
            acc.1 + r.stats.m_s,
            acc.2 + r.stats.c_s,
        )
    });
    let stat_max = report.rows.iter().fold((0.0f64, 0.0f64, 0.0f64), |acc, r| {
        (
            acc.0.max(r.stats.n_s as f64),
            acc.1.max(r.stats.m_s),
            acc.2.max(r.stats.c_s),
        )
    });
    writeln!(
        out,
        "{prefix}mean,{},{},{}{}",
        stat_sums.0 / n,
        stat_sums.1 / n,
        stat_sums.2 / n,
        metric_cells(&agg.mean, agg.phi_eq1_mean)
    )
    .unwrap();
    writeln!(
        out,
        "{prefix}max,{},{},{}{}",
        stat_max.0,
        stat_max.1,
        stat_max.2,
        metric_cells(&agg.max, agg.phi_eq1_max)
    )
    .unwrap();
    writeln!(
        out,
        "{prefix}sum,{},{},{}{}",
        stat_sums.0,
        stat_sums.1,
        stat_sums.2,
        metric_cells(&agg.sum, agg.phi_eq1_sum)
    )
    .unwrap();
}

pub const REPORT_HEADER: &str =
    "community,n_s,m_s,c_s,conductance,expansion,cut_ratio,normalized_cut,avg_odf,internal_density,phi_eq1";

/// Renders the report CSV, optionally with `truth_`-prefixed rows for a
/// reference partition.
pub fn report_csv(
    manifest_hash: &str,
    report: &QualityReport,
    truth: Option<&QualityReport>,
) -> String {
    let mut out = format!("# manifest_hash={manifest_hash}\n{REPORT_HEADER}\n");
    report_rows("", report, &mut out);
    if let Some(t) = truth {
        report_rows("truth_", t, &mut out);
    }
    out
}

/// Partition file: `node_id community_id` per line, original ids, ascending.
pub fn partition_text(manifest_hash: &str, p: &Partition, ids: &IdMap) -> String {
    let mut out = format!("# manifest_hash={manifest_hash}\n");
    for v in 0..p.len() {
        writeln!(out, "{} {}", ids.original(v), p.community_of(v)).unwrap();
    }
    out
}

/// Top-level JSON report document.
#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub manifest_hash: &'a str,
    pub command: &'a str,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub misclassification: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<terminalcut_core::tsecd::TsecdDiagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
    pub report: &'a QualityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_report: Option<&'a QualityReport>,
}

pub fn write_text(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)
}
