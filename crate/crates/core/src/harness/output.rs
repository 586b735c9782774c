//! JSON documents written by the experiment commands. None of them carry
//! timings except the timing table, so seeded runs are byte-identical.

use serde::Serialize;

use super::config::ExperimentConfig;
use super::experiment::{RobustnessRow, SweepPoint, SweepReport, TimingRow};
use crate::selective::SCHEMA_VERSION;

#[derive(Debug, Serialize)]
struct SweepDoc<'a> {
    schema: u32,
    kind: &'a str,
    config: &'a ExperimentConfig,
    deltas: Vec<f64>,
    spearman_length: f64,
    points: Vec<SweepPoint>,
}

/// Aggregate document for a coverage or length sweep.
pub fn sweep_json(kind: &str, sweep: &SweepReport) -> String {
    let points = sweep.points();
    let doc = SweepDoc {
        schema: SCHEMA_VERSION,
        kind,
        config: &sweep.base,
        deltas: points.iter().map(|p| p.delta).collect(),
        spearman_length: sweep.spearman_length,
        points,
    };
    to_pretty(&doc)
}

#[derive(Debug, Serialize)]
struct RobustnessDoc<'a> {
    schema: u32,
    kind: &'a str,
    config: &'a ExperimentConfig,
    rows: &'a [RobustnessRow],
}

pub fn robustness_json(base: &ExperimentConfig, rows: &[RobustnessRow]) -> String {
    to_pretty(&RobustnessDoc {
        schema: SCHEMA_VERSION,
        kind: "robustness",
        config: base,
        rows,
    })
}

#[derive(Debug, Serialize)]
struct TimingDoc<'a> {
    schema: u32,
    kind: &'a str,
    config: &'a ExperimentConfig,
    rows: &'a [TimingRow],
}

pub fn timing_json(base: &ExperimentConfig, rows: &[TimingRow]) -> String {
    to_pretty(&TimingDoc {
        schema: SCHEMA_VERSION,
        kind: "benchmark",
        config: base,
        rows,
    })
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents are always serializable");
    s.push('\n');
    s
}
