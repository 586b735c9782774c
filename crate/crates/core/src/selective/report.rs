use serde::{Deserialize, Serialize};

use super::pipeline::AlgorithmOutput;
use crate::model::ProblemInstance;

/// Version of the JSON layout written by every report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    #[serde(with = "crate::serde_ext::ext_pair")]
    pub z1: [f64; 2],
    #[serde(with = "crate::serde_ext::ext_pair")]
    pub z2: [f64; 2],
    #[serde(with = "crate::serde_ext::ext_pair")]
    pub z: [f64; 2],
}

/// One single-run report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub alpha: f64,
    pub distance: f64,
    pub z_obs: f64,
    pub sigma2: f64,
    /// 1-based.
    pub basis: Vec<usize>,
    pub region: RegionRecord,
    #[serde(with = "crate::serde_ext::ext_pair")]
    pub ci_selective: [f64; 2],
    #[serde(with = "crate::serde_ext::ext_pair")]
    pub ci_naive: [f64; 2],
    pub degenerate: bool,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(inst: &ProblemInstance, alpha: f64, out: &AlgorithmOutput) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            n: inst.n(),
            m: inst.m(),
            d: inst.d(),
            alpha,
            distance: out.distance,
            z_obs: out.line.z_obs,
            sigma2: out.line.sigma2,
            basis: out.solution.basis_one_based(),
            region: RegionRecord {
                z1: out.region.z1.as_pair(),
                z2: out.region.z2.as_pair(),
                z: out.region.z.as_pair(),
            },
            ci_selective: out.selective_ci.as_pair(),
            ci_naive: out.naive_ci.as_pair(),
            degenerate: out.degenerate,
            warnings: out.warnings.clone(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}
