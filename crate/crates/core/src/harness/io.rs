//! Two-sample CSV input and per-trial CSV output.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use rand::seq::index::sample;

use super::experiment::TrialRecord;
use super::generate::pooled_variance;
use crate::error::{Error, Result};
use crate::model::{rows_to_matrix, Covariance, ProblemInstance};
use crate::numerics::stream_rng;

/// How the noise variance of a loaded instance is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaMode {
    /// Noise standard deviation `sigma`, so covariance `sigma^2 I`.
    Fixed(f64),
    /// Pooled within-sample variance of the loaded data.
    Estimated,
}

/// Random row subsets drawn without replacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subsample {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadOptions {
    /// Skip the first line of each sample file.
    pub header: bool,
    pub sigma: SigmaMode,
    pub subsample: Option<Subsample>,
    /// Full covariance files; these override `sigma` for their sample.
    pub cov_x: Option<PathBuf>,
    pub cov_y: Option<PathBuf>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            header: false,
            sigma: SigmaMode::Fixed(1.0),
            subsample: None,
            cov_x: None,
            cov_y: None,
        }
    }
}

fn open(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn csv_error(e: &csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        column: 0,
        message: e.to_string(),
    }
}

/// Parses numeric CSV rows. Every row must have the same number of
/// fields; errors carry 1-based line and column numbers.
pub fn parse_numeric_csv<R: Read>(reader: R, header: bool) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(&e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let row = rec
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Parse {
                        line,
                        column: c + 1,
                        message: format!("'{field}' is not a finite number"),
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line,
                    column: row.len().min(first.len()) + 1,
                    message: format!("expected {} fields, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidInstance("no data rows".into()));
    }
    Ok(rows)
}

fn read_rows(path: &Path, header: bool) -> Result<Vec<Vec<f64>>> {
    parse_numeric_csv(open(path)?, header).map_err(|e| match e {
        Error::InvalidInstance(msg) => Error::InvalidInstance(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Reads a `k x k` covariance matrix given as `k^2` numbers in row-major
/// order, in any CSV line layout.
pub fn read_covariance(path: &Path, k: usize) -> Result<Covariance> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let mut vals = Vec::with_capacity(k * k);
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(&e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        for (c, field) in rec.iter().enumerate().filter(|(_, f)| !f.is_empty()) {
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                line,
                column: c + 1,
                message: format!("'{field}' is not a number"),
            })?;
            vals.push(v);
        }
    }
    if vals.len() != k * k {
        return Err(Error::DimensionMismatch(format!(
            "{}: expected {} covariance entries, found {}",
            path.display(),
            k * k,
            vals.len()
        )));
    }
    Covariance::full(DMatrix::from_row_slice(k, k, &vals))
}

fn subsample_rows(
    rows: Vec<Vec<f64>>,
    keep: Option<usize>,
    seed: u64,
    stream: u64,
) -> Result<Vec<Vec<f64>>> {
    let Some(k) = keep else {
        return Ok(rows);
    };
    if k == 0 || k > rows.len() {
        return Err(Error::InvalidInstance(format!(
            "cannot subsample {k} of {} rows",
            rows.len()
        )));
    }
    let mut rng = stream_rng(seed, stream);
    let mut idx = sample(&mut rng, rows.len(), k).into_vec();
    idx.sort_unstable();
    Ok(idx.into_iter().map(|i| rows[i].clone()).collect())
}

/// Builds an instance from two sample files with one point per line.
pub fn load_two_sample_csv(
    path_x: &Path,
    path_y: &Path,
    opts: &LoadOptions,
) -> Result<ProblemInstance> {
    let mut x = read_rows(path_x, opts.header)?;
    let mut y = read_rows(path_y, opts.header)?;
    if x[0].len() != y[0].len() {
        return Err(Error::DimensionMismatch(format!(
            "X has {} columns but Y has {}",
            x[0].len(),
            y[0].len()
        )));
    }
    if let Some(s) = opts.subsample {
        x = subsample_rows(x, s.n, s.seed, 0)?;
        y = subsample_rows(y, s.m, s.seed, 1)?;
    }
    let x = rows_to_matrix(&x)?;
    let y = rows_to_matrix(&y)?;
    let variance = match opts.sigma {
        SigmaMode::Fixed(sigma) => {
            if !(sigma.is_finite() && sigma > 0.0) {
                return Err(Error::Domain(format!(
                    "sigma must be positive, got {sigma}"
                )));
            }
            sigma * sigma
        }
        SigmaMode::Estimated => pooled_variance(&x, &y)?,
    };
    let cov_x = match &opts.cov_x {
        Some(p) => read_covariance(p, x.len())?,
        None => Covariance::isotropic(variance, x.len())?,
    };
    let cov_y = match &opts.cov_y {
        Some(p) => read_covariance(p, y.len())?,
        None => Covariance::isotropic(variance, y.len())?,
    };
    ProblemInstance::new(x, y, cov_x, cov_y)
}

/// Writes per-trial rows with the columns
/// `trial, z_obs, distance, sel_lo, sel_hi, naive_lo, naive_hi,
/// covered_sel, covered_naive, degenerate, wall_ms`. Failed trials leave
/// the numeric columns empty.
pub fn write_trials_csv<W: Write>(out: W, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record([
        "trial",
        "z_obs",
        "distance",
        "sel_lo",
        "sel_hi",
        "naive_lo",
        "naive_hi",
        "covered_sel",
        "covered_naive",
        "degenerate",
        "wall_ms",
    ])
    .map_err(io)?;
    let num = |v: f64| {
        if v.is_nan() {
            String::new()
        } else {
            v.to_string()
        }
    };
    for r in records {
        w.write_record([
            r.trial.to_string(),
            num(r.z_obs),
            num(r.distance),
            num(r.sel[0]),
            num(r.sel[1]),
            num(r.naive[0]),
            num(r.naive[1]),
            r.covered_sel.to_string(),
            r.covered_naive.to_string(),
            r.degenerate.to_string(),
            format!("{:.3}", r.wall_ms),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
