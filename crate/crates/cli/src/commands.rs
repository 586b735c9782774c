use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use wassci::harness::{
    load_two_sample_csv, robustness_json, run_robustness_experiment, run_sweep,
    run_timing_experiment, sweep_json, timing_json, write_trials_csv, ExperimentConfig,
    LoadOptions, SigmaMode, Subsample, SweepReport,
};
use wassci::lp::solve_transport;
use wassci::model::{build_cost_decomposition, build_transport_problem, ProblemInstance};
use wassci::{run_algorithm_1_with, Error, PipelineOptions, Result, RunReport};

use crate::args::{BenchArgs, CiArgs, RobustArgs, SimArgs};

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes `text` to `out`, or to stdout when there is no path. Returns
/// whether a file was written.
fn emit(out: Option<&Path>, text: &str) -> Result<bool> {
    match out {
        Some(p) => write_file(p, text).map(|_| true),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(false)
        }
    }
}

fn fmt_pair(p: [f64; 2]) -> String {
    format!("[{:.4}, {:.4}]", p[0], p[1])
}

fn dump_lp(path: &Path, inst: &ProblemInstance) -> Result<()> {
    let costs = build_cost_decomposition(inst);
    let tp = build_transport_problem(inst, &costs)?;
    let sol = solve_transport(&tp)?;
    let join = |v: Vec<String>| v.join(" ");
    let text = format!(
        "{} {}\n{}\n{}\n",
        inst.n(),
        inst.m(),
        join(costs.cost_vec.iter().map(f64::to_string).collect()),
        join(sol.basis_one_based().iter().map(usize::to_string).collect()),
    );
    write_file(path, &text)
}

pub fn ci(a: &CiArgs) -> Result<()> {
    let subsample = (a.subsample_n.is_some() || a.subsample_m.is_some()).then_some(Subsample {
        n: a.subsample_n,
        m: a.subsample_m,
        seed: a.subsample_seed,
    });
    let opts = LoadOptions {
        header: a.header,
        sigma: if a.estimate_sigma {
            SigmaMode::Estimated
        } else {
            SigmaMode::Fixed(a.sigma.unwrap_or(1.0))
        },
        subsample,
        cov_x: a.cov_x.clone(),
        cov_y: a.cov_y.clone(),
    };
    let inst = load_two_sample_csv(&a.x, &a.y, &opts)?;
    if let Some(p) = &a.dump_lp {
        dump_lp(p, &inst)?;
    }
    let popts = PipelineOptions {
        allow_degenerate: a.allow_degenerate,
        ..Default::default()
    };
    let out = run_algorithm_1_with(&inst, a.alpha, &popts)?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let report = RunReport::new(&inst, a.alpha, &out);
    let mut text = report.to_json_pretty();
    text.push('\n');
    if emit(a.out.as_deref(), &text)? {
        println!(
            "distance {:.6}; selective CI {}; naive CI {}",
            report.distance,
            fmt_pair(report.ci_selective),
            fmt_pair(report.ci_naive)
        );
    }
    Ok(())
}

fn sim_config(a: &SimArgs) -> ExperimentConfig {
    ExperimentConfig {
        n: a.n,
        m: a.m,
        d: a.d,
        delta: a.delta.first().copied().unwrap_or(0.0),
        noise: a.noise,
        variance_mode: a.variance,
        trials: a.trials,
        alpha: a.alpha,
        seed: a.seed,
        parallelism: a.jobs.max(1),
        allow_degenerate: !a.exclude_degenerate,
    }
}

/// `base_delta<d>.ext` next to `base`.
fn suffixed(base: &Path, delta: f64) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_delta{delta}.{}", ext.to_string_lossy()),
        None => format!("{stem}_delta{delta}"),
    };
    base.with_file_name(name)
}

fn write_trials(base: &Path, sweep: &SweepReport) -> Result<()> {
    let many = sweep.reports.len() > 1;
    for r in &sweep.reports {
        let path = if many {
            suffixed(base, r.config.delta)
        } else {
            base.to_path_buf()
        };
        let f = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        write_trials_csv(BufWriter::new(f), &r.records)?;
    }
    Ok(())
}

pub fn simulate(kind: &str, a: &SimArgs) -> Result<()> {
    let cfg = sim_config(a);
    let sweep = run_sweep(&cfg, &a.delta)?;
    if let Some(p) = &a.trials_csv {
        write_trials(p, &sweep)?;
    }
    let wrote = emit(a.out.as_deref(), &sweep_json(kind, &sweep))?;
    if wrote {
        let mut line = format!("{kind}: {} trials per shift;", cfg.trials);
        for pt in sweep.points() {
            let g = &pt.aggregate;
            let _ = write!(
                line,
                " delta {}: sel {:.3} naive {:.3} len {:.3};",
                pt.delta, g.coverage_selective, g.coverage_naive, g.mean_length_selective
            );
        }
        let _ = write!(line, " spearman {:.3}", sweep.spearman_length);
        println!("{line}");
    }
    Ok(())
}

pub fn benchmark(a: &BenchArgs) -> Result<()> {
    let cfg = ExperimentConfig {
        d: a.d,
        delta: a.delta,
        trials: a.trials,
        alpha: a.alpha,
        seed: a.seed,
        ..Default::default()
    };
    let rows = run_timing_experiment(&cfg, &a.n)?;
    if emit(a.out.as_deref(), &timing_json(&cfg, &rows))? {
        let parts: Vec<String> = rows
            .iter()
            .map(|r| {
                format!(
                    "n={} median {:.1} ms ({} failed)",
                    r.n, r.median_ms, r.failures
                )
            })
            .collect();
        println!("benchmark: {}", parts.join("; "));
    }
    Ok(())
}

pub fn robustness(a: &RobustArgs) -> Result<()> {
    let cfg = ExperimentConfig {
        n: a.n,
        m: a.m,
        d: a.d,
        delta: a.delta,
        trials: a.trials,
        alpha: a.alpha,
        seed: a.seed,
        parallelism: a.jobs.max(1),
        allow_degenerate: !a.exclude_degenerate,
        ..Default::default()
    };
    let rows = run_robustness_experiment(&cfg)?;
    if emit(a.out.as_deref(), &robustness_json(&cfg, &rows))? {
        let parts: Vec<String> = rows
            .iter()
            .map(|r| format!("{} {:.3}", r.label, r.aggregate.coverage_selective))
            .collect();
        println!("robustness selective coverage: {}", parts.join("; "));
    }
    Ok(())
}
