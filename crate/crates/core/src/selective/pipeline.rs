use super::ci::{naive_ci, pivot_root, CiKind, CiOptions, ConfidenceInterval};
use super::line::{build_eta, nuisance_line_for, SelectionLine};
use super::region::{compute_z1, compute_z2, truncation_region, TruncationRegion};
use crate::error::{Error, Result};
use crate::lp::{solve_transport_with, LpOptions};
use crate::model::{
    build_cost_decomposition, build_transport_problem, CostDecomposition, LpSolution,
    ProblemInstance,
};

/// Truncation regions narrower than this many standard deviations are
/// treated as a single point.
pub const POINT_REGION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOptions {
    /// Continue (with a warning) when the optimal vertex is degenerate
    /// instead of failing with [`Error::Degenerate`].
    pub allow_degenerate: bool,
    /// When a pivot root cannot be bracketed, report that end of the
    /// interval as infinite (with a warning) instead of failing.
    pub unbounded_on_bracket_failure: bool,
    pub lp: LpOptions,
    pub ci: CiOptions,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            allow_degenerate: false,
            unbounded_on_bracket_failure: true,
            lp: LpOptions::default(),
            ci: CiOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmOutput {
    pub distance: f64,
    pub costs: CostDecomposition,
    pub solution: LpSolution,
    pub line: SelectionLine,
    pub region: TruncationRegion,
    pub selective_ci: ConfidenceInterval,
    pub naive_ci: ConfidenceInterval,
    pub degenerate: bool,
    pub warnings: Vec<String>,
}

impl AlgorithmOutput {
    pub fn eta(&self) -> &[f64] {
        &self.line.eta
    }

    /// `eta^T v`, e.g. the true distance surrogate for known means `v`.
    pub fn project(&self, v: &[f64]) -> f64 {
        super::line::dot(&self.line.eta, v)
    }
}

/// Default-option run: degenerate vertices are refused.
pub fn run_algorithm_1(inst: &ProblemInstance, alpha: f64) -> Result<AlgorithmOutput> {
    run_algorithm_1_with(inst, alpha, &PipelineOptions::default())
}

/// Cost matrix, transport LP, `eta`, the line `(a, b)`, the sign and
/// optimality regions, their intersection, and the two intervals.
pub fn run_algorithm_1_with(
    inst: &ProblemInstance,
    alpha: f64,
    opts: &PipelineOptions,
) -> Result<AlgorithmOutput> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let mut warnings = Vec::new();
    let costs = build_cost_decomposition(inst);
    let tp = build_transport_problem(inst, &costs)?;
    let solution = solve_transport_with(&tp, &opts.lp)?;
    if solution.degenerate {
        let (index, value) = solution.min_basic();
        if !opts.allow_degenerate {
            return Err(Error::Degenerate {
                index: index + 1,
                value,
            });
        }
        warnings.push(format!(
            "degenerate vertex: basic variable t[{}] = {value:e}; the optimality region \
             is computed for the plan",
            index + 1
        ));
    }
    let eta = build_eta(&costs, &solution);
    let line = nuisance_line_for(inst, &eta)?;
    let z1 = compute_z1(&costs, &line)?;
    let z2 = compute_z2(&tp, &costs, &solution, &line)?;
    let region = truncation_region(z1, z2, line.z_obs)?;
    if region.z.length() <= POINT_REGION_TOL * line.sigma() {
        return Err(Error::EmptyRegion(format!(
            "truncation region [{}, {}] is a single point: the observed selection holds only at \
             z_obs (tied data or tied plans), so the conditional law is degenerate",
            region.z.lo, region.z.hi
        )));
    }

    let (z, s2) = (line.z_obs, line.sigma2);
    let mut root = |target: f64| match pivot_root(z, s2, &region.z, target, &opts.ci) {
        Err(Error::RootNotBracketed { f_hi, lo, hi, .. }) if opts.unbounded_on_bracket_failure => {
            let end = if f_hi > target {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
            warnings.push(format!(
                "pivot root for level {target} not bracketed in [{lo}, {hi}]; using {end}"
            ));
            Ok(end)
        }
        other => other,
    };
    let w_hi = root(alpha / 2.0)?;
    let w_lo = root(1.0 - alpha / 2.0)?;
    let selective_ci = ConfidenceInterval {
        lo: w_lo,
        hi: w_hi.max(w_lo),
        alpha,
        kind: CiKind::Selective,
    };
    let naive_ci = naive_ci(z, s2, alpha)?;
    let distance = solution.objective;
    let degenerate = solution.degenerate;
    Ok(AlgorithmOutput {
        distance,
        costs,
        solution,
        line,
        region,
        selective_ci,
        naive_ci,
        degenerate,
        warnings,
    })
}
