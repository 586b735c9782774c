//! Primal simplex on the transportation polytope.
//!
//! Starts from the northwest-corner basis (computed in exact integer
//! units of `1/(nm)`, so degenerate cells are placed exactly) and pivots
//! with Bland's rule: the entering column is the lowest-indexed one with a
//! negative reduced cost, and ratio-test ties leave by lowest column index.
//! Bland's rule cannot cycle, which matters here because uniform-marginal
//! transport problems are heavily degenerate.

use crate::error::{Error, Result};
use crate::model::{LpSolution, TransportProblem};

use super::basis::BasisState;

/// Solver tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    /// Primal feasibility (marginals and non-negativity).
    pub feasibility_tol: f64,
    /// Reduced-cost optimality tolerance, applied as
    /// `reduced_cost_tol * min(1, max |c|)`.
    pub reduced_cost_tol: f64,
    /// A basic variable at or below this value makes the solution degenerate.
    pub degeneracy_tol: f64,
    /// Smallest direction entry accepted as a pivot.
    pub pivot_tol: f64,
    /// Rebuild `B^-1` from scratch after this many pivots.
    pub refactor_every: usize,
    pub max_iterations: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-9,
            reduced_cost_tol: 1e-9,
            degeneracy_tol: 1e-11,
            pivot_tol: 1e-9,
            refactor_every: 64,
            max_iterations: 1_000_000,
        }
    }
}

/// Northwest-corner starting basis. Supplies and demands are scaled to the
/// integers `m` and `n`, so exhaustion is detected exactly; when a row and a
/// column run out together the walk moves down and records a zero cell,
/// keeping `n + m - 1` cells that form a spanning tree.
pub(crate) fn northwest_corner(n: usize, m: usize) -> Vec<usize> {
    let mut supply = vec![m; n];
    let mut demand = vec![n; m];
    let (mut i, mut j) = (0, 0);
    let mut cells = Vec::with_capacity(n + m - 1);
    loop {
        let amount = supply[i].min(demand[j]);
        supply[i] -= amount;
        demand[j] -= amount;
        cells.push(i * m + j);
        if i == n - 1 && j == m - 1 {
            break;
        }
        if supply[i] == 0 && i < n - 1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    debug_assert_eq!(cells.len(), n + m - 1);
    cells
}

/// Solves the transport LP to optimality with default tolerances.
pub fn solve_transport(tp: &TransportProblem) -> Result<LpSolution> {
    solve_transport_with(tp, &LpOptions::default())
}

pub fn solve_transport_with(tp: &TransportProblem, opts: &LpOptions) -> Result<LpSolution> {
    let c = &tp.cost_vec;
    let scale = c.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let rc_tol = opts.reduced_cost_tol * scale.min(1.0);
    let start = northwest_corner(tp.n, tp.m);
    let mut st = BasisState::new(tp, &start, opts.refactor_every)?;

    let mut iterations = 0;
    loop {
        let y = st.duals(c);
        let entering = (0..tp.num_vars())
            .find(|&col| !st.is_basic(col) && st.reduced_cost(c, &y, col) < -rc_tol);
        let Some(col) = entering else {
            break;
        };
        let dir = st.direction(col);
        let Some((pos, _)) = st.ratio_test(&dir, opts.pivot_tol) else {
            return Err(Error::NumericalFailure(
                "unbounded ray in a bounded transport polytope".into(),
            ));
        };
        st.pivot(pos, col, &dir)?;
        iterations += 1;
        if iterations >= opts.max_iterations {
            return Err(Error::NumericalFailure(format!(
                "simplex did not converge in {iterations} pivots"
            )));
        }
    }
    finish(tp, st, opts)
}

fn finish(tp: &TransportProblem, mut st: BasisState<'_>, opts: &LpOptions) -> Result<LpSolution> {
    st.refactor()?;
    let mut order: Vec<usize> = (0..st.basis.len()).collect();
    order.sort_by_key(|&p| st.basis[p]);
    let basis: Vec<usize> = order.iter().map(|&p| st.basis[p]).collect();
    let mut t_basic: Vec<f64> = order.iter().map(|&p| st.x_b[p]).collect();
    if let Some(&worst) = t_basic.iter().min_by(|a, b| a.total_cmp(b)) {
        if worst < -opts.feasibility_tol {
            return Err(Error::Infeasible);
        }
    }
    for t in &mut t_basic {
        if *t < 0.0 {
            *t = 0.0;
        }
    }
    let mut t_full = vec![0.0; tp.num_vars()];
    for (&b, &t) in basis.iter().zip(&t_basic) {
        t_full[b] = t;
    }
    if tp.marginal_violation(&t_full) > opts.feasibility_tol {
        return Err(Error::NumericalFailure(
            "final basic solution violates the marginals".into(),
        ));
    }
    let objective = t_full.iter().zip(&tp.cost_vec).map(|(t, c)| t * c).sum();
    let degenerate = t_basic.iter().any(|&t| t <= opts.degeneracy_tol);
    Ok(LpSolution {
        basis,
        t_basic,
        objective,
        t_full,
        degenerate,
    })
}

/// True iff `sol` is primal feasible (to 1e-9, including the dropped
/// marginal), consistent with its basis, and every nonbasic reduced cost is
/// at least -1e-9.
pub fn verify_optimality(tp: &TransportProblem, sol: &LpSolution) -> bool {
    const TOL: f64 = 1e-9;
    if sol.t_full.len() != tp.num_vars() || sol.basis.len() != sol.t_basic.len() {
        return false;
    }
    if sol.t_full.iter().any(|&t| !(t >= -TOL)) || tp.marginal_violation(&sol.t_full) > TOL {
        return false;
    }
    let Ok(st) = BasisState::new(tp, &sol.basis, usize::MAX) else {
        return false;
    };
    for (&b, &t) in sol.basis.iter().zip(&sol.t_basic) {
        let p = st.position[b];
        if (st.x_b[p] - t).abs() > TOL || (sol.t_full[b] - t).abs() > TOL {
            return false;
        }
    }
    if (0..tp.num_vars()).any(|c| !st.is_basic(c) && sol.t_full[c].abs() > TOL) {
        return false;
    }
    let y = st.duals(&tp.cost_vec);
    (0..tp.num_vars())
        .filter(|&c| !st.is_basic(c))
        .all(|c| st.reduced_cost(&tp.cost_vec, &y, c) >= -TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2() -> TransportProblem {
        TransportProblem::new(2, 3, vec![1.0, 1.0, 4.0, 4.0, 2.0, 1.0]).unwrap()
    }

    #[test]
    fn northwest_corner_is_spanning() {
        for (n, m) in [(1, 1), (1, 4), (3, 1), (2, 3), (5, 5), (4, 6)] {
            let cells = northwest_corner(n, m);
            let tp = TransportProblem::new(n, m, vec![0.0; n * m]).unwrap();
            assert!(BasisState::new(&tp, &cells, 10).is_ok(), "{n}x{m}");
        }
        assert_eq!(northwest_corner(2, 2), vec![0, 2, 3]);
    }

    #[test]
    fn w2_instance() {
        let tp = w2();
        let sol = solve_transport(&tp).unwrap();
        assert!((sol.objective - 7.0 / 6.0).abs() < 1e-12);
        assert_eq!(sol.basis_one_based(), vec![1, 2, 5, 6]);
        let want = [1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0];
        for (t, w) in sol.t_basic.iter().zip(want) {
            assert!((t - w).abs() < 1e-12);
        }
        assert!(!sol.degenerate);
        assert!(verify_optimality(&tp, &sol));
    }

    #[test]
    fn zero_costs() {
        let tp = TransportProblem::new(3, 4, vec![0.0; 12]).unwrap();
        let sol = solve_transport(&tp).unwrap();
        assert_eq!(sol.objective, 0.0);
        assert!(verify_optimality(&tp, &sol));
    }

    #[test]
    fn perturbed_solution_fails_verification() {
        let tp = w2();
        let mut sol = solve_transport(&tp).unwrap();
        sol.t_basic[0] += 0.1;
        sol.t_full[sol.basis[0]] += 0.1;
        assert!(!verify_optimality(&tp, &sol));
    }

    #[test]
    fn adjacent_vertex_fails_verification() {
        // Pivot the optimal W2 basis to a neighbouring (more expensive)
        // vertex; that solution is feasible but has a negative reduced cost.
        let tp = w2();
        let sol = solve_transport(&tp).unwrap();
        let mut st = BasisState::new(&tp, &sol.basis, 100).unwrap();
        let entering = 3; // cell (2,1), nonbasic with reduced cost 2
        let dir = st.direction(entering);
        let (pos, theta) = st.ratio_test(&dir, 1e-9).unwrap();
        assert!(theta > 0.0);
        st.pivot(pos, entering, &dir).unwrap();
        let mut t_full = vec![0.0; 6];
        for (p, &b) in st.basis.iter().enumerate() {
            t_full[b] = st.x_b[p];
        }
        let mut pairs: Vec<(usize, f64)> = st.basis.iter().map(|&b| (b, t_full[b])).collect();
        pairs.sort_by_key(|p| p.0);
        let moved = LpSolution {
            basis: pairs.iter().map(|p| p.0).collect(),
            t_basic: pairs.iter().map(|p| p.1).collect(),
            objective: t_full.iter().zip(&tp.cost_vec).map(|(a, b)| a * b).sum(),
            t_full,
            degenerate: false,
        };
        assert!(moved.objective > sol.objective);
        assert!(tp.marginal_violation(&moved.t_full) < 1e-12);
        assert!(!verify_optimality(&tp, &moved));
    }

    #[test]
    fn sorted_separated_samples_match_order_statistics() {
        let x = [0.0f64, 1.0, 2.0];
        let y = [10.0f64, 11.5, 13.0];
        let costs: Vec<f64> = x
            .iter()
            .flat_map(|a| y.iter().map(move |b| (a - b).abs()))
            .collect();
        let tp = TransportProblem::new(3, 3, costs).unwrap();
        let sol = solve_transport(&tp).unwrap();
        let want = (10.0 + 10.5 + 11.0) / 3.0;
        assert!((sol.objective - want).abs() < 1e-12);
        assert!(
            sol.degenerate,
            "square uniform problems are always degenerate"
        );
    }

    #[test]
    fn scaled_costs_keep_the_basis() {
        let tp = w2();
        let base = solve_transport(&tp).unwrap();
        for lambda in [0.01, 0.5, 3.0, 1000.0] {
            let scaled = tp
                .with_costs(tp.cost_vec.iter().map(|c| c * lambda).collect())
                .unwrap();
            let sol = solve_transport(&scaled).unwrap();
            assert_eq!(sol.basis, base.basis);
            assert!((sol.objective - lambda * base.objective).abs() < 1e-9 * lambda);
        }
    }
}
