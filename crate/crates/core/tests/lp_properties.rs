mod common;

use proptest::prelude::*;
use wassci::lp::{relative_costs, solve_transport, verify_optimality};
use wassci::model::TransportProblem;

fn problem() -> impl Strategy<Value = TransportProblem> {
    (1usize..6, 1usize..6).prop_flat_map(|(n, m)| {
        prop::collection::vec(0.0f64..10.0, n * m)
            .prop_map(move |c| TransportProblem::new(n, m, c).unwrap())
    })
}

/// Costs of a one-dimensional l1 problem, which are the structured (and
/// heavily degenerate) case the solver sees in practice.
fn l1_problem() -> impl Strategy<Value = TransportProblem> {
    (1usize..7, 1usize..7).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(-3.0f64..3.0, n),
            prop::collection::vec(-3.0f64..3.0, m),
        )
            .prop_map(move |(x, y)| {
                let c = x
                    .iter()
                    .flat_map(|a| y.iter().map(move |b| (a - b).abs()))
                    .collect();
                TransportProblem::new(n, m, c).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn solutions_are_optimal_and_feasible(tp in prop_oneof![problem(), l1_problem()]) {
        let sol = solve_transport(&tp).unwrap();
        prop_assert!(verify_optimality(&tp, &sol));
        prop_assert_eq!(sol.basis.len(), tp.n + tp.m - 1);
        prop_assert!(sol.t_basic.iter().all(|&t| t >= -1e-10));
        // includes the dropped column-sum constraint
        prop_assert!(tp.marginal_violation(&sol.t_full) <= 1e-9);
        let obj: f64 = sol.t_full.iter().zip(&tp.cost_vec).map(|(t, c)| t * c).sum();
        prop_assert!((obj - sol.objective).abs() <= 1e-12);
    }

    #[test]
    fn deterministic_and_scale_equivariant(tp in problem(), lambda in 0.01f64..100.0) {
        let a = solve_transport(&tp).unwrap();
        let b = solve_transport(&tp).unwrap();
        prop_assert_eq!(&a, &b);
        let scaled = tp.with_costs(tp.cost_vec.iter().map(|c| c * lambda).collect()).unwrap();
        let s = solve_transport(&scaled).unwrap();
        prop_assert!((s.objective - lambda * a.objective).abs() <= 1e-9 * (1.0 + lambda * a.objective));
        prop_assert_eq!(s.basis, a.basis);
    }

    #[test]
    fn small_problems_match_enumeration(tp in (1usize..4, 1usize..4).prop_flat_map(|(n, m)| {
        prop::collection::vec(0.0f64..10.0, n * m)
            .prop_map(move |c| TransportProblem::new(n, m, c).unwrap())
    })) {
        let sol = solve_transport(&tp).unwrap();
        let best = common::brute_force_optimum(tp.n, tp.m, &tp.cost_vec);
        prop_assert!((sol.objective - best).abs() <= 1e-9);
    }

    #[test]
    fn one_dimensional_matches_order_statistics(
        xy in (1usize..21).prop_flat_map(|n| (
            prop::collection::vec(-5.0f64..5.0, n),
            prop::collection::vec(-5.0f64..5.0, n),
        ))
    ) {
        let (x, y) = xy;
        let n = x.len();
        let c = x.iter().flat_map(|a| y.iter().map(move |b| (a - b).abs())).collect();
        let sol = solve_transport(&TransportProblem::new(n, n, c).unwrap()).unwrap();
        prop_assert!((sol.objective - common::order_statistic_distance(&x, &y)).abs() <= 1e-9);
    }

    #[test]
    fn relative_costs_match_fresh_reduced_costs(
        tp in problem(),
        seed in prop::collection::vec(-2.0f64..2.0, 25),
        z in -3.0f64..3.0,
    ) {
        let sol = solve_transport(&tp).unwrap();
        let k = tp.num_vars();
        let u = tp.cost_vec.clone();
        let v: Vec<f64> = seed.iter().cycle().take(k).copied().collect();
        let rc = relative_costs(&tp, &sol.basis, &u, &v).unwrap();
        // u alone is the solved cost, so its relative costs certify optimality
        prop_assert!(rc.u_tilde.iter().all(|&r| r >= -1e-8));

        // reduced costs at u + v z from an independent dense solve of B^T y = c_B
        let c: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b * z).collect();
        let b = tp.basis_matrix(&sol.basis);
        let cb = nalgebra::DVector::from_iterator(sol.basis.len(), sol.basis.iter().map(|&j| c[j]));
        let y = b.transpose().lu().solve(&cb).unwrap();
        for (p, &j) in rc.nonbasis.iter().enumerate() {
            let col = tp.s_mat.column(j);
            let fresh = c[j] - col.dot(&y);
            let parametric = rc.u_tilde[p] + rc.v_tilde[p] * z;
            prop_assert!((fresh - parametric).abs() <= 1e-9, "{} vs {}", fresh, parametric);
        }
    }
}
