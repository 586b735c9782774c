//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use wassci::lp::solve_transport;
use wassci::model::{sign, ProblemInstance, TransportProblem};
use wassci::selective::AlgorithmOutput;

/// Minimum objective over every basic feasible solution, found by trying
/// all `(n + m - 1)`-subsets of cells.
pub fn brute_force_optimum(n: usize, m: usize, costs: &[f64]) -> f64 {
    let k = n + m - 1;
    let cells = n * m;
    let mut h = vec![1.0 / n as f64; n];
    h.extend(std::iter::repeat_n(1.0 / m as f64, m - 1));
    let h = nalgebra::DVector::from_vec(h);
    let mut best = f64::INFINITY;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut b = DMatrix::<f64>::zeros(k, k);
        for (p, &c) in subset.iter().enumerate() {
            let (i, j) = (c / m, c % m);
            b[(i, p)] = 1.0;
            if j + 1 < m {
                b[(n + j, p)] = 1.0;
            }
        }
        let lu = b.lu();
        let u = lu.u();
        let nonsingular = (0..k).all(|i| u[(i, i)].abs() > 1e-9);
        if nonsingular {
            if let Some(t) = lu.solve(&h) {
                if t.iter().all(|&v| v >= -1e-12) {
                    let obj: f64 = subset
                        .iter()
                        .zip(t.iter())
                        .map(|(&c, &v)| costs[c] * v)
                        .sum();
                    best = best.min(obj);
                }
            }
        }
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if subset[i] < cells - k + i {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// `(1/n) sum |x_(i) - y_(i)|` for equal-size one-dimensional samples.
pub fn order_statistic_distance(x: &[f64], y: &[f64]) -> f64 {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    xs.iter().zip(&ys).map(|(a, b)| (a - b).abs()).sum::<f64>() / xs.len() as f64
}

/// Pairwise l1 costs of a row-major two-sample data vector.
pub fn l1_costs(data: &[f64], n: usize, m: usize, d: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            c.push(
                (0..d)
                    .map(|k| (data[i * d + k] - data[(n + j) * d + k]).abs())
                    .sum(),
            );
        }
    }
    c
}

/// Whether the point `a + b z` has the observed sign pattern and leaves the
/// observed plan optimal, checked from scratch: signs are re-evaluated and
/// the LP is re-solved at the new costs.
pub fn grid_member(out: &AlgorithmOutput, n: usize, m: usize, d: usize, z: f64) -> bool {
    let data = out.line.point(z);
    for (k, s) in out.costs.signs.iter().enumerate() {
        for i in 0..n {
            for j in 0..m {
                let diff = data[i * d + k] - data[(n + j) * d + k];
                if sign(diff) != s[i * m + j] {
                    return false;
                }
            }
        }
    }
    let costs = l1_costs(&data, n, m, d);
    let tp = TransportProblem::new(n, m, costs.clone()).unwrap();
    let best = solve_transport(&tp).unwrap().objective;
    let plan: f64 = out
        .solution
        .t_full
        .iter()
        .zip(&costs)
        .map(|(t, c)| t * c)
        .sum();
    plan <= best + 1e-10 * (1.0 + best.abs())
}

/// Gaussian two-sample instance with random sizes up to the given limits
/// and a random mean shift in `[0, 3)`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_m: usize,
    max_d: usize,
) -> ProblemInstance {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(1..=max_m);
    let d = rng.random_range(1..=max_d);
    let shift: f64 = rng.random_range(0.0..3.0);
    let x: Vec<f64> = (0..n * d)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    let y: Vec<f64> = (0..m * d)
        .map(|_| shift + rng.sample::<f64, _>(StandardNormal))
        .collect();
    ProblemInstance::isotropic(
        DMatrix::from_row_slice(n, d, &x),
        DMatrix::from_row_slice(m, d, &y),
        1.0,
    )
    .unwrap()
}
