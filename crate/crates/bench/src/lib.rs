//! Benchmark inputs shared by the criterion benches.

use wassci::harness::{generate_instance, ExperimentConfig};
use wassci::ProblemInstance;

/// Gaussian instance with `n = m = size`, shift 2 and unit variance.
pub fn instance(size: usize, d: usize) -> ProblemInstance {
    let cfg = ExperimentConfig {
        n: size,
        m: size,
        d,
        ..Default::default()
    };
    generate_instance(&cfg, 0)
        .expect("valid configuration")
        .instance
}
