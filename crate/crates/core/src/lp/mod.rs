//! Transport LP solver and cost-line sensitivity.

mod basis;
mod sensitivity;
mod simplex;

pub use sensitivity::{
    basis_stability_interval, plan_stability_interval, relative_costs, RelativeCostPair,
};
pub use simplex::{solve_transport, solve_transport_with, verify_optimality, LpOptions};
