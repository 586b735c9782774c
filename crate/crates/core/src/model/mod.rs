//! Data model: samples, cost decomposition and the transportation polytope.

mod cost;
mod instance;
mod transport;

pub use cost::{build_cost_decomposition, build_omega, sign, sign_vectors, CostDecomposition};
pub(crate) use instance::rows_to_matrix;
pub use instance::{Covariance, ProblemInstance, PSD_JITTER, SYMMETRY_TOL};
pub use transport::{build_transport_problem, distance_from_basis, LpSolution, TransportProblem};
