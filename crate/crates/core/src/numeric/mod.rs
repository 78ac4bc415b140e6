//! Finite-difference verification engine.
//!
//! The Schrödinger operator is discretized with three-point differences along
//! a contour parameter x, truncated with Dirichlet ends. Eigenvalues are
//! extracted by shifted inverse iteration seeded at the analytic energies
//! (the primary check) or by a dense Hessenberg-QR decomposition (a global
//! cross-check on small grids).

mod dense;
mod grid;
mod hamiltonian;
mod solve;
mod verify;

pub use dense::{dense_eigen, solve_dense, solve_dense_with, DenseMatrix, EigenPair, DEFAULT_DENSE_LIMIT};
pub use grid::Grid;
pub use hamiltonian::{build_hamiltonian, build_hamiltonian_with, DiscretizedHamiltonian, Metric, METRIC_FLOOR};
pub use solve::{residual, solve_targeted, EigenResult, TargetedOptions, DEFAULT_BUFFER};
pub use verify::{
    pt_norm, richardson, verify_family, FamilyParams, LevelReport, VerificationReport, VerifyConfig, ORDER_RANGE,
};
