//! Step-size extrapolation for Trotterized quantum simulation.
//!
//! A Trotter product formula with step parameter `s` approaches the exact
//! evolution as `s → 0`.  This crate evaluates the Trotterized dynamics at a
//! set of Chebyshev nodes `s_k` and extrapolates eigenvalues, expectation
//! values, or Frobenius-distance error metrics to `s = 0` by polynomial
//! interpolation in an orthonormal Chebyshev basis.
//!
//! Everything runs at desk scale: dense matrices up to 12 qubits, exact
//! diagonalization as the ground truth, and closed-form evaluators for the
//! analytic error bounds that govern the method (derivative growth,
//! interpolation remainders, Bernstein-ellipse truncation, spectral leakage
//! of the windowed phase-estimation register).
//!
//! Module map:
//! * [`operators`]  — Pauli-string terms, model builders, exact spectral oracles.
//! * [`trotter`]    — product-formula schemes, fractional steps, effective Hamiltonians.
//! * [`chebgrid`]   — Chebyshev nodes, orthonormal fit, weights at zero, variance propagation.
//! * [`bounds`]     — closed-form bound evaluators with domain diagnostics.
//! * [`phase_est`]  — Gaussian-window phase estimation simulated exactly.
//! * [`estimators`] — end-to-end extrapolation pipelines and the cost ledger.

pub mod bounds;
pub mod chebgrid;
pub mod error;
pub mod estimators;
pub mod operators;
pub mod phase_est;
pub mod trotter;

pub use error::{SimError, SimResult};
