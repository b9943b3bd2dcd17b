//! Equilibrium solver, simulator and exact oracle for the secretary problem
//! in which applicants pay to be interviewed.
//!
//! The core routines are generic over [`Scalar`]; the aliases below pin the
//! two instantiations used in practice: `f64` for production runs and
//! [`BigRational`](num_rational::BigRational) for exact checks.

pub mod asymptotics;
pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod oracle;
pub mod scalar;
pub mod simulator;

pub use equilibrium::{
    build_policy, closed_form_success, compute_threshold, expected_stopping_time,
    record_survival_product, solve_values, threshold_sequence, zero_state_values, EquilibriumPolicy,
    GameConfig, ValueTables,
};
pub use error::{Result, SecretaryError};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;

pub type Config = GameConfig<f64>;
pub type Tables = ValueTables<f64>;
pub type Policy = EquilibriumPolicy<f64>;
pub type PolicySpec = oracle::PolicySpec<f64>;

pub type ExactConfig = GameConfig<Exact>;
pub type ExactTables = ValueTables<Exact>;
pub type ExactPolicySpec = oracle::PolicySpec<Exact>;
