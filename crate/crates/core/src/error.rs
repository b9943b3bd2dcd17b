use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SecretaryError {
    #[error("invalid instance: need at least 2 applicants, got {0}")]
    TooFewApplicants(usize),
    #[error("invalid cost {0}: must lie in [0, 1)")]
    CostOutOfRange(f64),
    #[error("value tables were solved for N={tables} but the config has N={config}")]
    TablesMismatch { tables: usize, config: usize },
    #[error("value tables were solved for cost {tables} but the config has cost {config}")]
    TablesCostMismatch { tables: f64, config: f64 },
    #[error("gamma argument {0} outside the supported range (0, 3]")]
    GammaDomain(f64),
    #[error("enumeration over {n}! orders is not supported (limit {limit})")]
    EnumerationTooLarge { n: usize, limit: usize },
    #[error("policy scan would visit {visits} policies, budget is {budget}")]
    ScanBudgetExceeded { visits: u128, budget: u128 },
    #[error("grid step {0} must lie in (0, 0.25]")]
    GridStep(f64),
    #[error("profile has {profile} stages but the game has {config} applicants")]
    ProfileLength { profile: usize, config: usize },
    #[error("probability {value} at stage {stage} is outside [0, 1]")]
    Probability { stage: usize, value: f64 },
    #[error("acceptance masses sum to {0}, more than 1")]
    AcceptanceMass(f64),
    #[error("policy infeasible at stage {stage}: {reason}")]
    InfeasiblePolicy { stage: usize, reason: String },
    #[error("invalid ability draw: {0}")]
    InvalidAbilities(&'static str),
    #[error("need at least one trial")]
    NoTrials,
}

pub type Result<T> = std::result::Result<T, SecretaryError>;
