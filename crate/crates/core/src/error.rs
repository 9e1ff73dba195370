use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by parsing, evaluation and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    /// A structurally invalid document; `path` points at the offending field,
    /// e.g. `jobs[2].ops[0].family`.
    #[error("{path}: {reason}")]
    InvalidField { path: String, reason: String },

    /// A schedule that is not a permutation of the instance's items.
    #[error("malformed schedule: {0}")]
    MalformedSchedule(String),

    /// A one-time-setup schedule that places a job before one of its setups.
    #[error("infeasible schedule: job {job} is scheduled before the setup of family {family}")]
    InfeasibleSchedule { job: String, family: String },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The exact solver enumerates all K! setup orders and refuses large K.
    #[error(
        "instance uses {families} families; the exact solver enumerates K! setup orders \
         and is guarded at K <= {guard} (use the sidney solver for larger instances)"
    )]
    ExactKGuard { families: usize, guard: usize },

    /// A brute-force oracle was asked to search beyond its guard.
    #[error("search guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("infeasible move: job {job} cannot be placed in block {target} (earliest feasible block is {min_block})")]
    InfeasibleMove {
        job: String,
        target: usize,
        min_block: usize,
    },

    /// Input to the precedence-to-instance reduction is not of the required
    /// shape (every node (p,w) = (1,0) or (0,1), edges only (1,0) -> (0,1)).
    #[error("not a reducible precedence instance: {0}")]
    SpecialCaseShape(String),

    #[error("ratio search failed to converge")]
    NoConvergence,
}
