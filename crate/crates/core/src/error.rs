use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected} labels, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subgroup generated by J^{generator} is not contained in the effective center of su({rank}) level {level}")]
    SupportNotInEffectiveCenter {
        rank: usize,
        level: u32,
        generator: u32,
    },

    #[error("effective center mismatch for su({rank}) level {level}: first principles {computed:?}, closed form {closed_form:?}")]
    EffectiveCenterMismatch {
        rank: usize,
        level: u32,
        computed: Vec<u32>,
        closed_form: Vec<u32>,
    },

    #[error("no sixth root branch of zeta satisfies (ST)^3 = S^2 (best probe residual {best_residual:e})")]
    NoZetaBranch { best_residual: f64 },

    #[error("modular relation `{relation}` violated: residual {residual:e} exceeds {tolerance:e}")]
    RelationResidual {
        relation: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("alcove of size {size} exceeds the search guard {guard}")]
    GuardExceeded { size: usize, guard: usize },

    #[error("search space has {free} free parameters, budget is {budget}")]
    BudgetExceeded { free: usize, budget: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("eigenvalue {value} is not within {tolerance:e} of an integer")]
    NonIntegralEigenvalue { value: f64, tolerance: f64 },

    #[error("malformed modular datum: {0}")]
    MalformedDatum(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
