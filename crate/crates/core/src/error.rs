use thiserror::Error;

/// Errors surfaced by the kernel. Nonzero residuals are *not* errors; they are
/// reported as check outcomes. Errors mean the computation itself could not be
/// carried out as requested.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("pole at assignment: denominator of `{context}` vanishes")]
    PoleAtAssignment { context: String },

    #[error("fractional exponent {num}/{den} on parameter `{param}` has no exact root under the given assignment")]
    InexactRoot { param: String, num: i64, den: i64 },

    #[error("parameter `{0}` is not assigned")]
    UnassignedParam(String),

    #[error("negative argument: {0}")]
    NegativeArgument(String),

    #[error("q-integer [{0}] vanishes at the chosen root of unity")]
    VanishingQInt(u32),

    #[error("tensor-leg mismatch: {0}")]
    LegMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("rewrite budget exhausted after {applied} rule applications (budget {budget})")]
    BudgetExceeded { applied: u64, budget: u64 },

    #[error("degree overflow: element of degree {found} exceeds truncation {truncation}")]
    DegreeOverflow { found: usize, truncation: usize },

    #[error("no generator coproduct defined for `{0}`")]
    MissingCoproduct(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    Unsupported(String),
}
