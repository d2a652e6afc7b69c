use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error("enumeration error: {0}")]
    Enumeration(#[from] shortvec::ShortvecError),
    #[error("malformed local normal form: {0}")]
    MalformedNormalForm(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(&'static str),
    #[error("congruence precondition violated: {0}")]
    CongruenceViolation(&'static str),
    #[error("square part t2 = {t2} of t = {t} is not 1 (formula not applicable)")]
    SquareClassNotSupported { t: i64, t2: i64 },
    #[error("formula value is not an integer: {0}")]
    FormulaNotIntegral(String),
    #[error("bracket [{lo}, {hi}] does not isolate a single integer")]
    NoUniqueInteger { lo: String, hi: String },
    #[error("bracket width target {target} not reached with {terms} series terms")]
    WidthNotAchieved { target: String, terms: u64 },
}

pub type Result<T> = std::result::Result<T, ThetaError>;
