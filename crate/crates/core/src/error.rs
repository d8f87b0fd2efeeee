use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Environment variable that lifts the degree guards on enumeration.
pub const CAPACITY_OVERRIDE_VAR: &str = "ENDTN_UNLOCK_CAPACITY";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("{op} is limited to degree {max}, got {n} (set {CAPACITY_OVERRIDE_VAR}=1 to override)")]
    Capacity { op: &'static str, n: usize, max: usize },

    #[error("not an endomorphism: {0}")]
    NotAnEndomorphism(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("rewrite budget of {budget} steps exceeded")]
    RewriteBudgetExceeded { budget: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

/// Fails with [`Error::Capacity`] when `n > max`, unless the override variable is set.
pub fn ensure_capacity(op: &'static str, n: usize, max: usize) -> Result<()> {
    if n <= max || capacity_unlocked() {
        Ok(())
    } else {
        Err(Error::Capacity { op, n, max })
    }
}

fn capacity_unlocked() -> bool {
    std::env::var(CAPACITY_OVERRIDE_VAR).map(|v| v == "1").unwrap_or(false)
}

pub(crate) fn ensure_same_degree(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { left, right })
    }
}
