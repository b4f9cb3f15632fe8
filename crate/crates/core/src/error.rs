use thiserror::Error;

/// Errors raised by the exact-arithmetic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter violates a documented constraint.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The operation is not defined on the given input.
    #[error("domain error: {0}")]
    Domain(String),

    /// A partition was expected to belong to an admissible class but does not.
    #[error("partition {parts:?} is not in the admissible class p={p}, bound={bound}")]
    NotInClass {
        parts: Vec<u32>,
        p: i64,
        bound: String,
    },

    /// An exact polynomial division left a nonzero remainder.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// A polynomial that must be symmetric is not.
    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// Checks the level parameter: `p >= 1` and `p` not divisible by 3.
///
/// `p = 1, 2` are accepted because they appear as the bottom of the `p -> p - 3` nesting.
pub fn validate_reduced_p(p: i64) -> Result<()> {
    if p < 1 {
        return Err(invalid("p", format!("p = {p} must be at least 1")));
    }
    if p % 3 == 0 {
        return Err(invalid("p", format!("p = {p} must not be divisible by 3")));
    }
    Ok(())
}

/// Checks a genuine level: `p >= 4` and `p` not divisible by 3.
pub fn validate_p(p: i64) -> Result<()> {
    if p < 4 {
        return Err(invalid("p", format!("p = {p} must be at least 4")));
    }
    validate_reduced_p(p)
}
