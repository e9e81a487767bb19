use std::fmt;

/// Errors raised by the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// An exact division was requested but the divisor does not divide the
    /// dividend (or is zero).
    Division(String),
    /// The operation is undefined for the given arguments, e.g. gcd(0, 0)
    /// or evaluation at a point where a denominator vanishes identically.
    Domain(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::Division(msg) => write!(f, "inexact division: {msg}"),
            CoreError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for CoreError {}
