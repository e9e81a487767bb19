use std::fmt;

use ore_ops::OreError;

/// Errors raised while setting up or analyzing a diagonal problem.
#[derive(Debug, Clone, PartialEq)]
pub enum DiagonalError {
    /// The denominator vanishes at the origin, so the function has no power
    /// series expansion there and no diagonal.
    OriginPole,
    /// The rational function involves a variable outside the declared list.
    ForeignVariable { variable: String },
    /// Only one and two series variables have a rational telescoping route;
    /// higher diagonals need integrands beyond the rational class.
    UnsupportedDimension { d: usize },
    /// Operator algebra or recurrence failure in the telescoping backend.
    Ore(OreError),
}

impl fmt::Display for DiagonalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagonalError::OriginPole => {
                write!(f, "denominator vanishes at the origin; no series expansion exists")
            }
            DiagonalError::ForeignVariable { variable } => {
                write!(f, "variable {variable} is not among the declared series variables")
            }
            DiagonalError::UnsupportedDimension { d } => {
                write!(f, "diagonals in {d} variables are not supported (only 1 and 2)")
            }
            DiagonalError::Ore(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DiagonalError {}

impl From<OreError> for DiagonalError {
    fn from(e: OreError) -> Self {
        DiagonalError::Ore(e)
    }
}
