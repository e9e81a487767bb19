use std::fmt;

use exact_core::CoreError;

/// Failure while evaluating a recurrence right-hand side at an integer index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhsError {
    /// A certificate pole at the lattice point `(n, k)` could not be
    /// cancelled against a zero of the summand.
    CertificatePole { n: i64, k: i64 },
    /// Any other evaluation failure, with context.
    Eval(String),
}

impl fmt::Display for RhsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhsError::CertificatePole { n, k } => {
                write!(f, "unresolvable certificate pole at (n, k) = ({n}, {k})")
            }
            RhsError::Eval(msg) => write!(f, "right-hand side evaluation failed: {msg}"),
        }
    }
}

impl std::error::Error for RhsError {}

/// Errors raised by operator algebra and recurrence unrolling.
#[derive(Debug, Clone, PartialEq)]
pub enum OreError {
    /// Operators over different algebras were combined.
    AlgebraMismatch { left: String, right: String },
    /// The operation requires the other generator type.
    WrongGenerator { expected: &'static str },
    /// The operation requires a nonzero operator.
    ZeroOperator,
    /// The leading coefficient vanished when producing the term at `index`;
    /// the caller must supply that term as an initial value.
    SingularIndex { index: usize },
    /// Fewer initial terms than the recurrence order.
    InsufficientInitialTerms { needed: usize, given: usize },
    /// Right-hand-side evaluation failed while unrolling.
    Rhs(RhsError),
    Core(CoreError),
}

impl fmt::Display for OreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OreError::AlgebraMismatch { left, right } => {
                write!(f, "operators live in different algebras: {left} vs {right}")
            }
            OreError::WrongGenerator { expected } => {
                write!(f, "operation requires a {expected} operator")
            }
            OreError::ZeroOperator => write!(f, "operation requires a nonzero operator"),
            OreError::SingularIndex { index } => {
                write!(f, "leading coefficient vanishes at output index {index}")
            }
            OreError::InsufficientInitialTerms { needed, given } => {
                write!(f, "recurrence of order {needed} given only {given} initial terms")
            }
            OreError::Rhs(e) => write!(f, "{e}"),
            OreError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OreError {}

impl From<CoreError> for OreError {
    fn from(e: CoreError) -> Self {
        OreError::Core(e)
    }
}

impl From<RhsError> for OreError {
    fn from(e: RhsError) -> Self {
        OreError::Rhs(e)
    }
}
