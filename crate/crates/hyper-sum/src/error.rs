use std::fmt;

use exact_core::CoreError;
use ore_ops::{OreError, RhsError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperError {
    /// A shift-quotient denominator vanished at a lattice point on the
    /// evaluation path.
    Pole { n: i64, k: i64 },
    /// The certificate term has a pole at a boundary point that the
    /// cancellation heuristic could not resolve.
    CertificatePole { n: i64, k: i64 },
    /// No telescoper was found up to the order cap. Existence beyond the cap
    /// is not excluded.
    TelescoperNotFound { r_max: usize },
    /// The pair of shift quotients does not satisfy the mixed-shift
    /// compatibility identity, so no bivariate term has these quotients.
    Incompatible,
    /// Input outside the supported fragment.
    Unsupported(String),
    /// A telescoper/certificate pair failed the symbolic identity check.
    VerificationFailed,
    Core(CoreError),
    Ore(String),
}

impl fmt::Display for HyperError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperError::Pole { n, k } => {
                write!(f, "pole on the evaluation path at ({n}, {k})")
            }
            HyperError::CertificatePole { n, k } => {
                write!(f, "unresolvable certificate pole at ({n}, {k})")
            }
            HyperError::TelescoperNotFound { r_max } => {
                write!(f, "no telescoper of order <= {r_max} found")
            }
            HyperError::Incompatible => {
                write!(f, "shift quotients are not compatible")
            }
            HyperError::Unsupported(what) => write!(f, "unsupported input: {what}"),
            HyperError::VerificationFailed => {
                write!(f, "telescoper/certificate pair failed verification")
            }
            HyperError::Core(e) => write!(f, "{e}"),
            HyperError::Ore(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for HyperError {}

impl From<CoreError> for HyperError {
    fn from(e: CoreError) -> Self {
        HyperError::Core(e)
    }
}

impl From<OreError> for HyperError {
    fn from(e: OreError) -> Self {
        HyperError::Ore(e.to_string())
    }
}

impl From<HyperError> for RhsError {
    fn from(e: HyperError) -> Self {
        match e {
            HyperError::CertificatePole { n, k } => RhsError::CertificatePole { n, k },
            other => RhsError::Eval(other.to_string()),
        }
    }
}
