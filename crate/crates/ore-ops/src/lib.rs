//! Operator algebras for shift and derivation generators: skew-polynomial
//! arithmetic, application to rational functions, recurrences with their
//! unrolling, and the translation from differential operators to coefficient
//! recurrences.

mod convert;
mod error;
mod operator;
mod recurrence;

pub use convert::ode_to_rec;
pub use error::{OreError, RhsError};
pub use operator::{Generator, OreAlgebraSpec, OreOperator};
pub use recurrence::{recurrence_from_coeffs, Recurrence, RhsEval};
