//! Summation of hypergeometric terms: Gosper's indefinite-summation
//! algorithm, Zeilberger's creative-telescoping extension for definite sums,
//! and the assembly of recurrences for `F(n) = sum_{k=0}^{n} f(n, k)` with
//! explicit boundary contributions.
//!
//! Terms are represented by their shift quotients `f(n+1,k)/f(n,k)` and
//! `f(n,k+1)/f(n,k)` together with the value at the origin; proper terms
//! built from Gamma-function factors compile down to that representation.

mod error;
mod gosper;
mod sumrec;
mod term;
mod zeilberger;

pub use error::HyperError;
pub use gosper::{gosper, GosperPetkovsekForm, GosperResult};
pub use sumrec::{ct_to_sum_recurrence, definite_sum_values, sum_rhs_evaluator};
pub use term::{compile_proper_term, GammaFactor, HyperTerm, ProperTermExpr};
pub use zeilberger::{verify_ct_shift, zeilberger, ShiftTelescoperResult};
