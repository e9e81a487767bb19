//! Diagonals of rational power series.
//!
//! The diagonal of a multivariate series `sum a_{m_1,...,m_d} x1^{m_1} ···`
//! is the univariate series `sum a_{n,...,n} x^n` collecting the equal-index
//! coefficients. For one variable it is the series itself. For two it can be
//! rephrased as a contour integral: substituting `(x1, x2) -> (z, x/z)` puts
//! the equal-index coefficients into the `z`-free row of a Laurent
//! expansion, so `diag F = (1/2πi) ∮ F(z, x/z) dz/z` over a small circle
//! around `z = 0`. Creative telescoping on that rational integrand yields a
//! differential annihilator of the diagonal, and hence a recurrence for its
//! coefficients.
//!
//! The challenge harness runs the pipeline on the family
//! `1/(1 - sum x_i/(1-x_i))` and certifies each derived recurrence against
//! brute-force series data.

mod challenge;
mod error;
mod integrand;
mod ode;
mod problem;
mod series;

pub use challenge::{
    challenge_problem, challenge_run, diagonal_report, DiagonalReport, ReportStatus,
};
pub use error::DiagonalError;
pub use integrand::diagonal_integrand;
pub use ode::diagonal_ode;
pub use problem::DiagonalProblem;
pub use series::series_diagonal;
