//! Exact arithmetic foundation: big rationals, sparse multivariate
//! polynomials, reduced rational functions, dense univariate polynomials over
//! generic coefficient fields, and exact linear algebra.
//!
//! Everything is immutable and exact; no floating point appears anywhere.
//! Operations that can fail return [`CoreError`] instead of silently
//! degrading.

mod convert;
mod error;
mod introots;
mod matrix;
mod multipoly;
mod rational;
mod ratfun;
mod unipoly;

pub use convert::{
    poly_as_unipoly, poly_as_univariate, ratfun_as_unipoly_pair, unipoly_as_ratfun,
    univariate_as_poly,
};
pub use error::CoreError;
pub use introots::nonnegative_integer_roots;
pub use matrix::RatMatrix;
pub use multipoly::{Monomial, MultiPoly};
pub use rational::Rational;
pub use ratfun::RationalFunction;
pub use unipoly::{Field, UniPoly};
