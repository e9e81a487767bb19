//! Annihilating differential operators for the diagonal.
//!
//! One variable: the diagonal is the series itself, and a rational function
//! `p/q` satisfies the first-order equation `pq·y' = (p'q - pq')·y`, so the
//! minimal annihilator is immediate. Two variables: a telescoper `L` of the
//! contour integrand `G` satisfies `L·G = D_z(certificate)` with a rational
//! certificate, whose derivative integrates to zero over the closed
//! contour; hence `L` annihilates the contour integral, i.e. the diagonal.
//! The integration path can always be deformed within the pole-free region,
//! so no boundary terms ever appear.

use exact_core::{MultiPoly, RationalFunction};
use ore_ops::{OreAlgebraSpec, OreOperator};
use rational_ct::reduction_ct;

use crate::error::DiagonalError;
use crate::integrand::diagonal_integrand;
use crate::problem::DiagonalProblem;

/// Variable names of the contour frame: the diagonal series lives in
/// `x` and the contour integration runs over `z`.
pub const SERIES_VAR: &str = "x";
pub const CONTOUR_VAR: &str = "z";

/// An operator annihilating the diagonal series: for one variable in the
/// problem's own variable, for two in `D_x` of the contour frame.
pub fn diagonal_ode(problem: &DiagonalProblem) -> Result<OreOperator, DiagonalError> {
    match problem.dimension() {
        1 => Ok(univariate_annihilator(problem.f(), &problem.vars()[0])),
        2 => {
            let g = diagonal_integrand(
                problem.f(),
                &problem.vars()[0],
                &problem.vars()[1],
                SERIES_VAR,
                CONTOUR_VAR,
            );
            Ok(reduction_ct(&g, SERIES_VAR, CONTOUR_VAR).telescoper)
        }
        d => Err(DiagonalError::UnsupportedDimension { d }),
    }
}

/// Minimal annihilator of a univariate rational function: `pq·D - (p'q - pq')`
/// normalized to primitive polynomial coefficients. The zero function is
/// annihilated by the identity already.
fn univariate_annihilator(f: &RationalFunction, var: &str) -> OreOperator {
    let spec = OreAlgebraSpec::derivation_in(var);
    if f.is_zero() {
        return OreOperator::identity(spec);
    }
    let p = f.num();
    let q = f.den();
    let wronskian = p.derivative(var).mul(q).sub(&p.mul(&q.derivative(var)));
    let coeffs = vec![
        RationalFunction::from_poly(MultiPoly::zero().sub(&wronskian)),
        RationalFunction::from_poly(p.mul(q)),
    ];
    OreOperator::new(spec, coeffs).normalize()
}
