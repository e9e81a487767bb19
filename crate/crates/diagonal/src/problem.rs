//! Problem statement: a rational series and its equal-index coefficient
//! sequence.

use exact_core::{MultiPoly, Rational, RationalFunction};

use crate::error::DiagonalError;

/// A rational function expandable at the origin, together with the ordered
/// list of its series variables. The diagonal is the univariate sequence
/// `a_{n,...,n}` of equal-index Taylor coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProblem {
    f: RationalFunction,
    vars: Vec<String>,
}

impl DiagonalProblem {
    /// Wraps `f` with its declared variables. Every variable actually
    /// occurring in `f` must be declared, and the denominator must not
    /// vanish at the origin — otherwise there is no Taylor expansion and no
    /// diagonal to speak of.
    pub fn new(f: RationalFunction, vars: &[&str]) -> Result<Self, DiagonalError> {
        if vars.is_empty() {
            return Err(DiagonalError::UnsupportedDimension { d: 0 });
        }
        for poly in [f.num(), f.den()] {
            for v in poly.vars() {
                if poly.degree_in(v).unwrap_or(0) > 0 && !vars.iter().any(|w| w == v) {
                    return Err(DiagonalError::ForeignVariable { variable: v.clone() });
                }
            }
        }
        if constant_term(f.den()).is_zero() {
            return Err(DiagonalError::OriginPole);
        }
        let vars = vars.iter().map(|v| v.to_string()).collect();
        Ok(DiagonalProblem { f, vars })
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
}

/// Coefficient of the empty monomial, i.e. the value at the origin.
pub(crate) fn constant_term(p: &MultiPoly) -> Rational {
    p.terms()
        .find(|(mono, _)| mono.total_degree() == 0)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(num: MultiPoly, den: MultiPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    #[test]
    fn accepts_series_with_origin_expansion() {
        let den = MultiPoly::one()
            .sub(&MultiPoly::var("x1"))
            .sub(&MultiPoly::var("x2"));
        let p = DiagonalProblem::new(ratio(MultiPoly::one(), den), &["x1", "x2"]).unwrap();
        assert_eq!(p.dimension(), 2);
        assert_eq!(p.vars(), ["x1", "x2"]);
    }

    #[test]
    fn rejects_pole_at_the_origin() {
        let f = ratio(MultiPoly::one(), MultiPoly::var("x1").add(&MultiPoly::var("x2")));
        assert_eq!(
            DiagonalProblem::new(f, &["x1", "x2"]),
            Err(DiagonalError::OriginPole)
        );
    }

    #[test]
    fn rejects_undeclared_variables() {
        let f = ratio(MultiPoly::var("y"), MultiPoly::one());
        assert_eq!(
            DiagonalProblem::new(f, &["x1"]),
            Err(DiagonalError::ForeignVariable { variable: "y".into() })
        );
    }

    #[test]
    fn rejects_empty_variable_list() {
        let f = RationalFunction::one();
        assert_eq!(
            DiagonalProblem::new(f, &[]),
            Err(DiagonalError::UnsupportedDimension { d: 0 })
        );
    }
}
