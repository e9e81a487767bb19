//! Conversions between the multivariate types and univariate views.
//!
//! Viewing a bivariate rational function as univariate in one variable, with
//! coefficients that are rational functions in the others, is the standard
//! move before running Euclidean algorithms in a single distinguished
//! variable.

use crate::multipoly::{coeffs_in, MultiPoly};
use crate::rational::Rational;
use crate::ratfun::RationalFunction;
use crate::unipoly::UniPoly;

/// Views `p` as univariate in `var`; coefficients are polynomials in the
/// remaining variables, wrapped as rational functions.
pub fn poly_as_unipoly(p: &MultiPoly, var: &str) -> UniPoly<RationalFunction> {
    let coeffs = coeffs_in(p, var)
        .into_iter()
        .map(RationalFunction::from_poly)
        .collect();
    UniPoly::from_coeffs(coeffs)
}

/// Rebuilds `sum coeff_i * var^i` as a rational function.
pub fn unipoly_as_ratfun(p: &UniPoly<RationalFunction>, var: &str) -> RationalFunction {
    let v = RationalFunction::from_var(var);
    let mut acc = RationalFunction::zero();
    for coeff in p.coeffs().iter().rev() {
        acc = acc.mul(&v).add(coeff);
    }
    acc
}

/// Numerator/denominator of `f` viewed as univariate in `var`.
pub fn ratfun_as_unipoly_pair(
    f: &RationalFunction,
    var: &str,
) -> (UniPoly<RationalFunction>, UniPoly<RationalFunction>) {
    (poly_as_unipoly(f.num(), var), poly_as_unipoly(f.den(), var))
}

/// Strictly univariate view with rational coefficients; `None` when another
/// variable occurs.
pub fn poly_as_univariate(p: &MultiPoly, var: &str) -> Option<UniPoly<Rational>> {
    if p.vars().iter().any(|v| v != var) {
        return None;
    }
    let coeffs = coeffs_in(p, var)
        .into_iter()
        .map(|c| c.as_constant())
        .collect::<Option<Vec<_>>>()?;
    Some(UniPoly::from_coeffs(coeffs))
}

/// Rebuilds a univariate rational-coefficient polynomial as a `MultiPoly`.
pub fn univariate_as_poly(p: &UniPoly<Rational>, var: &str) -> MultiPoly {
    let terms: Vec<(Rational, Vec<u32>)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), vec![i as u32]))
        .collect();
    let borrowed: Vec<(Rational, &[u32])> =
        terms.iter().map(|(c, e)| (c.clone(), e.as_slice())).collect();
    MultiPoly::from_terms(&[var], &borrowed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn round_trip_bivariate() {
        // p = x y^2 + (x + 1) y + 3, viewed in y
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let p = x
            .mul(&y.pow(2))
            .add(&x.add(&MultiPoly::one()).mul(&y))
            .add(&MultiPoly::constant(q(3)));
        let u = poly_as_unipoly(&p, "y");
        assert_eq!(u.degree(), Some(2));
        assert_eq!(u.coeff(2), RationalFunction::from_poly(x.clone()));
        assert_eq!(u.coeff(0), RationalFunction::from_int(3));
        let back = unipoly_as_ratfun(&u, "y");
        assert_eq!(back, RationalFunction::from_poly(p));
    }

    #[test]
    fn univariate_round_trip() {
        let x = MultiPoly::var("x");
        let p = x.pow(3).scale(&q(2)).add(&MultiPoly::constant(q(-5)));
        let u = poly_as_univariate(&p, "x").unwrap();
        assert_eq!(univariate_as_poly(&u, "x"), p);
        // A bivariate polynomial is rejected.
        let bi = x.mul(&MultiPoly::var("y"));
        assert!(poly_as_univariate(&bi, "x").is_none());
    }
}
