//! Hermite reduction: writing a rational function as a derivative plus a
//! remainder with squarefree denominator.
//!
//! In the distinguished variable `y`, any rational function `f` splits as
//! `f = D_y g + h` where `h` is proper and its denominator is squarefree.
//! The classical quadratic method peels one multiplicity at a time from a
//! squarefree (Yun) decomposition of the denominator `u * v^m`: Bézout
//! cofactors for the coprime pair `(u*v', v)` split the numerator as
//! `p = B*u*v' + C*v`, and integrating `B*v'/v^m` by parts lowers `m` by one.
//! Coefficients live in the field of rational functions of the remaining
//! variables, so the same code covers integrands with parameters.

use exact_core::{ratfun_as_unipoly_pair, unipoly_as_ratfun, RationalFunction, UniPoly};

/// Outcome of Hermite reduction with respect to one variable: `f = D_y g + h`
/// with `h` proper in that variable and its denominator squarefree.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteReductionResult {
    pub g: RationalFunction,
    pub h: RationalFunction,
}

/// Reduces `f` with respect to `y`: returns `g` and `h` with `f = D_y g + h`,
/// `h` proper in `y` with squarefree denominator. The `y`-polynomial part of
/// `f` is absorbed into `g` by term-wise antidifferentiation.
pub fn hermite_reduce(f: &RationalFunction, y: &str) -> HermiteReductionResult {
    if f.is_zero() {
        return HermiteReductionResult {
            g: RationalFunction::zero(),
            h: RationalFunction::zero(),
        };
    }
    let (num, den) = ratfun_as_unipoly_pair(f, y);
    let lc_inv = RationalFunction::one().div(&den.lc()).expect("nonzero leading coefficient");
    let den = den.monic();
    let num = num.scale(&lc_inv);
    let (poly_part, mut p) = num.div_rem(&den);

    // Dense multiplicity classes: factors[i] collects the squarefree factor
    // of multiplicity i + 1 (trivial classes hold 1).
    let mut factors: Vec<UniPoly<RationalFunction>> = Vec::new();
    for (q, mult) in den.squarefree_decomposition() {
        if factors.len() < mult {
            factors.resize(mult, UniPoly::one());
        }
        factors[mult - 1] = q;
    }
    // The integrated pieces are accumulated as a single `y`-univariate
    // fraction and converted to a rational function just once at the end:
    // building the canonical bivariate form after every peeling step is by
    // far the most expensive part of the loop otherwise.
    let mut g_num = UniPoly::zero();
    let mut g_den = UniPoly::one();
    while factors.len() > 1 {
        let m = factors.len();
        let v = factors.pop().expect("nonempty");
        if v.degree() == Some(0) {
            continue;
        }
        let u = factors
            .iter()
            .enumerate()
            .fold(UniPoly::one(), |acc, (i, q)| acc.mul(&q.pow(i as u32 + 1)));
        // p / (u v^m) = D_y(-B / ((m-1) v^(m-1))) + (C + u B'/(m-1)) / (u v^(m-1))
        // where B (u v') + C v = p; the pair (u v', v) is coprime because v is
        // squarefree and coprime to u.
        let w = u.mul(&v.derivative());
        let (gcd, s, _) = w.extended_gcd(&v);
        debug_assert_eq!(gcd.degree(), Some(0), "u*v' and v must be coprime");
        let b = s.mul(&p).div_rem(&v).1;
        let c = p.sub(&b.mul(&w)).exact_div(&v);
        let scale = RationalFunction::one()
            .div(&RationalFunction::from_int(m as i64 - 1))
            .expect("m >= 2");
        let v_lower = v.pow(m as u32 - 1);
        let piece_num = b.scale(&scale).neg();
        g_num = g_num.mul(&v_lower).add(&piece_num.mul(&g_den));
        g_den = g_den.mul(&v_lower);
        p = c.add(&b.derivative().scale(&scale).mul(&u));
        let last = factors.len() - 1;
        factors[last] = factors[last].mul(&v);
    }
    let mut g = antiderivative(&poly_part, y);
    if !g_num.is_zero() {
        let pieces = unipoly_as_ratfun(&g_num, y)
            .div(&unipoly_as_ratfun(&g_den, y))
            .expect("nonzero denominator");
        g = g.add(&pieces);
    }
    let squarefree_den = factors.pop().unwrap_or_else(UniPoly::one);
    let h = unipoly_as_ratfun(&p, y)
        .div(&unipoly_as_ratfun(&squarefree_den, y))
        .expect("nonzero denominator");
    HermiteReductionResult { g, h }
}

/// Term-wise antiderivative of a `y`-polynomial with rational-function
/// coefficients.
fn antiderivative(p: &UniPoly<RationalFunction>, y: &str) -> RationalFunction {
    let mut coeffs = vec![RationalFunction::zero()];
    for (j, c) in p.coeffs().iter().enumerate() {
        let divided = c
            .div(&RationalFunction::from_int(j as i64 + 1))
            .expect("positive integer");
        coeffs.push(divided);
    }
    unipoly_as_ratfun(&UniPoly::from_coeffs(coeffs), y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::MultiPoly;

    fn rf(p: MultiPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn x() -> MultiPoly {
        MultiPoly::var("x")
    }

    fn y() -> MultiPoly {
        MultiPoly::var("y")
    }

    #[test]
    fn inverse_square_integrates_exactly() {
        // 1/y^2 = D_y(-1/y).
        let f = rf(MultiPoly::one()).div(&rf(y().mul(&y()))).unwrap();
        let res = hermite_reduce(&f, "y");
        let expected_g = rf(MultiPoly::one()).neg().div(&rf(y())).unwrap();
        assert_eq!(res.g, expected_g);
        assert!(res.h.is_zero());
    }

    #[test]
    fn squarefree_input_is_already_reduced() {
        let f = rf(MultiPoly::one()).div(&rf(x().add(&y().mul(&y())))).unwrap();
        let res = hermite_reduce(&f, "y");
        assert!(res.g.is_zero());
        assert_eq!(res.h, f);
    }

    #[test]
    fn double_pole_splits_into_derivative_and_remainder() {
        // -1/(x+y^2)^2 = D_y(-y/(2x(x+y^2))) - 1/(2x(x+y^2)).
        let q = x().add(&y().mul(&y()));
        let f = rf(MultiPoly::one()).neg().div(&rf(q.mul(&q))).unwrap();
        let res = hermite_reduce(&f, "y");
        let two_x_q = MultiPoly::constant(exact_core::Rational::from_int(2)).mul(&x()).mul(&q);
        let expected_g = rf(y()).neg().div(&rf(two_x_q.clone())).unwrap();
        let expected_h = rf(MultiPoly::one()).neg().div(&rf(two_x_q)).unwrap();
        assert_eq!(res.g, expected_g);
        assert_eq!(res.h, expected_h);
        // Reconstruction: f = D_y g + h.
        assert_eq!(res.g.derivative("y").add(&res.h), f);
    }

    #[test]
    fn polynomial_part_is_antidifferentiated() {
        // y^2 + 1/y^3: polynomial part integrates to y^3/3, pole part to
        // -1/(2y^2).
        let y3 = y().mul(&y()).mul(&y());
        let f = rf(y().mul(&y())).add(&rf(MultiPoly::one()).div(&rf(y3)).unwrap());
        let res = hermite_reduce(&f, "y");
        assert!(res.h.is_zero());
        assert_eq!(res.g.derivative("y"), f);
    }

    #[test]
    fn triple_pole_with_parameter_reconstructs() {
        // 1/(y^3 (x + y)^2): a mixed-multiplicity denominator.
        let y3 = y().mul(&y()).mul(&y());
        let xy = x().add(&y());
        let den = y3.mul(&xy).mul(&xy);
        let f = rf(MultiPoly::one()).div(&rf(den)).unwrap();
        let res = hermite_reduce(&f, "y");
        assert_eq!(res.g.derivative("y").add(&res.h), f);
        // The remainder's denominator is squarefree in y: its monic
        // y-univariate view divides y (x + y).
        let sf = exact_core::poly_as_unipoly(&y().mul(&xy), "y");
        let (_, den) = exact_core::ratfun_as_unipoly_pair(&res.h, "y");
        let (_, rem) = sf.div_rem(&den.monic());
        assert!(rem.is_zero());
    }
}
