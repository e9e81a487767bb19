//! From a linear ODE with polynomial coefficients to the recurrence its
//! power-series coefficients satisfy.
//!
//! A term `x^a * D^b` acting on `y = sum c_m x^m` shifts coefficient indices
//! by `s = b - a` and weighs them with the falling factorial
//! `ff(m, b) = m (m-1) ... (m-b+1)`:
//!
//! ```text
//! [x^u] (x^a D^b y) = ff(u - a + b, b) * c_{u + (b - a)}
//! ```
//!
//! Collecting by shift and reindexing so the lowest shift becomes 0 yields a
//! relation valid at every window position `n >= 0` (for negative indices the
//! falling factorial vanishes, so those windows degenerate to `0 = 0`; their
//! leading coefficients then vanish too, which unrolling reports as singular
//! indices so callers can provide the affected terms directly).

use std::collections::BTreeMap;

use exact_core::{MultiPoly, RationalFunction};

use crate::error::OreError;
use crate::operator::{Generator, OreAlgebraSpec, OreOperator};
use crate::recurrence::Recurrence;

/// Converts an annihilating differential operator for a power series into a
/// recurrence for the series coefficients, in the sequence variable
/// `seq_var`.
pub fn ode_to_rec(operator: &OreOperator, seq_var: &str) -> Result<Recurrence, OreError> {
    if operator.spec().generator() != Generator::Derivation {
        return Err(OreError::WrongGenerator { expected: "derivation" });
    }
    if operator.is_zero() {
        return Err(OreError::ZeroOperator);
    }
    let normalized = operator.normalize();
    let x = normalized.spec().variable().to_string();
    let m = MultiPoly::var(seq_var);

    // shift -> coefficient polynomial in the sequence variable
    let mut by_shift: BTreeMap<i64, MultiPoly> = BTreeMap::new();
    for (b, coeff) in normalized.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        debug_assert!(coeff.is_polynomial());
        let poly = coeff.num();
        let var_names: Vec<&str> = poly.vars().iter().map(String::as_str).collect();
        let x_idx = poly.vars().iter().position(|v| v == &x);
        for (mono, c) in poly.terms() {
            let a = x_idx.map_or(0, |idx| i64::from(mono.0[idx]));
            let s = b as i64 - a;
            // Any factor of the term beyond the x-power rides along unchanged.
            let mut rest_exps = mono.0.clone();
            if let Some(idx) = x_idx {
                rest_exps[idx] = 0;
            }
            let rest = MultiPoly::from_terms(&var_names, &[(c.clone(), &rest_exps)]);
            // ff(m + s, b) as a polynomial in m
            let mut ff = rest;
            for u in 0..b as i64 {
                ff = ff.mul(&m.add(&MultiPoly::constant((s - u).into())));
            }
            let entry = by_shift.remove(&s).unwrap_or_else(MultiPoly::zero);
            let sum = entry.add(&ff);
            if !sum.is_zero() {
                by_shift.insert(s, sum);
            }
        }
    }

    let s_min = *by_shift.keys().next().expect("nonzero operator has a nonzero shift band");
    let s_max = *by_shift.keys().next_back().unwrap();
    let order = (s_max - s_min) as usize;

    // Reindex: coefficient i of the recurrence is C_{s_min + i}(n - s_min).
    let coeffs: Vec<RationalFunction> = (0..=order)
        .map(|i| {
            match by_shift.get(&(s_min + i as i64)) {
                None => RationalFunction::zero(),
                Some(c) => RationalFunction::from_poly(c.shift(seq_var, -s_min)),
            }
        })
        .collect();
    Recurrence::new(OreOperator::new(OreAlgebraSpec::shift_in(seq_var), coeffs), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn rf(p: MultiPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn deriv_x() -> OreAlgebraSpec {
        OreAlgebraSpec::derivation_in("x")
    }

    #[test]
    fn exponential_series() {
        // Dx - 1 annihilates e^x: (n+1) a_{n+1} - a_n = 0
        let op = OreOperator::new(
            deriv_x(),
            vec![RationalFunction::from_int(-1), RationalFunction::one()],
        );
        let rec = ode_to_rec(&op, "n").unwrap();
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.operator().to_string(), "(n + 1)*Sn - 1");
        // 1, 1, 1/2, 1/6, 1/24
        let terms = rec.unroll(&[q(1)], 5).unwrap();
        assert_eq!(terms[3], Rational::frac(1, 6));
        assert_eq!(terms[4], Rational::frac(1, 24));
    }

    #[test]
    fn euler_operator() {
        // x*Dx annihilates constants: the order-0 relation n a_n = 0
        let x = MultiPoly::var("x");
        let op = OreOperator::new(deriv_x(), vec![RationalFunction::zero(), rf(x)]);
        let rec = ode_to_rec(&op, "n").unwrap();
        assert_eq!(rec.order(), 0);
        assert_eq!(rec.operator().to_string(), "n");
        // Unrolling from index 0 must immediately report the singular index.
        let err = rec.unroll(&[], 3).unwrap_err();
        assert_eq!(err, OreError::SingularIndex { index: 0 });
        // With a_0 supplied, every later term is forced to zero.
        let terms = rec.unroll(&[q(7)], 4).unwrap();
        assert_eq!(terms, vec![q(7), q(0), q(0), q(0)]);
    }

    #[test]
    fn geometric_series_with_ratio_two() {
        // (1-2x) Dx - 2 annihilates 1/(1-2x): a_{n+1} = 2 a_n after content
        // removal.
        let x = MultiPoly::var("x");
        let one_minus_2x = MultiPoly::one().sub(&x.scale(&q(2)));
        let op = OreOperator::new(
            deriv_x(),
            vec![RationalFunction::from_int(-2), rf(one_minus_2x)],
        );
        let rec = ode_to_rec(&op, "n").unwrap();
        assert_eq!(rec.operator().to_string(), "Sn - 2");
        let terms = rec.unroll(&[q(1)], 6).unwrap();
        assert_eq!(terms[5], q(32));
    }

    #[test]
    fn negative_shift_band() {
        // (1-x)(1-2x) Dx - 1 = (2x^2 - 3x + 1) Dx - 1 annihilates
        // exp of the integral; its coefficient recurrence has order 2:
        // 2n a_n - (3n+4) a_{n+1} + (n+2) a_{n+2} = 0.
        let x = MultiPoly::var("x");
        let poly = x
            .pow(2)
            .scale(&q(2))
            .sub(&x.scale(&q(3)))
            .add(&MultiPoly::one());
        let op = OreOperator::new(
            deriv_x(),
            vec![RationalFunction::from_int(-1), rf(poly)],
        );
        let rec = ode_to_rec(&op, "n").unwrap();
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.operator().to_string(), "(n + 2)*Sn^2 - (3*n + 4)*Sn + 2*n");
        // (1-x)/(1-2x) = 1 + x + 2x^2 + 4x^3 + ... satisfies it
        let series = vec![q(1), q(1), q(2), q(4), q(8), q(16), q(32)];
        assert_eq!(rec.holds_on(&series).unwrap(), None);
    }

    #[test]
    fn wrong_generator_rejected() {
        let op = OreOperator::generator(OreAlgebraSpec::shift_in("n"));
        assert!(matches!(
            ode_to_rec(&op, "n"),
            Err(OreError::WrongGenerator { .. })
        ));
    }
}
