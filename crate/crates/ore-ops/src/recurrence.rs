//! Linear recurrences with polynomial coefficients and their unrolling.

use std::fmt;
use std::sync::Arc;

use exact_core::{
    nonnegative_integer_roots, poly_as_univariate, MultiPoly, Rational, RationalFunction,
};

use crate::error::{OreError, RhsError};
use crate::operator::{Generator, OreOperator};

/// Evaluator for an inhomogeneous right-hand side at integer indices.
pub type RhsEval = Arc<dyn Fn(i64) -> Result<Rational, RhsError> + Send + Sync>;

/// A relation `sum_i c_i(n) a_{n+i} = rhs(n)` for all `n >= 0`, stored as a
/// shift operator with polynomial coefficients plus an optional evaluator for
/// the right-hand side (`None` means identically zero).
#[derive(Clone)]
pub struct Recurrence {
    operator: OreOperator,
    rhs: Option<RhsEval>,
}

impl Recurrence {
    /// Wraps an annihilating shift operator. Homogeneous relations are
    /// brought to a normal form with polynomial coefficients; inhomogeneous
    /// ones keep the caller's scaling, since rescaling the relation would
    /// rescale the right-hand side behind the evaluator's back.
    pub fn new(operator: OreOperator, rhs: Option<RhsEval>) -> Result<Self, OreError> {
        if operator.spec().generator() != Generator::Shift {
            return Err(OreError::WrongGenerator { expected: "shift" });
        }
        if operator.is_zero() {
            return Err(OreError::ZeroOperator);
        }
        if rhs.is_some() {
            return Ok(Recurrence { operator, rhs });
        }
        Ok(Recurrence {
            operator: homogeneous_normal_form(&operator),
            rhs: None,
        })
    }

    pub fn order(&self) -> usize {
        self.operator.order().expect("nonzero operator")
    }

    pub fn operator(&self) -> &OreOperator {
        &self.operator
    }

    pub fn rhs(&self) -> Option<&RhsEval> {
        self.rhs.as_ref()
    }

    pub fn variable(&self) -> &str {
        self.operator.spec().variable()
    }

    /// Coefficient `c_i` evaluated at integer `n`.
    pub fn coeff_at(&self, i: usize, n: i64) -> Result<Rational, OreError> {
        let c = self.operator.coeff(i);
        Ok(c.eval(&[(self.variable(), Rational::from_int(n))])?)
    }

    /// Checks the relation on a prefix of a concrete sequence: for every
    /// window position `n` with `n + order < terms.len()`, the weighted sum
    /// must match the right-hand side.
    pub fn holds_on(&self, terms: &[Rational]) -> Result<Option<usize>, OreError> {
        let r = self.order();
        if terms.len() <= r {
            return Ok(None);
        }
        for n in 0..=(terms.len() - r - 1) {
            let mut acc = Rational::zero();
            for i in 0..=r {
                let c = self.coeff_at(i, n as i64)?;
                acc = &acc + &(&c * &terms[n + i]);
            }
            let expected = match &self.rhs {
                None => Rational::zero(),
                Some(eval) => eval(n as i64)?,
            };
            if acc != expected {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Produces `count` terms, extending the given initial segment by solving
    /// the relation for its top term. Fails with `SingularIndex` when the
    /// leading coefficient vanishes at the index about to be produced; the
    /// caller can retry with more initial terms.
    pub fn unroll(&self, initial: &[Rational], count: usize) -> Result<Vec<Rational>, OreError> {
        let r = self.order();
        if initial.len() < r {
            return Err(OreError::InsufficientInitialTerms {
                needed: r,
                given: initial.len(),
            });
        }
        let mut out: Vec<Rational> = initial.to_vec();
        if out.len() > count {
            out.truncate(count);
            return Ok(out);
        }
        while out.len() < count {
            let j = out.len();
            let n = (j - r) as i64;
            let lead = self.coeff_at(r, n)?;
            if lead.is_zero() {
                return Err(OreError::SingularIndex { index: j });
            }
            let mut acc = match &self.rhs {
                None => Rational::zero(),
                Some(eval) => eval(n)?,
            };
            for i in 0..r {
                let c = self.coeff_at(i, n)?;
                acc = &acc - &(&c * &out[j - r + i]);
            }
            out.push(&acc / &lead);
        }
        Ok(out)
    }
}

/// Clears denominators, strips common content, and fixes the leading sign.
/// A common polynomial factor is divided out only when it has no root at any
/// index `n >= 0`: the relation `n * a_n = 0` says nothing about `a_0`, while
/// `a_n = 0` would wrongly force it, so dividing by `n` is not an equivalence.
fn homogeneous_normal_form(op: &OreOperator) -> OreOperator {
    let mut den_lcm = MultiPoly::one();
    for c in op.coeffs().iter().filter(|c| !c.is_zero()) {
        den_lcm = MultiPoly::lcm(&den_lcm, c.den()).expect("nonzero denominators");
    }
    let cleared: Vec<MultiPoly> = op
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                MultiPoly::zero()
            } else {
                c.num().mul(&den_lcm.exact_div(c.den()).expect("lcm divides"))
            }
        })
        .collect();
    let mut gcd: Option<MultiPoly> = None;
    for c in cleared.iter().filter(|c| !c.is_zero()) {
        gcd = Some(match gcd {
            None => c.clone(),
            Some(g) => MultiPoly::gcd(&g, c).expect("nonzero"),
        });
    }
    let mut divisor = gcd.expect("nonzero operator");
    let may_vanish = match poly_as_univariate(&divisor, op.spec().variable()) {
        Some(u) => nonnegative_integer_roots(&u).map_or(true, |r| !r.is_empty()),
        // A factor involving another symbol cannot be certified nonvanishing.
        None => true,
    };
    if may_vanish {
        divisor = MultiPoly::constant(divisor.content());
    }
    if cleared.last().expect("nonzero operator").leading_coeff().is_negative() {
        divisor = divisor.neg();
    }
    let coeffs = cleared
        .into_iter()
        .map(|c| RationalFunction::from_poly(c.exact_div(&divisor).expect("content divides")))
        .collect();
    OreOperator::new(op.spec().clone(), coeffs)
}

impl fmt::Debug for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Recurrence")
            .field("operator", &self.operator.to_string())
            .field("rhs", &self.rhs.as_ref().map(|_| "<evaluator>"))
            .finish()
    }
}

/// Convenience constructor used across the workspace: a recurrence from
/// polynomial coefficients given lowest shift first.
pub fn recurrence_from_coeffs(
    variable: &str,
    coeffs: Vec<RationalFunction>,
    rhs: Option<RhsEval>,
) -> Result<Recurrence, OreError> {
    let spec = crate::operator::OreAlgebraSpec::shift_in(variable);
    Recurrence::new(OreOperator::new(spec, coeffs), rhs)
}
