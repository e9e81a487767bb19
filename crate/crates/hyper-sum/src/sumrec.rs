//! From a telescoping identity to a recurrence for the definite sum.
//!
//! A telescoper `sum_i c_i(n) S_n^i` with certificate `R` gives
//! `sum_i c_i(n) f(n+i, k) = g(n, k+1) - g(n, k)` where `g = R * f`. Summing
//! `k` over `0..=n` and moving the staggered upper limits of the shifted sums
//! to `n` yields, for `F(n) = sum_{k=0}^{n} f(n, k)`,
//!
//! ```text
//! sum_i c_i(n) F(n+i)
//!     = g(n, n+1) - g(n, 0)
//!       + sum_{i=1}^{r} c_i(n) sum_{j=1}^{i} f(n+i, n+j).
//! ```
//!
//! The boundary values `g(n, n+1)` and `g(n, 0)` need care: the certificate
//! may have a pole exactly where the summand vanishes (and vice versa), so
//! each boundary value is taken as a limit along the summation direction
//! rather than by plugging in.

use std::sync::Arc;

use exact_core::{poly_as_univariate, MultiPoly, Rational, RationalFunction, UniPoly};
use ore_ops::{Recurrence, RhsError, RhsEval};

use crate::error::HyperError;
use crate::term::HyperTerm;
use crate::zeilberger::{verify_ct_shift, ShiftTelescoperResult};

/// Turns a verified telescoper/certificate pair for `f(n, k)` into a
/// recurrence for the definite sum `F(n) = sum_{k=0}^{n} f(n, k)`, with the
/// boundary contributions collected into the inhomogeneous right-hand side.
///
/// The pair is re-checked against the telescoping identity first; a pair that
/// does not satisfy it is rejected rather than silently producing a wrong
/// recurrence.
pub fn ct_to_sum_recurrence(
    f: &HyperTerm,
    result: &ShiftTelescoperResult,
) -> Result<Recurrence, HyperError> {
    if !verify_ct_shift(f, result) {
        return Err(HyperError::VerificationFailed);
    }
    let rhs = sum_rhs_evaluator(f, result);
    Recurrence::new(result.telescoper.clone(), Some(rhs)).map_err(HyperError::from)
}

/// The right-hand-side evaluator `n -> G(n)` for the definite-sum recurrence.
///
/// Exposed separately so a telescoper/certificate pair can be probed without
/// building the full recurrence; evaluation reports `CertificatePole` for any
/// boundary value that is a genuine pole of `g = R * f`.
pub fn sum_rhs_evaluator(f: &HyperTerm, result: &ShiftTelescoperResult) -> RhsEval {
    let f = f.clone();
    let telescoper = result.telescoper.clone();
    let certificate = result.certificate.clone();
    Arc::new(move |n| {
        inhomogeneous_part(&f, &telescoper, &certificate, n).map_err(RhsError::from)
    })
}

/// Brute-force values of `F(n) = sum_{k=0}^{n} f(n, k)` for
/// `n = 0, ..., count - 1`, summing lattice values directly.
pub fn definite_sum_values(f: &HyperTerm, count: usize) -> Result<Vec<Rational>, HyperError> {
    let mut out = Vec::with_capacity(count);
    for n in 0..count as i64 {
        let mut sum = Rational::zero();
        for k in 0..=n {
            sum = &sum + &f.evaluate(n, k)?;
        }
        out.push(sum);
    }
    Ok(out)
}

/// `G(n)`: telescoping boundary plus the triangle of summand values between
/// the staggered upper limits.
fn inhomogeneous_part(
    f: &HyperTerm,
    telescoper: &ore_ops::OreOperator,
    certificate: &RationalFunction,
    n: i64,
) -> Result<Rational, HyperError> {
    if n < 0 {
        return Err(HyperError::Unsupported(format!(
            "definite sum starts at index 0; right-hand side requested at {n}"
        )));
    }
    let order = telescoper.order().expect("telescoper is nonzero");
    let upper = boundary_value(f, certificate, n, n + 1)?;
    let lower = boundary_value(f, certificate, n, 0)?;
    let mut total = &upper - &lower;
    let n_var = f.n_var();
    for i in 1..=order {
        let c_i = telescoper.coeffs()[i].eval(&[(n_var, Rational::from_int(n))])?;
        if c_i.is_zero() {
            continue;
        }
        let mut inner = Rational::zero();
        for j in 1..=i as i64 {
            inner = &inner + &f.evaluate(n + i as i64, n + j)?;
        }
        total = &total + &(&c_i * &inner);
    }
    Ok(total)
}

/// `g(n0, k0) = R(n0, k0) * f(n0, k0)` as a limit along the summation
/// direction.
///
/// Every factor of `g` is expanded at `k = k0 + t`: the certificate's
/// numerator and denominator directly, and the summand through its value at
/// `(n0, 0)` times the quotients `rho_k(n0, j + t)` for `j = 0, ..., k0 - 1`.
/// The orders of vanishing at `t = 0` are balanced; a positive total order
/// means the zeros win and the value is 0, order zero gives the product of the
/// lowest coefficients, and a negative order is an actual pole of `g`.
fn boundary_value(
    f: &HyperTerm,
    certificate: &RationalFunction,
    n0: i64,
    k0: i64,
) -> Result<Rational, HyperError> {
    let n_var = f.n_var();
    let k_var = f.k_var();
    let cert_num = specialize(certificate.num(), n_var, n0, k_var)?.shift_int(k0);
    let cert_den = specialize(certificate.den(), n_var, n0, k_var)?.shift_int(k0);
    if cert_den.is_zero() {
        return Err(HyperError::CertificatePole { n: n0, k: k0 });
    }
    let step_num = specialize(f.rho_k().num(), n_var, n0, k_var)?;
    let step_den = specialize(f.rho_k().den(), n_var, n0, k_var)?;
    if step_den.is_zero() && k0 > 0 {
        return Err(HyperError::CertificatePole { n: n0, k: k0 });
    }
    // The walk up to (n0, 0) involves no k-shifts and is evaluated exactly; a
    // pole there is not a cancellation the limit could repair.
    let start = match f.evaluate(n0, 0) {
        Err(HyperError::Pole { n, k }) => return Err(HyperError::CertificatePole { n, k }),
        other => other?,
    };
    if cert_num.is_zero() || start.is_zero() {
        return Ok(Rational::zero());
    }
    let (mut order, mut lead) = trailing(&cert_num);
    let (d_order, d_lead) = trailing(&cert_den);
    order -= d_order;
    lead = &(&lead / &d_lead) * &start;
    for j in 0..k0 {
        let num_j = step_num.shift_int(j);
        if num_j.is_zero() {
            return Ok(Rational::zero());
        }
        let (n_ord, n_lead) = trailing(&num_j);
        let (d_ord, d_lead) = trailing(&step_den.shift_int(j));
        order += n_ord - d_ord;
        lead = &lead * &(&n_lead / &d_lead);
    }
    if order > 0 {
        return Ok(Rational::zero());
    }
    if order < 0 {
        return Err(HyperError::CertificatePole { n: n0, k: k0 });
    }
    Ok(lead)
}

/// `p` with the outer variable pinned to `n0`, as a polynomial in the
/// summation variable alone.
fn specialize(
    p: &MultiPoly,
    n_var: &str,
    n0: i64,
    k_var: &str,
) -> Result<UniPoly<Rational>, HyperError> {
    let pinned = p.subst_var(n_var, &Rational::from_int(n0));
    poly_as_univariate(&pinned, k_var).ok_or_else(|| {
        HyperError::Unsupported(
            "certificate involves variables besides the recurrence and summation indices".into(),
        )
    })
}

/// Order of vanishing at 0 and the coefficient of the lowest power, for a
/// nonzero polynomial.
fn trailing(p: &UniPoly<Rational>) -> (i64, Rational) {
    let ord = p
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    (ord as i64, p.coeff(ord))
}
