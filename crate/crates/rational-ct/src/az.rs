//! The ansatz method for differential creative telescoping: fix the operator
//! order `r`, posit a certificate of the shape `u/q^r`, and compare
//! coefficients.
//!
//! Writing `f = p/q` proper in `y` and `D_x^i f = p_i / q^(i+1)` with
//! `p_0 = p`, `p_(i+1) = D_x(p_i) q - (i+1) p_i D_x(q)`, the telescoping
//! equation `sum c_i D_x^i f = D_y(u/q^r)` multiplied by `q^(r+1)` becomes
//!
//! ```text
//! sum_i c_i p_i q^(r-i) = D_y(u) q - r u D_y(q),
//! ```
//!
//! a linear system over the coefficient field in the `c_i` and the
//! coefficients of `u`. With `deg_y u` bounded by
//! `s = deg_y p + (r-1) deg_y q`, the system has more unknowns than equations
//! as soon as `r >= deg_y q`, so a telescoper of that order always exists;
//! smaller orders may or may not admit one.

use exact_core::{ratfun_as_unipoly_pair, unipoly_as_ratfun, RatMatrix, RationalFunction, UniPoly};
use ore_ops::{OreAlgebraSpec, OreOperator};

use crate::reduction::DiffTelescoperResult;

/// Searches for a telescoper of order exactly at most `r` by the fixed-order
/// ansatz; `None` when no order-`r` ansatz solution with a nontrivial
/// operator part exists. Guaranteed to succeed for `r >= deg_y q`.
pub fn az_ct(f: &RationalFunction, x: &str, y: &str, r: usize) -> Option<DiffTelescoperResult> {
    let (num, den) = ratfun_as_unipoly_pair(f, y);
    let lc_inv = RationalFunction::one().div(&den.lc()).expect("nonzero");
    let q = den.monic();
    let (poly_part, p) = num.scale(&lc_inv).div_rem(&q);
    let deg_q = q.degree().expect("nonzero denominator");
    if deg_q == 0 || p.is_zero() {
        // With no proper part, f is a y-polynomial over a y-free denominator:
        // it is the y-derivative of its term-wise antiderivative, so the
        // identity operator telescopes it.
        return Some(DiffTelescoperResult {
            telescoper: OreOperator::identity(OreAlgebraSpec::derivation_in(x)),
            certificate: antiderivative_of_polynomial_function(f, y),
            order: 0,
        });
    }

    // p_i = numerator of D_x^i f over q^(i+1).
    let mut p_i = p.clone();
    let q_dx = derivative_in_x(&q, x);
    let q_dy = q.derivative();
    let mut c_columns: Vec<UniPoly<RationalFunction>> = Vec::new();
    for i in 0..=r {
        c_columns.push(p_i.mul(&q.pow((r - i) as u32)));
        let next = derivative_in_x(&p_i, x)
            .mul(&q)
            .sub(&p_i.scale(&RationalFunction::from_int(i as i64 + 1)).mul(&q_dx));
        p_i = next;
    }
    // Degree budget for u: the counting bound deg_y p + (r-1) deg_y q,
    // widened to at least deg_y q - 1 so that a sparse numerator does not
    // starve the certificate (an order-r certificate u/q^r generically needs
    // a full-degree residue numerator). The widening only adds unknowns, so
    // the solvability guarantee at r >= deg_y q is preserved.
    let s = (p.degree().expect("nonzero proper part") as i64 + (r as i64 - 1) * deg_q as i64)
        .max(deg_q as i64 - 1);
    let u_count = if r == 0 { 0 } else { s as usize + 1 };
    let mut u_columns: Vec<UniPoly<RationalFunction>> = Vec::new();
    for j in 0..u_count {
        // Contribution of u_j y^j to D_y(u) q - r u D_y(q), negated onto the
        // left-hand side.
        let monomial = UniPoly::monomial(RationalFunction::one(), j);
        let term = monomial
            .derivative()
            .mul(&q)
            .sub(&monomial.scale(&RationalFunction::from_int(r as i64)).mul(&q_dy));
        u_columns.push(term.neg());
    }
    let height = c_columns
        .iter()
        .chain(&u_columns)
        .filter_map(|col| col.degree())
        .max()
        .map_or(1, |d| d + 1);
    let mut rows: Vec<Vec<RationalFunction>> = vec![Vec::new(); height];
    for col in c_columns.iter().chain(&u_columns) {
        for (j, row) in rows.iter_mut().enumerate() {
            row.push(col.coeff(j));
        }
    }
    let kernel = RatMatrix::from_rows(rows).nullspace();
    let solution = kernel
        .into_iter()
        .find(|v| v[..=r].iter().any(|c| !c.is_zero()))?;
    let spec = OreAlgebraSpec::derivation_in(x);
    let raw = OreOperator::new(spec, solution[..=r].to_vec());
    let (telescoper, multiplier) = raw.normalize_with_multiplier();
    let u = UniPoly::from_coeffs(solution[r + 1..].to_vec());
    let q_pow_r = unipoly_as_ratfun(&q.pow(r as u32), y);
    let mut certificate = unipoly_as_ratfun(&u, y)
        .div(&q_pow_r)
        .expect("nonzero power of denominator")
        .mul(&multiplier);
    if !poly_part.is_zero() {
        // The telescoper applied to the y-polynomial part is again a
        // y-polynomial; its antiderivative joins the certificate.
        let applied = telescoper.apply(&unipoly_as_ratfun(&poly_part, y));
        certificate = certificate.add(&antiderivative_of_polynomial_function(&applied, y));
    }
    let order = telescoper.order().expect("operator part is nonzero");
    Some(DiffTelescoperResult {
        telescoper,
        certificate,
        order,
    })
}

/// Coefficient-wise `x`-derivative of a `y`-polynomial.
fn derivative_in_x(p: &UniPoly<RationalFunction>, x: &str) -> UniPoly<RationalFunction> {
    UniPoly::from_coeffs(p.coeffs().iter().map(|c| c.derivative(x)).collect())
}

/// Term-wise `y`-antiderivative of a rational function whose denominator is
/// free of `y`.
fn antiderivative_of_polynomial_function(f: &RationalFunction, y: &str) -> RationalFunction {
    let (num, den) = ratfun_as_unipoly_pair(f, y);
    debug_assert_eq!(den.degree(), Some(0), "denominator must be free of y");
    let mut coeffs = vec![RationalFunction::zero()];
    for (j, c) in num.coeffs().iter().enumerate() {
        coeffs.push(
            c.div(&RationalFunction::from_int(j as i64 + 1))
                .expect("positive integer"),
        );
    }
    unipoly_as_ratfun(&UniPoly::from_coeffs(coeffs), y)
        .div(&den.coeff(0))
        .expect("nonzero")
}
