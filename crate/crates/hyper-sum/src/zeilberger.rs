//! Zeilberger's algorithm: creative telescoping for definite hypergeometric
//! sums.
//!
//! For a bivariate term `f(n,k)` we look for `c_0(n), ..., c_r(n)`, not all
//! zero, and a certificate `R(n,k)` with
//!
//!   sum_i c_i(n) f(n+i, k) = g(n, k+1) - g(n, k),    g = R * f.
//!
//! Writing `f(n+i,k)/f(n,k)` as `s_i/V` over a common polynomial denominator
//! `V(n,k)`, the left side is `U * (f/V)` with `U = sum_i c_i s_i`, and the
//! term `f/V` has shift quotient `rho_k * V / V(k+1)`. Running Gosper's
//! construction on that quotient over the field Q(n) leads to the single
//! linear problem
//!
//!   z a(k) x(k+1) - b(k-1) x(k) = c(k) * sum_i c_i s_i(k)
//!
//! in the unknowns (coefficients of x, c_0..c_r), solved by a nullspace
//! computation. The order `r` is grown from 0 until a solution with a
//! nontrivial `(c_i)` part appears, so the reported order is minimal among
//! the orders tried.

use exact_core::{
    poly_as_unipoly, unipoly_as_ratfun, MultiPoly, RatMatrix, RationalFunction, UniPoly,
};
use ore_ops::{OreAlgebraSpec, OreOperator};

use crate::error::HyperError;
use crate::gosper::{gp_form, gosper_lhs_column, x_degree_bound};
use crate::term::HyperTerm;

/// A telescoper `P = sum_i c_i(n) Sn^i` with its certificate `R(n,k)`; the
/// certificate term is `g = R * f`.
#[derive(Debug, Clone)]
pub struct ShiftTelescoperResult {
    pub telescoper: OreOperator,
    pub certificate: RationalFunction,
    pub order: usize,
}

/// Finds a minimal-order telescoper with order at most `r_max`.
pub fn zeilberger(f: &HyperTerm, r_max: usize) -> Result<ShiftTelescoperResult, HyperError> {
    for r in 0..=r_max {
        if let Some(result) = try_order(f, r)? {
            return Ok(result);
        }
    }
    Err(HyperError::TelescoperNotFound { r_max })
}

fn try_order(f: &HyperTerm, r: usize) -> Result<Option<ShiftTelescoperResult>, HyperError> {
    let n_var = f.n_var();
    let k_var = f.k_var();

    // Shift ratios t_i = f(n+i,k)/f(n,k) = prod_{j<i} rho_n(n+j,k), written
    // over a common polynomial denominator V as t_i = s_i / V.
    let mut ratios = vec![RationalFunction::one()];
    for i in 0..r {
        let shifted = f.rho_n().shift(n_var, i as i64);
        ratios.push(ratios[i].mul(&shifted));
    }
    let mut v = MultiPoly::one();
    for t in &ratios {
        v = MultiPoly::lcm(&v, t.den())?;
    }
    let s: Vec<MultiPoly> = ratios
        .iter()
        .map(|t| t.num().mul(&v.exact_div(t.den()).expect("lcm divides")))
        .collect();

    // Shift quotient of f/V, and its Gosper-Petkovsek form over Q(n).
    let v_rf = RationalFunction::from_poly(v.clone());
    let r_hat = f
        .rho_k()
        .mul(&v_rf)
        .div(&v_rf.shift(k_var, 1))
        .expect("V is nonzero");
    let num = poly_as_unipoly(r_hat.num(), k_var);
    let den = poly_as_unipoly(r_hat.den(), k_var);
    let gp = gp_form(&num, &den)?;

    let s_uni: Vec<UniPoly<RationalFunction>> =
        s.iter().map(|p| poly_as_unipoly(p, k_var)).collect();
    let du = s_uni
        .iter()
        .filter_map(UniPoly::degree)
        .max()
        .unwrap_or(0) as i64;
    let c_deg = gp.c.degree().map_or(0, |d| d as i64);
    let d = x_degree_bound(&gp.z, &gp.a, &gp.b, c_deg + du);

    // Columns of the homogeneous system: x-coefficient columns from the
    // Gosper equation, then c_i columns carrying -c(k) * s_i(k).
    let x_count = if d < 0 { 0 } else { (d + 1) as usize };
    let mut columns: Vec<UniPoly<RationalFunction>> = (0..x_count)
        .map(|i| gosper_lhs_column(&gp.z, &gp.a, &gp.b, i))
        .collect();
    for si in &s_uni {
        columns.push(gp.c.mul(si).neg());
    }
    let nrows = columns
        .iter()
        .filter_map(UniPoly::degree)
        .max()
        .map_or(1, |x| x + 1);
    let rows: Vec<Vec<RationalFunction>> = (0..nrows)
        .map(|row| columns.iter().map(|p| p.coeff(row)).collect())
        .collect();

    let basis = RatMatrix::from_rows(rows).nullspace();
    let Some(solution) = basis
        .into_iter()
        .find(|v| v[x_count..].iter().any(|c| !c.is_zero()))
    else {
        return Ok(None);
    };

    let x = UniPoly::from_coeffs(solution[..x_count].to_vec());
    let c_coeffs = solution[x_count..].to_vec();

    let spec = OreAlgebraSpec::shift_in(n_var);
    let raw = OreOperator::new(spec, c_coeffs);
    let (telescoper, multiplier) = raw.normalize_with_multiplier();

    // R = b(k-1) x / (c V), rescaled by the same unit as the telescoper.
    let y_num = unipoly_as_ratfun(&gp.b.shift_int(-1).mul(&x), k_var);
    let y_den = unipoly_as_ratfun(&gp.c, k_var).mul(&v_rf);
    let certificate = y_num
        .div(&y_den)
        .expect("c and V are nonzero")
        .mul(&multiplier);

    Ok(Some(ShiftTelescoperResult {
        telescoper,
        certificate,
        order: r,
    }))
}

/// Checks the creative-telescoping identity
/// `sum_i c_i(n) (f(n+i,k)/f(n,k)) = R(n,k+1) rho_k(n,k) - R(n,k)`
/// exactly; a zero telescoper is rejected.
pub fn verify_ct_shift(f: &HyperTerm, res: &ShiftTelescoperResult) -> bool {
    if res.telescoper.is_zero() {
        return false;
    }
    let n_var = f.n_var();
    let k_var = f.k_var();
    let mut lhs = RationalFunction::zero();
    let mut ratio = RationalFunction::one();
    for (i, c) in res.telescoper.coeffs().iter().enumerate() {
        if i > 0 {
            ratio = ratio.mul(&f.rho_n().shift(n_var, (i - 1) as i64));
        }
        lhs = lhs.add(&c.mul(&ratio));
    }
    let rhs = res
        .certificate
        .shift(k_var, 1)
        .mul(f.rho_k())
        .sub(&res.certificate);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{compile_proper_term, ProperTermExpr};
    use exact_core::Rational;

    fn binom_term() -> HyperTerm {
        compile_proper_term(&ProperTermExpr::binomial("n", "k")).unwrap()
    }

    #[test]
    fn binomial_row_sum_telescoper() {
        let f = binom_term();
        let res = zeilberger(&f, 2).unwrap();
        assert_eq!(res.order, 1);
        assert_eq!(res.telescoper.to_string(), "Sn - 2");
        // R = -k/(n+1-k) = k/(k-n-1).
        let n = MultiPoly::var("n");
        let k = MultiPoly::var("k");
        let expected = RationalFunction::new(
            k.clone(),
            k.sub(&n).sub(&MultiPoly::one()),
        )
        .unwrap();
        assert_eq!(res.certificate, expected);
        assert!(verify_ct_shift(&f, &res));
    }

    #[test]
    fn central_binomial_square_telescoper() {
        let mut e = ProperTermExpr::binomial("n", "k");
        for gf in &mut e.gamma_factors {
            gf.exponent *= 2;
        }
        let f = compile_proper_term(&e).unwrap();
        let res = zeilberger(&f, 3).unwrap();
        assert_eq!(res.order, 1);
        assert_eq!(res.telescoper.to_string(), "(n + 1)*Sn - (4*n + 2)");
        assert!(verify_ct_shift(&f, &res));
    }

    #[test]
    fn pure_geometric_needs_no_creativity() {
        // f = 2^k: Gosper already succeeds at fixed n, so the telescoper is
        // the identity operator.
        let e = ProperTermExpr {
            n_var: "n".into(),
            k_var: "k".into(),
            p: MultiPoly::one(),
            c: Rational::one(),
            d: Rational::from_int(2),
            gamma_factors: vec![],
        };
        let f = compile_proper_term(&e).unwrap();
        let res = zeilberger(&f, 1).unwrap();
        assert_eq!(res.order, 0);
        assert_eq!(res.telescoper.to_string(), "1");
        assert_eq!(res.certificate, RationalFunction::one());
        assert!(verify_ct_shift(&f, &res));
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let f = binom_term();
        let mut res = zeilberger(&f, 2).unwrap();
        res.certificate = res.certificate.add(&RationalFunction::one());
        assert!(!verify_ct_shift(&f, &res));
    }

    #[test]
    fn zero_telescoper_is_rejected() {
        let f = binom_term();
        let res = ShiftTelescoperResult {
            telescoper: OreOperator::zero(OreAlgebraSpec::shift_in("n")),
            certificate: RationalFunction::zero(),
            order: 0,
        };
        assert!(!verify_ct_shift(&f, &res));
    }

    #[test]
    fn order_cap_reported_when_nothing_found() {
        // binomial(n,k) has no order-0 telescoper.
        let f = binom_term();
        match zeilberger(&f, 0) {
            Err(HyperError::TelescoperNotFound { r_max: 0 }) => {}
            other => panic!("expected not-found, got {other:?}"),
        }
    }
}
