//! Gosper's algorithm for indefinite hypergeometric summation.
//!
//! Given the shift quotient `r(k) = f(k+1)/f(k)` of a hypergeometric term,
//! decide whether an antidifference `g` with `g(k+1) - g(k) = f(k)` exists in
//! hypergeometric terms, and produce it when it does. The engine is the
//! Gosper–Petkovšek factorization `r = z * (a/b) * (c(k+1)/c(k))` with
//!
//!   gcd(a(k), b(k+j)) = 1 for all integers j >= 0,
//!   gcd(a, c) = 1,  gcd(b, c(k+1)) = 1,
//!
//! which reduces the problem to the polynomial equation
//!
//!   z * a(k) * x(k+1) - b(k-1) * x(k) = c(k),
//!
//! solvable by linear algebra once the degree of `x` is bounded. The
//! certificate is `y(k) = b(k-1) x(k) / c(k)` with `g = y * f`; absence of a
//! polynomial solution proves non-summability. The same machinery runs over
//! any coefficient field, which is what the creative-telescoping layer needs
//! when the coefficients are rational functions of the outer variable.

use exact_core::{
    nonnegative_integer_roots, poly_as_univariate, univariate_as_poly, Field, MultiPoly,
    RatMatrix, Rational, RationalFunction, UniPoly,
};

use crate::error::HyperError;

/// Coefficient fields the Gosper engine can run over: rationals, and
/// rational functions in parameters that can be specialized for root finding.
pub(crate) trait CoefField: Field {
    /// Embeds into the field used by the linear-algebra backend.
    fn lift(&self) -> RationalFunction;
    /// Constant recognition, for integer degree candidates.
    fn as_rational(&self) -> Option<Rational>;
    /// Specializes every symbolic parameter to `point`; `None` on a pole.
    fn sample(&self, point: i64) -> Option<Rational>;
}

impl CoefField for Rational {
    fn lift(&self) -> RationalFunction {
        RationalFunction::from_poly(MultiPoly::constant(self.clone()))
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn sample(&self, _point: i64) -> Option<Rational> {
        Some(self.clone())
    }
}

impl CoefField for RationalFunction {
    fn lift(&self) -> RationalFunction {
        self.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn sample(&self, point: i64) -> Option<Rational> {
        let v = Rational::from_int(point);
        let assignment: Vec<(String, Rational)> =
            self.vars().into_iter().map(|name| (name, v.clone())).collect();
        let borrowed: Vec<(&str, Rational)> = assignment
            .iter()
            .map(|(name, val)| (name.as_str(), val.clone()))
            .collect();
        self.eval(&borrowed).ok()
    }
}

/// Gosper–Petkovšek data over a generic coefficient field; `a`, `b`, `c` are
/// monic and satisfy the coprimality conditions above.
pub(crate) struct UniGpForm<F: Field> {
    pub z: F,
    pub a: UniPoly<F>,
    pub b: UniPoly<F>,
    pub c: UniPoly<F>,
}

/// The same data with the input quotient's variable restored, as published in
/// results.
#[derive(Debug, Clone, PartialEq)]
pub struct GosperPetkovsekForm {
    pub z: Rational,
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
}

/// Outcome of Gosper's algorithm: the Gosper–Petkovšek form always, and the
/// certificate `y` with `g = y * f` exactly when the term is summable.
#[derive(Debug, Clone, PartialEq)]
pub struct GosperResult {
    pub certificate: Option<RationalFunction>,
    pub gp_form: GosperPetkovsekForm,
}

impl GosperResult {
    /// Checks `y(k+1) * r(k) - y(k) = 1`; vacuously true when no certificate
    /// was produced.
    pub fn verify(&self, r: &RationalFunction, var: &str) -> bool {
        match &self.certificate {
            None => true,
            Some(y) => y.shift(var, 1).mul(r).sub(y) == RationalFunction::one(),
        }
    }
}

/// Decides hypergeometric summability of the term with shift quotient `r`.
pub fn gosper(r: &RationalFunction, var: &str) -> Result<GosperResult, HyperError> {
    if r.is_zero() {
        return Err(HyperError::Unsupported("zero shift quotient".into()));
    }
    if r.vars().iter().any(|v| v != var) {
        return Err(HyperError::Unsupported(
            "shift quotient involves a foreign variable".into(),
        ));
    }
    let num = poly_as_univariate(r.num(), var).expect("variable checked");
    let den = poly_as_univariate(r.den(), var).expect("variable checked");
    let gp = gp_form(&num, &den)?;
    let x = solve_gosper_equation(&gp, &UniPoly::one())?;
    let certificate = x.map(|x| {
        let y_num = gp.b.shift_int(-1).mul(&x);
        let y_num: UniPoly<Rational> = y_num;
        RationalFunction::new(
            univariate_as_poly(&y_num, var),
            univariate_as_poly(&gp.c, var),
        )
        .expect("c is nonzero")
    });
    Ok(GosperResult {
        certificate,
        gp_form: GosperPetkovsekForm {
            z: gp.z.clone(),
            a: univariate_as_poly(&gp.a, var),
            b: univariate_as_poly(&gp.b, var),
            c: univariate_as_poly(&gp.c, var),
        },
    })
}

/// Computes the Gosper–Petkovšek form of `num/den` (coprime, both nonzero).
pub(crate) fn gp_form<F: CoefField>(
    num: &UniPoly<F>,
    den: &UniPoly<F>,
) -> Result<UniGpForm<F>, HyperError> {
    assert!(!num.is_zero() && !den.is_zero(), "zero quotient");
    let z = num.lc().div(&den.lc());
    let mut a = num.monic();
    let mut b = den.monic();
    let mut c = UniPoly::one();
    for j in dispersion_shifts(&a, &b)? {
        if j == 0 {
            continue; // coprime input: no shared factor at shift 0
        }
        let g = a.gcd(&b.shift_int(j));
        if g.degree() == Some(0) {
            continue;
        }
        a = a.exact_div(&g);
        b = b.exact_div(&g.shift_int(-j));
        for i in 1..=j {
            c = c.mul(&g.shift_int(-i));
        }
    }
    Ok(UniGpForm { z, a, b, c })
}

/// Integer shifts `j >= 0` at which `a(k)` and `b(k+j)` share a root,
/// computed as the nonnegative integer roots in `j` of the Sylvester
/// resultant `Res_k(a(k), b(k+j))`. Over a parameterized field the resultant
/// is specialized to find candidates, then each candidate is confirmed
/// exactly.
pub(crate) fn dispersion_shifts<F: CoefField>(
    a: &UniPoly<F>,
    b: &UniPoly<F>,
) -> Result<Vec<i64>, HyperError> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok(Vec::new());
    };
    if da == 0 || db == 0 {
        return Ok(Vec::new());
    }
    let det = shift_resultant(a, b);
    if det.is_zero() {
        // The resultant factors as a product of linear polynomials in the
        // shift, so it cannot vanish identically for nonzero inputs.
        return Err(HyperError::Unsupported("degenerate resultant".into()));
    }
    for attempt in 0..64 {
        let point = 1009 + 37 * attempt;
        let mut spec = Vec::with_capacity(det.coeffs().len());
        let mut ok = true;
        for coeff in det.coeffs() {
            match coeff.sample(point) {
                Some(v) => spec.push(v),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let spec = UniPoly::from_coeffs(spec);
        if spec.is_zero() {
            continue;
        }
        let mut confirmed = Vec::new();
        for j in nonnegative_integer_roots(&spec)? {
            if det.eval(&F::from_int(j)).is_zero() {
                confirmed.push(j);
            }
        }
        return Ok(confirmed);
    }
    Err(HyperError::Unsupported(
        "resultant specialization failed".into(),
    ))
}

/// Sylvester resultant of `a(k)` and `b(k+j)` with respect to `k`, as a
/// polynomial in the shift `j`.
fn shift_resultant<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
    let da = a.degree().expect("nonzero");
    let db = b.degree().expect("nonzero");
    let n = da + db;
    // k-coefficients of b(k+j): coefficient of k^t is
    // sum_{m >= t} C(m,t) b_m j^(m-t).
    let mut b_shift: Vec<UniPoly<F>> = Vec::with_capacity(db + 1);
    for t in 0..=db {
        let mut coeffs = Vec::with_capacity(db - t + 1);
        for m in t..=db {
            coeffs.push(b.coeff(m).mul(&F::from_int(binomial_i64(m, t))));
        }
        b_shift.push(UniPoly::from_coeffs(coeffs));
    }
    let zero = UniPoly::zero();
    let mut rows: Vec<Vec<UniPoly<F>>> = Vec::with_capacity(n);
    for i in 0..db {
        let mut row = vec![zero.clone(); n];
        for t in 0..=da {
            row[i + t] = UniPoly::constant(a.coeff(da - t));
        }
        rows.push(row);
    }
    for i in 0..da {
        let mut row = vec![zero.clone(); n];
        for t in 0..=db {
            row[i + t] = b_shift[db - t].clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

fn binomial_i64(m: usize, t: usize) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..t {
        acc = acc * ((m - i) as i64) / ((i + 1) as i64);
    }
    acc
}

/// Fraction-free determinant over the polynomial ring `F[j]`.
fn bareiss_det<F: Field>(mut m: Vec<Vec<UniPoly<F>>>) -> UniPoly<F> {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut negated = false;
    let mut prev = UniPoly::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return UniPoly::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            negated = !negated;
        }
        for r in col + 1..n {
            for c2 in col + 1..n {
                let t = m[col][col].mul(&m[r][c2]).sub(&m[r][col].mul(&m[col][c2]));
                m[r][c2] = t.exact_div(&prev);
            }
            m[r][col] = UniPoly::zero();
        }
        prev = m[col][col].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negated {
        det.neg()
    } else {
        det
    }
}

/// Degree bound for `x` in `z a(k) x(k+1) - b(k-1) x(k) = rhs` with
/// `deg rhs <= rhs_deg`. Negative means no polynomial ansatz is needed.
pub(crate) fn x_degree_bound<F: CoefField>(
    z: &F,
    a: &UniPoly<F>,
    b: &UniPoly<F>,
    rhs_deg: i64,
) -> i64 {
    let big_a = a.scale(z);
    let big_b = b.shift_int(-1);
    let da = big_a.degree().expect("nonzero") as i64;
    let db = big_b.degree().expect("nonzero") as i64;
    if da != db {
        return rhs_deg - da.max(db);
    }
    let m = da;
    let alpha = big_a.lc();
    let beta = big_b.lc();
    if alpha != beta {
        return rhs_deg - m;
    }
    // Leading terms cancel: the difference has degree m + deg(x) - 1, and
    // one extra degree can be annihilated when (B1 - A1)/alpha is a
    // nonnegative integer (B1, A1 the subleading coefficients).
    let mut d = rhs_deg - m + 1;
    let sub = |p: &UniPoly<F>| {
        if m >= 1 {
            p.coeff((m - 1) as usize)
        } else {
            F::zero()
        }
    };
    let candidate = sub(&big_b).sub(&sub(&big_a)).div(&alpha);
    if let Some(q) = candidate.as_rational() {
        if q.is_integer() && !q.is_negative() {
            if let Some(v) = q.to_i64() {
                d = d.max(v);
            }
        }
    }
    d
}

/// Solves `z a(k) x(k+1) - b(k-1) x(k) = c(k) * rhs_factor(k)` for
/// polynomial `x` over the rationals.
fn solve_gosper_equation(
    gp: &UniGpForm<Rational>,
    rhs_factor: &UniPoly<Rational>,
) -> Result<Option<UniPoly<Rational>>, HyperError> {
    let rhs = gp.c.mul(rhs_factor);
    let rhs_deg = rhs.degree().map_or(0, |d| d as i64);
    let d = x_degree_bound(&gp.z, &gp.a, &gp.b, rhs_deg);
    if d < 0 {
        return Ok(None);
    }
    let columns: Vec<UniPoly<Rational>> = (0..=d as usize)
        .map(|i| gosper_lhs_column(&gp.z, &gp.a, &gp.b, i))
        .collect();
    let nrows = columns
        .iter()
        .map(|p| p.degree().map_or(0, |x| x + 1))
        .chain([rhs.degree().map_or(0, |x| x + 1)])
        .max()
        .unwrap_or(1);
    let mut rows = Vec::with_capacity(nrows);
    let mut rhs_vec = Vec::with_capacity(nrows);
    for row in 0..nrows {
        rows.push(columns.iter().map(|p| p.coeff(row).lift()).collect());
        rhs_vec.push(rhs.coeff(row).lift());
    }
    let solution = RatMatrix::from_rows(rows).solve(&rhs_vec);
    Ok(solution.map(|xs| {
        UniPoly::from_coeffs(
            xs.into_iter()
                .map(|v| v.as_constant().expect("constant system"))
                .collect(),
        )
    }))
}

/// The column `z a(k) (k+1)^i - b(k-1) k^i` of the Gosper equation.
pub(crate) fn gosper_lhs_column<F: CoefField>(
    z: &F,
    a: &UniPoly<F>,
    b: &UniPoly<F>,
    i: usize,
) -> UniPoly<F> {
    let ki = UniPoly::monomial(F::one(), i);
    let shifted = ki.shift_int(1);
    a.scale(z).mul(&shifted).sub(&b.shift_int(-1).mul(&ki))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_poly() -> MultiPoly {
        MultiPoly::var("k")
    }

    fn rf_quotient(num: &MultiPoly, den: &MultiPoly) -> RationalFunction {
        RationalFunction::new(num.clone(), den.clone()).unwrap()
    }

    fn constant_poly(c: i64) -> MultiPoly {
        MultiPoly::constant(Rational::from_int(c))
    }

    #[test]
    fn k_times_factorial_is_summable() {
        // r = (k+1)^2 / k, the quotient of k * k!; antidifference k! = f/k.
        let k = k_poly();
        let kp1 = k.add(&MultiPoly::one());
        let r = rf_quotient(&kp1.mul(&kp1), &k);
        let res = gosper(&r, "k").unwrap();
        assert!(res.verify(&r, "k"));
        let y = res.certificate.as_ref().expect("summable");
        assert_eq!(y, &rf_quotient(&MultiPoly::one(), &k));
        // GP form: z = 1, a = k+1, b = 1, c = k.
        assert_eq!(res.gp_form.z, Rational::one());
        assert_eq!(res.gp_form.a, kp1);
        assert_eq!(res.gp_form.b, MultiPoly::one());
        assert_eq!(res.gp_form.c, k);
    }

    #[test]
    fn geometric_is_summable() {
        let r = RationalFunction::from_int(2);
        let res = gosper(&r, "k").unwrap();
        assert_eq!(res.certificate, Some(RationalFunction::one()));
        assert!(res.verify(&r, "k"));
    }

    #[test]
    fn plain_factorial_is_not_summable() {
        let k = k_poly();
        let r = RationalFunction::from_poly(k.add(&MultiPoly::one()));
        let res = gosper(&r, "k").unwrap();
        assert!(res.certificate.is_none());
        // Independent negative oracle: no polynomial x up to degree
        // (bound + 5) solves z a x(k+1) - b(k-1) x = c.
        let num = poly_as_univariate(r.num(), "k").unwrap();
        let den = poly_as_univariate(r.den(), "k").unwrap();
        let gp = gp_form(&num, &den).unwrap();
        let c_deg = gp.c.degree().map_or(0, |d| d as i64);
        let bound = x_degree_bound(&gp.z, &gp.a, &gp.b, c_deg);
        for degree in 0..=(bound + 5).max(5) {
            assert!(
                brute_force_solution(&gp, degree as usize).is_none(),
                "unexpected solution at degree {degree}"
            );
        }
    }

    fn brute_force_solution(
        gp: &UniGpForm<Rational>,
        degree: usize,
    ) -> Option<Vec<Rational>> {
        let columns: Vec<UniPoly<Rational>> = (0..=degree)
            .map(|i| gosper_lhs_column(&gp.z, &gp.a, &gp.b, i))
            .collect();
        let nrows = columns
            .iter()
            .map(|p| p.degree().map_or(0, |x| x + 1))
            .chain([gp.c.degree().map_or(0, |x| x + 1)])
            .max()
            .unwrap();
        let rows: Vec<Vec<RationalFunction>> = (0..nrows)
            .map(|r| columns.iter().map(|p| p.coeff(r).lift()).collect())
            .collect();
        let rhs: Vec<RationalFunction> = (0..nrows).map(|r| gp.c.coeff(r).lift()).collect();
        RatMatrix::from_rows(rows)
            .solve(&rhs)
            .map(|xs| xs.into_iter().map(|x| x.as_constant().unwrap()).collect())
    }

    #[test]
    fn harmonic_like_quotient_is_not_summable() {
        // r = k/(k+1) is the quotient of f = 1/k (defined for k >= 1);
        // the sum of 1/k has no hypergeometric closed form.
        let k = k_poly();
        let r = rf_quotient(&k, &k.add(&MultiPoly::one()));
        let res = gosper(&r, "k").unwrap();
        assert!(res.certificate.is_none());
    }

    #[test]
    fn dispersion_via_resultant() {
        // a = k+4 (root -4), b = k+1: b(k+3) has root -4 too, so shift 3 is
        // in the set; the reversed direction would need shift -3.
        let a = UniPoly::from_coeffs(vec![Rational::from_int(4), Rational::one()]);
        let b = UniPoly::from_coeffs(vec![Rational::one(), Rational::one()]);
        assert_eq!(dispersion_shifts(&a, &b).unwrap(), vec![3]);
        assert_eq!(dispersion_shifts(&b, &a).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn gp_form_reassembles_the_quotient() {
        // r = (k+3)/k: a/b picks up a shifted common factor, pushing content
        // into c. Whatever the split, z (a/b) (c(k+1)/c(k)) must equal r.
        let k = k_poly();
        for (num, den) in [
            (k.add(&constant_poly(3)), k.clone()),
            (k.mul(&k.add(&constant_poly(2))), k.add(&constant_poly(1))),
            (constant_poly(5).mul(&k), k.add(&constant_poly(7))),
        ] {
            let nu = poly_as_univariate(&num, "k").unwrap();
            let de = poly_as_univariate(&den, "k").unwrap();
            let gp = gp_form(&nu, &de).unwrap();
            let z_rf = RationalFunction::from_poly(MultiPoly::constant(gp.z.clone()));
            let a_rf = RationalFunction::from_poly(univariate_as_poly(&gp.a, "k"));
            let b_rf = RationalFunction::from_poly(univariate_as_poly(&gp.b, "k"));
            let c_rf = RationalFunction::from_poly(univariate_as_poly(&gp.c, "k"));
            let rebuilt = z_rf
                .mul(&a_rf)
                .div(&b_rf)
                .unwrap()
                .mul(&c_rf.shift("k", 1))
                .div(&c_rf)
                .unwrap();
            let original = rf_quotient(&num, &den);
            assert_eq!(rebuilt, original);
            // Coprimality conditions of the form.
            let disp = dispersion_shifts(&gp.a, &gp.b).unwrap();
            for j in disp {
                assert_eq!(gp.a.gcd(&gp.b.shift_int(j)).degree(), Some(0));
            }
            assert_eq!(gp.a.gcd(&gp.c).degree().unwrap_or(0), 0);
            assert_eq!(gp.b.gcd(&gp.c.shift_int(1)).degree().unwrap_or(0), 0);
        }
    }
}
