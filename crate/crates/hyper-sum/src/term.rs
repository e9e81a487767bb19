//! Bivariate hypergeometric terms represented by their shift quotients.
//!
//! A term `f(n,k)` is hypergeometric when both `f(n+1,k)/f(n,k)` and
//! `f(n,k+1)/f(n,k)` are rational functions. We store exactly these two
//! quotients plus the single value `f(0,0)`, which pins the term down on the
//! whole nonnegative lattice (along pole-free paths). Working with quotients
//! keeps every algorithmic question inside rational-function algebra.
//!
//! Proper terms `p(n,k) c^n d^k prod_i Gamma(alpha_i n + beta_i k +
//! gamma_i)^{e_i}` compile into this representation through the functional
//! equation `Gamma(z+1) = z Gamma(z)`.

use exact_core::{MultiPoly, Rational, RationalFunction};

use crate::error::HyperError;

/// One `Gamma(alpha*n + beta*k + gamma)^exponent` factor of a proper term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaFactor {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: Rational,
    pub exponent: i64,
}

/// Symbolic proper hypergeometric term
/// `p(n,k) * c^n * d^k * prod_i Gamma(alpha_i n + beta_i k + gamma_i)^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperTermExpr {
    pub n_var: String,
    pub k_var: String,
    pub p: MultiPoly,
    pub c: Rational,
    pub d: Rational,
    pub gamma_factors: Vec<GammaFactor>,
}

impl ProperTermExpr {
    /// The binomial coefficient `C(n,k) = Gamma(n+1) / (Gamma(k+1) *
    /// Gamma(n-k+1))`.
    pub fn binomial(n_var: &str, k_var: &str) -> Self {
        ProperTermExpr {
            n_var: n_var.into(),
            k_var: k_var.into(),
            p: MultiPoly::one(),
            c: Rational::one(),
            d: Rational::one(),
            gamma_factors: vec![
                GammaFactor { alpha: 1, beta: 0, gamma: Rational::one(), exponent: 1 },
                GammaFactor { alpha: 0, beta: 1, gamma: Rational::one(), exponent: -1 },
                GammaFactor { alpha: 1, beta: -1, gamma: Rational::one(), exponent: -1 },
            ],
        }
    }
}

/// A bivariate hypergeometric term, pinned down by its two shift quotients
/// and the value at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperTerm {
    n_var: String,
    k_var: String,
    rho_n: RationalFunction,
    rho_k: RationalFunction,
    base: Rational,
}

impl HyperTerm {
    /// Builds a term from its quotients, checking the mixed-shift
    /// compatibility identity
    /// `rho_n(n,k+1) * rho_k(n,k) = rho_k(n+1,k) * rho_n(n,k)`
    /// (both sides are `f(n+1,k+1)/f(n,k)`).
    pub fn new(
        n_var: &str,
        k_var: &str,
        rho_n: RationalFunction,
        rho_k: RationalFunction,
        base: Rational,
    ) -> Result<Self, HyperError> {
        if n_var == k_var {
            return Err(HyperError::Unsupported("identical variable names".into()));
        }
        if rho_n.is_zero() || rho_k.is_zero() {
            return Err(HyperError::Unsupported("zero shift quotient".into()));
        }
        for q in [&rho_n, &rho_k] {
            if q.vars().iter().any(|v| v != n_var && v != k_var) {
                return Err(HyperError::Unsupported(
                    "shift quotient involves a foreign variable".into(),
                ));
            }
        }
        let lhs = rho_n.shift(k_var, 1).mul(&rho_k);
        let rhs = rho_k.shift(n_var, 1).mul(&rho_n);
        if lhs != rhs {
            return Err(HyperError::Incompatible);
        }
        Ok(HyperTerm {
            n_var: n_var.into(),
            k_var: k_var.into(),
            rho_n,
            rho_k,
            base,
        })
    }

    pub fn n_var(&self) -> &str {
        &self.n_var
    }

    pub fn k_var(&self) -> &str {
        &self.k_var
    }

    /// `f(n+1,k) / f(n,k)`.
    pub fn rho_n(&self) -> &RationalFunction {
        &self.rho_n
    }

    /// `f(n,k+1) / f(n,k)`.
    pub fn rho_k(&self) -> &RationalFunction {
        &self.rho_k
    }

    /// `f(0,0)`.
    pub fn base(&self) -> &Rational {
        &self.base
    }

    /// `f(n0,k0)` as the path product `f(0,0) -> (n0,0) -> (n0,k0)`.
    /// A vanishing numerator makes the value 0 and the walk continues, so a
    /// later pole is still reported: `0 * infinity` is not 0.
    pub fn evaluate(&self, n0: i64, k0: i64) -> Result<Rational, HyperError> {
        if n0 < 0 || k0 < 0 {
            return Err(HyperError::Unsupported(
                "evaluation outside the nonnegative lattice".into(),
            ));
        }
        let mut acc = self.base.clone();
        for j in 0..n0 {
            let step = quotient_at(&self.rho_n, &self.n_var, j, &self.k_var, 0)?;
            acc = &acc * &step;
        }
        for j in 0..k0 {
            let step = quotient_at(&self.rho_k, &self.n_var, n0, &self.k_var, j)?;
            acc = &acc * &step;
        }
        Ok(acc)
    }
}

fn quotient_at(
    q: &RationalFunction,
    n_var: &str,
    n: i64,
    k_var: &str,
    k: i64,
) -> Result<Rational, HyperError> {
    let assignment = [
        (n_var, Rational::from_int(n)),
        (k_var, Rational::from_int(k)),
    ];
    let den = q.den().eval(&assignment)?;
    if den.is_zero() {
        return Err(HyperError::Pole { n, k });
    }
    let num = q.num().eval(&assignment)?;
    Ok(&num / &den)
}

/// `Gamma(z + m) / Gamma(z)` as a rational function of the linear argument
/// `z`: a rising factorial for `m >= 0`, the reciprocal of a falling one for
/// `m < 0`.
fn gamma_shift_ratio(z: &MultiPoly, m: i64) -> RationalFunction {
    if m >= 0 {
        let mut prod = MultiPoly::one();
        for i in 0..m {
            prod = prod.mul(&z.add(&MultiPoly::constant(Rational::from_int(i))));
        }
        RationalFunction::from_poly(prod)
    } else {
        let mut prod = MultiPoly::one();
        for i in 1..=(-m) {
            prod = prod.mul(&z.sub(&MultiPoly::constant(Rational::from_int(i))));
        }
        RationalFunction::from_poly(prod)
            .inv()
            .expect("product of distinct linear factors is nonzero")
    }
}

/// `Gamma(phi + g) / Gamma(phi)` for a concrete rational `phi` that is not a
/// nonpositive integer along the product, so every factor is nonzero.
fn gamma_shift_value(phi: &Rational, g: i64) -> Rational {
    let mut acc = Rational::one();
    if g >= 0 {
        for i in 0..g {
            acc = &acc * &(phi + &Rational::from_int(i));
        }
    } else {
        for i in 1..=(-g) {
            acc = &acc / &(phi - &Rational::from_int(i));
        }
    }
    acc
}

fn factorial(m: i64) -> Rational {
    let mut acc = Rational::one();
    for i in 2..=m {
        acc = &acc * &Rational::from_int(i);
    }
    acc
}

/// Turns a proper term into its shift-quotient representation.
///
/// The quotients come from `Gamma(z + m)/Gamma(z)` telescoping; the base
/// value groups the `Gamma(gamma_i)` by the fractional part of `gamma_i`,
/// since `Gamma` at a non-integer rational is transcendental and only cancels
/// against factors from the same class when their exponents sum to zero.
pub fn compile_proper_term(e: &ProperTermExpr) -> Result<HyperTerm, HyperError> {
    if e.p.is_zero() {
        return Err(HyperError::Unsupported("zero polynomial part".into()));
    }
    if e.c.is_zero() || e.d.is_zero() {
        return Err(HyperError::Unsupported("zero exponential base".into()));
    }
    if e.p.vars().iter().any(|v| v != &e.n_var && v != &e.k_var) {
        return Err(HyperError::Unsupported(
            "polynomial part involves a foreign variable".into(),
        ));
    }

    let p_rf = RationalFunction::from_poly(e.p.clone());
    let mut rho_n = p_rf
        .shift(&e.n_var, 1)
        .div(&p_rf)
        .expect("nonzero polynomial part")
        .scale(&e.c);
    let mut rho_k = p_rf
        .shift(&e.k_var, 1)
        .div(&p_rf)
        .expect("nonzero polynomial part")
        .scale(&e.d);

    let n_poly = MultiPoly::var(&e.n_var);
    let k_poly = MultiPoly::var(&e.k_var);
    for gf in &e.gamma_factors {
        if gf.exponent == 0 {
            continue;
        }
        let z = n_poly
            .scale(&Rational::from_int(gf.alpha))
            .add(&k_poly.scale(&Rational::from_int(gf.beta)))
            .add(&MultiPoly::constant(gf.gamma.clone()));
        let in_n = gamma_shift_ratio(&z, gf.alpha).pow(gf.exponent)?;
        let in_k = gamma_shift_ratio(&z, gf.beta).pow(gf.exponent)?;
        rho_n = rho_n.mul(&in_n);
        rho_k = rho_k.mul(&in_k);
    }

    let base = base_value(e)?;
    HyperTerm::new(&e.n_var, &e.k_var, rho_n, rho_k, base)
}

fn base_value(e: &ProperTermExpr) -> Result<Rational, HyperError> {
    use std::collections::BTreeMap;

    let origin = [
        (e.n_var.as_str(), Rational::zero()),
        (e.k_var.as_str(), Rational::zero()),
    ];
    let mut base = e.p.eval(&origin)?;

    // Group Gamma(gamma_i)^{e_i} by the fractional part of gamma_i.
    let mut classes: BTreeMap<Rational, Vec<(i64, i64)>> = BTreeMap::new();
    for gf in &e.gamma_factors {
        if gf.exponent == 0 {
            continue;
        }
        let floor = Rational::from_bigint(gf.gamma.floor_int());
        let g = floor
            .to_i64()
            .ok_or_else(|| HyperError::Unsupported("Gamma offset out of range".into()))?;
        let phi = &gf.gamma - &floor;
        classes.entry(phi).or_default().push((g, gf.exponent));
    }
    for (phi, members) in classes {
        if phi.is_zero() {
            // Integer arguments: Gamma(g) = (g-1)! and g <= 0 is a pole.
            for (g, exp) in members {
                if g <= 0 {
                    return Err(HyperError::Pole { n: 0, k: 0 });
                }
                base = &base * &factorial(g - 1).pow(exp)?;
            }
        } else {
            // Gamma(phi + g_i)^{e_i} = Gamma(phi)^{sum e_i} * rational; the
            // transcendental part must cancel for the base to be rational.
            let net: i64 = members.iter().map(|(_, exp)| exp).sum();
            if net != 0 {
                return Err(HyperError::Unsupported(
                    "base value is transcendental (unmatched Gamma factors)".into(),
                ));
            }
            for (g, exp) in members {
                base = &base * &gamma_shift_value(&phi, g).pow(exp)?;
            }
        }
    }
    Ok(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &MultiPoly, den: &MultiPoly) -> RationalFunction {
        RationalFunction::new(num.clone(), den.clone()).unwrap()
    }

    fn binom_term() -> HyperTerm {
        compile_proper_term(&ProperTermExpr::binomial("n", "k")).unwrap()
    }

    fn binomial_value(n: i64, k: i64) -> Rational {
        if k < 0 || k > n {
            return Rational::zero();
        }
        let mut acc = Rational::one();
        for i in 0..k {
            acc = &acc * &(&Rational::from_int(n - i) / &Rational::from_int(i + 1));
        }
        acc
    }

    #[test]
    fn binomial_quotients() {
        let t = binom_term();
        let n = MultiPoly::var("n");
        let k = MultiPoly::var("k");
        let one = MultiPoly::one();
        // rho_n = (n+1)/(n+1-k), rho_k = (n-k)/(k+1)
        let expected_n = rf(&n.add(&one), &n.add(&one).sub(&k));
        let expected_k = rf(&n.sub(&k), &k.add(&one));
        assert_eq!(t.rho_n(), &expected_n);
        assert_eq!(t.rho_k(), &expected_k);
        assert!(t.base().is_one());
    }

    #[test]
    fn binomial_quotients_match_factorial_ratios() {
        let t = binom_term();
        for (n, k) in [(0, 0), (3, 1), (5, 2), (7, 7), (9, 4), (12, 0), (10, 9)] {
            let asg = [
                ("n", Rational::from_int(n)),
                ("k", Rational::from_int(k)),
            ];
            let got_n = t.rho_n().eval(&asg).unwrap();
            let expected_n = &binomial_value(n + 1, k) / &binomial_value(n, k);
            assert_eq!(got_n, expected_n, "rho_n at ({n},{k})");
            if k < n {
                let got_k = t.rho_k().eval(&asg).unwrap();
                let expected_k = &binomial_value(n, k + 1) / &binomial_value(n, k);
                assert_eq!(got_k, expected_k, "rho_k at ({n},{k})");
            }
        }
    }

    #[test]
    fn geometric_in_k() {
        let e = ProperTermExpr {
            n_var: "n".into(),
            k_var: "k".into(),
            p: MultiPoly::one(),
            c: Rational::one(),
            d: Rational::from_int(2),
            gamma_factors: vec![],
        };
        let t = compile_proper_term(&e).unwrap();
        assert_eq!(t.rho_n(), &RationalFunction::one());
        assert_eq!(t.rho_k().as_constant(), Some(Rational::from_int(2)));
        assert_eq!(t.evaluate(5, 6).unwrap(), Rational::from_int(64));
    }

    #[test]
    fn k_times_factorial_quotient() {
        // f = k * Gamma(k+1): rho_k = (k+1)^2 / k.
        let e = ProperTermExpr {
            n_var: "n".into(),
            k_var: "k".into(),
            p: MultiPoly::var("k"),
            c: Rational::one(),
            d: Rational::one(),
            gamma_factors: vec![GammaFactor {
                alpha: 0,
                beta: 1,
                gamma: Rational::one(),
                exponent: 1,
            }],
        };
        let t = compile_proper_term(&e).unwrap();
        let k = MultiPoly::var("k");
        let one = MultiPoly::one();
        let expected = rf(&k.add(&one).mul(&k.add(&one)), &k);
        assert_eq!(t.rho_k(), &expected);
        // Oracle: (k+1)*(k+1)! / (k*k!) at integer points.
        for kv in 1..8i64 {
            let num = &Rational::from_int(kv + 1) * &factorial(kv + 1);
            let den = &Rational::from_int(kv) * &factorial(kv);
            let got = t
                .rho_k()
                .eval(&[("n", Rational::zero()), ("k", Rational::from_int(kv))])
                .unwrap();
            assert_eq!(got, &num / &den);
        }
    }

    #[test]
    fn binomial_lattice_values() {
        let t = binom_term();
        assert_eq!(t.evaluate(4, 2).unwrap(), Rational::from_int(6));
        assert_eq!(t.evaluate(3, 5).unwrap(), Rational::zero());
        for n in 0..8i64 {
            for k in 0..=n {
                assert_eq!(t.evaluate(n, k).unwrap(), binomial_value(n, k));
            }
        }
    }

    #[test]
    fn pole_on_path_is_reported() {
        // f = 1/(n-k+1): rho_n = (n-k+1)/(n-k+2), rho_k = (n-k+1)/(n-k).
        let n = MultiPoly::var("n");
        let k = MultiPoly::var("k");
        let shifted = |c: i64| {
            n.sub(&k).add(&MultiPoly::constant(Rational::from_int(c)))
        };
        let rho_n = rf(&shifted(1), &shifted(2));
        let rho_k = rf(&shifted(1), &shifted(0));
        let t = HyperTerm::new("n", "k", rho_n, rho_k, Rational::one()).unwrap();
        assert_eq!(t.evaluate(2, 2).unwrap(), Rational::one());
        assert_eq!(t.evaluate(3, 2).unwrap(), Rational::frac(1, 2));
        match t.evaluate(3, 5) {
            Err(HyperError::Pole { n: 3, k: 3 }) => {}
            other => panic!("expected pole at (3,3), got {other:?}"),
        }
    }

    #[test]
    fn incompatible_quotients_rejected() {
        let rho_n = RationalFunction::from_var("k");
        let rho_k = RationalFunction::one();
        match HyperTerm::new("n", "k", rho_n, rho_k, Rational::one()) {
            Err(HyperError::Incompatible) => {}
            other => panic!("expected incompatibility, got {other:?}"),
        }
    }

    #[test]
    fn gamma_at_nonpositive_integer_is_a_pole() {
        let e = ProperTermExpr {
            n_var: "n".into(),
            k_var: "k".into(),
            p: MultiPoly::one(),
            c: Rational::one(),
            d: Rational::one(),
            gamma_factors: vec![GammaFactor {
                alpha: 1,
                beta: 0,
                gamma: Rational::zero(),
                exponent: 1,
            }],
        };
        match compile_proper_term(&e) {
            Err(HyperError::Pole { n: 0, k: 0 }) => {}
            other => panic!("expected base pole, got {other:?}"),
        }
    }

    #[test]
    fn fractional_gamma_arguments_must_cancel() {
        let half = Rational::frac(1, 2);
        let make = |exps: &[i64]| ProperTermExpr {
            n_var: "n".into(),
            k_var: "k".into(),
            p: MultiPoly::one(),
            c: Rational::one(),
            d: Rational::one(),
            gamma_factors: exps
                .iter()
                .enumerate()
                .map(|(i, &exp)| GammaFactor {
                    alpha: 1,
                    beta: 0,
                    gamma: &half + &Rational::from_int(i as i64),
                    exponent: exp,
                })
                .collect(),
        };
        // Gamma(n + 1/2) alone: transcendental base.
        match compile_proper_term(&make(&[1])) {
            Err(HyperError::Unsupported(_)) => {}
            other => panic!("expected unsupported, got {other:?}"),
        }
        // Gamma(n + 3/2)/Gamma(n + 1/2) = n + 1/2: rational everything.
        let t = compile_proper_term(&make(&[-1, 1])).unwrap();
        assert_eq!(t.base(), &Rational::frac(1, 2));
        let n = MultiPoly::var("n");
        let expected = RationalFunction::from_poly(
            n.add(&MultiPoly::constant(Rational::frac(3, 2))),
        )
        .div(&RationalFunction::from_poly(
            n.add(&MultiPoly::constant(Rational::frac(1, 2))),
        ))
        .unwrap();
        assert_eq!(t.rho_n(), &expected);
    }
}
