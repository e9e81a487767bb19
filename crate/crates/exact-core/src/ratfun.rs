//! Rational functions as reduced fractions of multivariate polynomials.
//!
//! The canonical form fixes a unique representative: numerator and denominator
//! are coprime, the denominator has coprime integer coefficients, and its
//! leading coefficient in graded lexicographic order is positive. All rational
//! content lives in the numerator, so equality is plain structural equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::CoreError;
use crate::multipoly::MultiPoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Builds `num/den` in canonical form; fails when `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, CoreError> {
        if den.is_zero() {
            return Err(CoreError::Division("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RationalFunction { num: MultiPoly::zero(), den: MultiPoly::one() });
        }
        let g = MultiPoly::gcd(&num, &den)?;
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let (den_prim, factor) = den.primitive_with_factor();
        let num = num.scale(&factor.recip()?);
        Ok(RationalFunction { num, den: den_prim })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction { num: p, den: MultiPoly::one() }
    }

    pub fn from_const(c: Rational) -> Self {
        RationalFunction::from_poly(MultiPoly::constant(c))
    }

    pub fn from_var(name: &str) -> Self {
        RationalFunction::from_poly(MultiPoly::var(name))
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction::from_const(Rational::from_int(n))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // a/b + c/d with g = gcd(b, d): numerator a(d/g) + c(b/g) over b(d/g);
        // only a factor of g can still cancel.
        let g = MultiPoly::gcd(&self.den, &other.den).expect("nonzero denominators");
        let db = self.den.exact_div(&g).expect("gcd divides");
        let dd = other.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&dd).add(&other.num.mul(&db));
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = MultiPoly::gcd(&num, &g).expect("nonzero");
        let num = num.exact_div(&h).expect("gcd divides");
        let den = self.den.mul(&dd).exact_div(&h).expect("gcd divides");
        let (den_prim, factor) = den.primitive_with_factor();
        let num = num.scale(&factor.recip().expect("nonzero factor"));
        RationalFunction { num, den: den_prim }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        // Cross-cancel before multiplying to keep intermediates small.
        let g1 = MultiPoly::gcd(&self.num, &other.den).expect("nonzero");
        let g2 = MultiPoly::gcd(&other.num, &self.den).expect("nonzero");
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let (den_prim, factor) = d1.mul(&d2).primitive_with_factor();
        let num = n1.mul(&n2).scale(&factor.recip().expect("nonzero factor"));
        RationalFunction { num, den: den_prim }
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RationalFunction, CoreError> {
        if self.is_zero() {
            return Err(CoreError::Division("reciprocal of zero".into()));
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, CoreError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, exp: i64) -> Result<RationalFunction, CoreError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFunction::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = RationalFunction::mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = RationalFunction::mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// Partial derivative by the quotient rule, reduced.
    pub fn derivative(&self, var: &str) -> RationalFunction {
        let num = self
            .num
            .derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(var)));
        RationalFunction::new(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Substitutes `var -> var + offset` in numerator and denominator.
    pub fn shift(&self, var: &str, offset: i64) -> RationalFunction {
        RationalFunction {
            num: self.num.shift(var, offset),
            den: self.den.shift(var, offset),
        }
    }

    /// Substitutes a rational value for one variable; fails when the
    /// denominator vanishes identically afterwards.
    pub fn subst_var(&self, var: &str, value: &Rational) -> Result<RationalFunction, CoreError> {
        RationalFunction::new(self.num.subst_var(var, value), self.den.subst_var(var, value))
    }

    /// Evaluates at a full assignment; fails at poles.
    pub fn eval(&self, assignment: &[(&str, Rational)]) -> Result<Rational, CoreError> {
        let den = self.den.eval(assignment)?;
        if den.is_zero() {
            return Err(CoreError::Division("evaluation at a pole".into()));
        }
        let num = self.num.eval(assignment)?;
        Ok(num / den)
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().iter().chain(self.den.vars()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn depends_on(&self, var: &str) -> bool {
        self.num.degree_in(var).unwrap_or(0) > 0 || self.den.degree_in(var).unwrap_or(0) > 0
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

macro_rules! forward_rf_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                RationalFunction::$method(self, rhs)
            }
        }

        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                RationalFunction::$method(&self, &rhs)
            }
        }
    };
}

forward_rf_binop!(Add, add);
forward_rf_binop!(Sub, sub);
forward_rf_binop!(Mul, mul);

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics when `rhs` is zero; use [`RationalFunction::div`] for a checked
    /// path.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::div(self, rhs).expect("division by zero rational function")
    }
}

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        &self / &rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(&self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_simple = self.num.num_terms() <= 1;
        let den_simple = self.den.num_terms() <= 1 && self.den.as_constant().is_none();
        match (num_simple, den_simple) {
            (true, true) => write!(f, "{}/{}", self.num, self.den),
            (true, false) => write!(f, "{}/({})", self.num, self.den),
            (false, true) => write!(f, "({})/{}", self.num, self.den),
            (false, false) => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn x() -> MultiPoly {
        MultiPoly::var("x")
    }

    fn y() -> MultiPoly {
        MultiPoly::var("y")
    }

    #[test]
    fn canonical_form() {
        // (x^2 - 1) / (2x + 2) = (x - 1) / 2, content in the numerator
        let num = x().mul(&x()).sub(&MultiPoly::one());
        let den = x().scale(&q(2)).add(&MultiPoly::constant(q(2)));
        let f = RationalFunction::new(num, den).unwrap();
        assert!(f.den().is_one());
        let expected = x().sub(&MultiPoly::one()).scale(&Rational::frac(1, 2));
        assert_eq!(f.num(), &expected);

        // Denominator sign is normalized.
        let g = RationalFunction::new(MultiPoly::one(), x().neg()).unwrap();
        assert_eq!(g.num(), &MultiPoly::constant(q(-1)));
        assert_eq!(g.den(), &x());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(MultiPoly::one(), MultiPoly::zero()).is_err());
    }

    #[test]
    fn field_arithmetic() {
        // 1/x + 1/y = (x + y)/(xy)
        let a = RationalFunction::new(MultiPoly::one(), x()).unwrap();
        let b = RationalFunction::new(MultiPoly::one(), y()).unwrap();
        let sum = &a + &b;
        assert_eq!(sum.num(), &x().add(&y()));
        assert_eq!(sum.den(), &x().mul(&y()));

        // a - a = 0 in canonical form
        assert!((&sum - &sum).is_zero());
        assert!((&sum - &sum).den().is_one());

        // (x/y) * (y/x) = 1
        let p = RationalFunction::new(x(), y()).unwrap();
        let r = RationalFunction::new(y(), x()).unwrap();
        assert_eq!(&p * &r, RationalFunction::one());

        // Division round trip
        let d = &a / &b;
        assert_eq!(&d * &b, a);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/(x + y^2)) = -1/(x + y^2)^2
        let den = x().add(&y().mul(&y()));
        let f = RationalFunction::new(MultiPoly::one(), den.clone()).unwrap();
        let df = f.derivative("x");
        let expected =
            RationalFunction::new(MultiPoly::constant(q(-1)), den.mul(&den)).unwrap();
        assert_eq!(df, expected);
    }

    #[test]
    fn shift_and_eval() {
        // f = k/(k+1); f shifted k -> k+1 is (k+1)/(k+2)
        let k = MultiPoly::var("k");
        let f = RationalFunction::new(k.clone(), k.add(&MultiPoly::one())).unwrap();
        let s = f.shift("k", 1);
        let expected = RationalFunction::new(
            k.add(&MultiPoly::one()),
            k.add(&MultiPoly::constant(q(2))),
        )
        .unwrap();
        assert_eq!(s, expected);

        assert_eq!(f.eval(&[("k", q(3))]).unwrap(), Rational::frac(3, 4));
        assert!(f.eval(&[("k", q(-1))]).is_err());
    }

    #[test]
    fn substitution_can_kill_denominator() {
        // 1/(x - y) at x = y-value collides for equal values
        let f = RationalFunction::new(MultiPoly::one(), x().sub(&y())).unwrap();
        let g = f.subst_var("x", &q(3)).unwrap();
        assert!(g.subst_var("y", &q(3)).is_err());
    }

    #[test]
    fn display() {
        let f = RationalFunction::new(x().add(&MultiPoly::one()), y()).unwrap();
        assert_eq!(f.to_string(), "(x + 1)/y");
        let g = RationalFunction::new(x(), y().add(&MultiPoly::one())).unwrap();
        assert_eq!(g.to_string(), "x/(y + 1)");
    }
}
