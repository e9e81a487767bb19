//! Dense univariate polynomials over an abstract coefficient field.
//!
//! The same code paths drive Euclidean division, gcds and squarefree
//! decomposition over the plain rationals and over rational-function fields,
//! which is what the summation and integration algorithms need: a telescoper
//! computation works in `F[k]` where `F` is a field of rational functions in
//! the surviving variable.

use crate::rational::Rational;
use crate::ratfun::RationalFunction;

/// Minimal field interface. `div` may panic on a zero divisor; callers check.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_int(n: i64) -> Self {
        RationalFunction::from_int(n)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFunction::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        RationalFunction::div(self, other).expect("division by zero")
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies the i-th power.
/// Invariant: the last stored coefficient is nonzero (zero is the empty list).
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn variable() -> Self {
        UniPoly::from_coeffs(vec![F::zero(), F::one()])
    }

    /// `c * X^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of the i-th power, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = UniPoly::one();
        let mut sq = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lc = divisor.lc();
        let mut rem = self.clone();
        let mut quot = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let q = rem.lc().div(&lc);
            let k = dr - dd;
            let mut coeffs = rem.coeffs;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                coeffs[k + j] = coeffs[k + j].sub(&q.mul(b));
            }
            // The leading term cancels exactly.
            coeffs.truncate(dr);
            rem = UniPoly::from_coeffs(coeffs);
            quot[k] = q;
        }
        (UniPoly::from_coeffs(quot), rem)
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = F::one().div(&self.lc());
        self.scale(&inv)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`,
    /// `g` monic (or zero when both inputs are zero).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (UniPoly::zero(), UniPoly::zero(), UniPoly::zero());
        }
        let inv = F::one().div(&r0.lc());
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_int(i as i64)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Substitutes `X -> X + c` for an integer `c`, by Horner evaluation in
    /// the polynomial ring.
    pub fn shift_int(&self, c: i64) -> Self {
        if c == 0 || self.is_zero() {
            return self.clone();
        }
        let x_plus_c = UniPoly::from_coeffs(vec![F::from_int(c), F::one()]);
        let mut acc = UniPoly::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&x_plus_c).add(&UniPoly::constant(coeff.clone()));
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(coeff);
        }
        acc
    }

    /// Squarefree decomposition by Yun's algorithm (characteristic zero):
    /// returns `[(factor_1, 1), ..., (factor_m, m)]` with the factors monic,
    /// squarefree, pairwise coprime, and the product of `factor_i^i` equal to
    /// `self` up to the leading coefficient. Trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let p = self.monic();
        if p.degree() == Some(0) {
            return Vec::new();
        }
        let dp = p.derivative();
        let g = p.gcd(&dp);
        let mut out = Vec::new();
        if g.degree() == Some(0) {
            return vec![(p, 1)];
        }
        let mut w = p.exact_div(&g);
        let mut y = dp.exact_div(&g);
        let mut i = 1;
        loop {
            let z = y.sub(&w.derivative());
            if z.is_zero() {
                if w.degree() != Some(0) {
                    out.push((w.monic(), i));
                }
                break;
            }
            let f = w.gcd(&z);
            if f.degree() != Some(0) {
                out.push((f.clone(), i));
            }
            w = w.exact_div(&f);
            y = z.exact_div(&f);
            i += 1;
        }
        out
    }
}
