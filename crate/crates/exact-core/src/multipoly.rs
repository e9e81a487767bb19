//! Sparse multivariate polynomials over the rationals.
//!
//! A polynomial stores its variables as a sorted name list and its terms in a
//! map keyed by exponent vector, ordered by graded lexicographic comparison.
//! All binary operations first align the two variable lists, so polynomials
//! built over different variable sets mix freely. Equality is canonical:
//! unused variables never affect comparisons.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::traits::{One, ToPrimitive, Zero};
use num::Integer;

use crate::error::CoreError;
use crate::rational::Rational;

/// Exponent vector of one term. Compared in graded lexicographic order:
/// total degree first, then lexicographically with earlier variables weighing
/// more. Only monomials of polynomials with identical variable lists are
/// comparable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len(), "monomials from different rings");
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs over the given
    /// variables, listed in any order; exponent positions follow the order the
    /// variables are given in. Exponent slices shorter than the variable list
    /// are padded with zeros; like terms are combined.
    pub fn from_terms(vars: &[&str], terms: &[(Rational, &[u32])]) -> Self {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by_key(|&i| vars[i]);
        let var_names: Vec<String> = order.iter().map(|&i| vars[i].to_string()).collect();
        debug_assert!(var_names.windows(2).all(|w| w[0] < w[1]), "duplicate variable");
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (coeff, exps) in terms {
            let mut given = exps.to_vec();
            given.resize(vars.len(), 0);
            let e: Vec<u32> = order.iter().map(|&i| given[i]).collect();
            let mono = Monomial(e);
            let entry = map.remove(&mono).unwrap_or_else(Rational::zero);
            let sum = &entry + coeff;
            if !sum.is_zero() {
                map.insert(mono, sum);
            }
        }
        MultiPoly { vars: var_names, terms: map }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when no variable actually occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (mono, coeff) = self.terms.iter().next().unwrap();
                if mono.total_degree() == 0 {
                    Some(coeff.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in one variable; `None` for the zero polynomial or an unknown
    /// variable name.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let idx = self.vars.iter().position(|v| v == var)?;
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    /// Leading coefficient in graded lexicographic order.
    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .last_key_value()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Remaps both polynomials onto the union of their variable lists.
    pub fn aligned(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut union: Vec<String> = a.vars.iter().chain(b.vars.iter()).cloned().collect();
        union.sort();
        union.dedup();
        (a.embed(&union), b.embed(&union))
    }

    fn embed(&self, union: &[String]) -> MultiPoly {
        if self.vars == union {
            return self.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| union.iter().position(|u| u == v).expect("union contains all variables"))
            .collect();
        let mut terms = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let mut e = vec![0u32; union.len()];
            for (i, &exp) in mono.0.iter().enumerate() {
                e[positions[i]] = exp;
            }
            terms.insert(Monomial(e), coeff.clone());
        }
        MultiPoly { vars: union.to_vec(), terms }
    }

    /// Drops variables that no longer occur in any term.
    fn pruned(mut self) -> MultiPoly {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars: Vec<String> = self
            .vars
            .drain(..)
            .zip(&used)
            .filter_map(|(v, &u)| u.then_some(v))
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| {
                let e: Vec<u32> =
                    m.0.into_iter().zip(&used).filter_map(|(x, &u)| u.then_some(x)).collect();
                (Monomial(e), c)
            })
            .collect();
        MultiPoly { vars, terms }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::aligned(self, other);
        for (mono, coeff) in b.terms {
            let sum = a.terms.remove(&mono).map(|c| &c + &coeff).unwrap_or(coeff);
            if !sum.is_zero() {
                a.terms.insert(mono, sum);
            }
        }
        a.pruned()
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::aligned(self, other);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mono = ma.mul(mb);
                let prod = ca * cb;
                let sum = terms.remove(&mono).map(|c| &c + &prod).unwrap_or(prod);
                if !sum.is_zero() {
                    terms.insert(mono, sum);
                }
            }
        }
        MultiPoly { vars: a.vars, terms }.pruned()
    }

    /// Product truncated to total degree `cap`; the workhorse of power series
    /// arithmetic built on polynomials.
    pub fn mul_truncated(&self, other: &MultiPoly, cap: u32) -> MultiPoly {
        let (a, b) = MultiPoly::aligned(self, other);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            let da = ma.total_degree();
            if da > cap {
                continue;
            }
            for (mb, cb) in &b.terms {
                if da + mb.total_degree() > cap {
                    continue;
                }
                let mono = ma.mul(mb);
                let prod = ca * cb;
                let sum = terms.remove(&mono).map(|c| &c + &prod).unwrap_or(prod);
                if !sum.is_zero() {
                    terms.insert(mono, sum);
                }
            }
        }
        MultiPoly { vars: a.vars, terms }.pruned()
    }

    /// Discards all terms of total degree above `cap`.
    pub fn truncated(&self, cap: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.total_degree() <= cap)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }.pruned()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
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

    /// Exact polynomial division; fails when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, CoreError> {
        if divisor.is_zero() {
            return Err(CoreError::Division("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(MultiPoly::zero());
        }
        let (mut rem, div) = MultiPoly::aligned(self, divisor);
        let (div_mono, div_coeff) = {
            let (m, c) = div.terms.last_key_value().unwrap();
            (m.clone(), c.clone())
        };
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while !rem.terms.is_empty() {
            let (lead_mono, lead_coeff) = {
                let (m, c) = rem.terms.last_key_value().unwrap();
                (m.clone(), c.clone())
            };
            if !div_mono.divides(&lead_mono) {
                return Err(CoreError::Division("leading term not divisible".into()));
            }
            let q_mono = lead_mono.div(&div_mono);
            let q_coeff = &lead_coeff / &div_coeff;
            // rem -= q_term * div
            for (m, c) in &div.terms {
                let mono = q_mono.mul(m);
                let prod = &q_coeff * c;
                let diff = rem.terms.remove(&mono).map(|x| &x - &prod).unwrap_or_else(|| -prod);
                if !diff.is_zero() {
                    rem.terms.insert(mono, diff);
                }
            }
            quot.insert(q_mono, q_coeff);
        }
        Ok(MultiPoly { vars: rem.vars, terms: quot }.pruned())
    }

    /// Rational content: the gcd of all coefficients, nonnegative.
    pub fn content(&self) -> Rational {
        let mut acc = Rational::zero();
        for coeff in self.terms.values() {
            acc = Rational::gcd(&acc, coeff);
        }
        acc
    }

    /// Splits into `(primitive, factor)` with `self = primitive * factor`,
    /// where `primitive` has coprime integer coefficients and a positive
    /// leading coefficient in graded lexicographic order.
    pub fn primitive_with_factor(&self) -> (MultiPoly, Rational) {
        if self.is_zero() {
            return (MultiPoly::zero(), Rational::one());
        }
        let mut factor = self.content();
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        let inv = factor.recip().expect("nonzero content");
        (self.scale(&inv), factor)
    }

    /// Partial derivative.
    pub fn derivative(&self, var: &str) -> MultiPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let e = mono.0[idx];
            if e == 0 {
                continue;
            }
            let mut m = mono.clone();
            m.0[idx] = e - 1;
            terms.insert(m, coeff * &Rational::from_int(i64::from(e)));
        }
        MultiPoly { vars: self.vars.clone(), terms }.pruned()
    }

    /// Substitutes `var -> var + offset`.
    pub fn shift(&self, var: &str, offset: i64) -> MultiPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        if offset == 0 {
            return self.clone();
        }
        let c = Rational::from_int(offset);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let e = mono.0[idx];
            // (v + c)^e expanded with a running binomial coefficient.
            let mut binom = Rational::one();
            let mut c_pow = Rational::one();
            for m in (0..=e).rev() {
                // binom = C(e, m), c_pow = c^(e-m)
                let mut new_mono = mono.clone();
                new_mono.0[idx] = m;
                let add = coeff * &binom * &c_pow;
                let sum = terms.remove(&new_mono).map(|x| &x + &add).unwrap_or(add);
                if !sum.is_zero() {
                    terms.insert(new_mono, sum);
                }
                if m > 0 {
                    binom = &binom * &Rational::from_int(i64::from(m))
                        / &Rational::from_int(i64::from(e - m + 1));
                    c_pow = &c_pow * &c;
                }
            }
        }
        MultiPoly { vars: self.vars.clone(), terms }.pruned()
    }

    /// Substitutes a rational value for one variable.
    pub fn subst_var(&self, var: &str, value: &Rational) -> MultiPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let e = mono.0[idx];
            let scaled = coeff * &value.pow(i64::from(e)).expect("nonnegative power");
            if scaled.is_zero() {
                continue;
            }
            let mut m = mono.clone();
            m.0[idx] = 0;
            let sum = terms.remove(&m).map(|x| &x + &scaled).unwrap_or(scaled);
            if !sum.is_zero() {
                terms.insert(m, sum);
            }
        }
        MultiPoly { vars: self.vars.clone(), terms }.pruned()
    }

    /// Evaluates at a full assignment of the occurring variables.
    pub fn eval(&self, assignment: &[(&str, Rational)]) -> Result<Rational, CoreError> {
        let mut p = self.clone();
        for (var, value) in assignment {
            p = p.subst_var(var, value);
        }
        p.as_constant().ok_or_else(|| {
            CoreError::Domain(format!("unassigned variables remain: {:?}", p.vars))
        })
    }

    /// Greatest common divisor under the content convention: the gcd of the
    /// rational contents times a primitive gcd of the primitive parts, with
    /// positive leading coefficient.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, CoreError> {
        if a.is_zero() && b.is_zero() {
            return Err(CoreError::Domain("gcd(0, 0) is undefined".into()));
        }
        if a.is_zero() {
            let (p, f) = b.primitive_with_factor();
            return Ok(p.scale(&f.abs()));
        }
        if b.is_zero() {
            let (p, f) = a.primitive_with_factor();
            return Ok(p.scale(&f.abs()));
        }
        let (a, b) = MultiPoly::aligned(a, b);
        let (pa, fa) = a.primitive_with_factor();
        let (pb, fb) = b.primitive_with_factor();
        let content_gcd = Rational::gcd(&fa, &fb);
        let g = primitive_gcd(&pa, &pb);
        Ok(g.scale(&content_gcd))
    }

    /// Least common multiple, primitive with positive leading coefficient.
    pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, CoreError> {
        let g = MultiPoly::gcd(a, b)?;
        let prod = a.mul(b);
        let (p, _) = prod.exact_div(&g)?.primitive_with_factor();
        Ok(p)
    }

    /// The product of the distinct irreducible factors involving `var`,
    /// computed as `p / gcd(p, dp/dvar)`.
    pub fn squarefree_part(&self, var: &str) -> Result<MultiPoly, CoreError> {
        if self.is_zero() {
            return Err(CoreError::Domain("squarefree part of zero".into()));
        }
        let d = self.derivative(var);
        if d.is_zero() {
            // Nothing involving var to keep; by convention return the
            // polynomial itself (it is var-free).
            return Ok(self.clone());
        }
        let g = MultiPoly::gcd(self, &d)?;
        self.exact_div(&g)
    }
}

/// Primitive gcd of two nonzero integer-content-free polynomials, computed by
/// a primitive pseudo-remainder sequence in a shared variable.
fn primitive_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    debug_assert!(!a.is_zero() && !b.is_zero());
    // The remainder sequence runs in one shared variable; its length is
    // bounded by the smaller degree, so pick the variable minimizing that.
    let shared = a
        .vars
        .iter()
        .filter(|v| a.degree_in(v).unwrap_or(0) > 0 && b.degree_in(v).unwrap_or(0) > 0)
        .min_by_key(|v| {
            let da = a.degree_in(v).unwrap_or(0);
            let db = b.degree_in(v).unwrap_or(0);
            (da.min(db), da.max(db))
        });
    let Some(var) = shared.cloned() else {
        // No variable occurs in both, so no nonconstant common divisor exists.
        return MultiPoly::one();
    };

    let ca = coeff_content(a, &var);
    let cb = coeff_content(b, &var);
    let ppa = a.exact_div(&ca).expect("content divides");
    let ppb = b.exact_div(&cb).expect("content divides");

    let g = modular_univariate_gcd(&ppa, &ppb, &var)
        .or_else(|| modular_bivariate_gcd(&ppa, &ppb, &var))
        .unwrap_or_else(|| {
        let (mut big, mut small) =
            if ppa.degree_in(&var).unwrap_or(0) >= ppb.degree_in(&var).unwrap_or(0) {
                (ppa, ppb)
            } else {
                (ppb, ppa)
            };
        loop {
            let r = pseudo_rem(&big, &small, &var);
            if r.is_zero() {
                break make_primitive(&small, &var);
            }
            if r.degree_in(&var).unwrap_or(0) == 0 {
                break MultiPoly::one();
            }
            big = small;
            small = make_primitive(&r, &var);
        }
    });

    let content_part = primitive_gcd_or_one(&ca, &cb);
    let (result, _) = g.mul(&content_part).primitive_with_factor();
    result
}

/// Gcd of two integer-primitive univariate polynomials by modular images:
/// monic gcds modulo word-size primes, scaled to the shared leading
/// coefficient, are combined by Chinese remaindering until the symmetric lift
/// stabilizes, then certified by exact division. `None` (multivariate or
/// non-integer input, exhausted primes) falls back to the remainder sequence.
fn modular_univariate_gcd(a: &MultiPoly, b: &MultiPoly, var: &str) -> Option<MultiPoly> {
    let av = integer_coeff_vector(a, var)?;
    let bv = integer_coeff_vector(b, var)?;
    let lc_target = av.last()?.gcd(bv.last()?);
    let mut primes = prime_pool().iter().copied();
    let mut deg_min = usize::MAX;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut last_lift: Option<Vec<BigInt>> = None;
    loop {
        let p = primes.next()?;
        let p_big = BigInt::from(p);
        if (av.last()? % &p_big).is_zero() || (bv.last()? % &p_big).is_zero() {
            continue;
        }
        let image = gcd_mod_p(reduce_mod(&av, p), reduce_mod(&bv, p), p);
        let d = image.len() - 1;
        if d == 0 {
            // A coprime image certifies a trivial gcd of content-free inputs.
            return Some(MultiPoly::one());
        }
        if d > deg_min {
            continue;
        }
        let scale = mod_i64(&lc_target, p);
        let scaled: Vec<i64> = image.iter().map(|c| mul_mod(*c, scale, p)).collect();
        if d < deg_min {
            deg_min = d;
            modulus = p_big;
            residues = scaled.iter().map(|&c| BigInt::from(c)).collect();
        } else {
            let m_inv = inv_mod(mod_i64(&modulus, p), p);
            for (r, &c) in residues.iter_mut().zip(&scaled) {
                let delta = mul_mod(mod_i64(&(BigInt::from(c) - &*r), p), m_inv, p);
                *r += &modulus * BigInt::from(delta);
            }
            modulus *= &p_big;
        }
        let half: BigInt = &modulus >> 1usize;
        let lift: Vec<BigInt> = residues
            .iter()
            .map(|r| if *r > half { r - &modulus } else { r.clone() })
            .collect();
        if last_lift.as_ref() == Some(&lift) {
            if let Some(g) = certified_integer_divisor(a, b, &lift, var) {
                return Some(g);
            }
        }
        last_lift = Some(lift);
    }
}

/// Dense integer coefficients of a univariate polynomial in `var`, lowest
/// first; `None` when another variable occurs or a coefficient is fractional.
fn integer_coeff_vector(p: &MultiPoly, var: &str) -> Option<Vec<BigInt>> {
    let idx = p.vars.iter().position(|v| v == var)?;
    let deg = p.terms.keys().map(|m| m.0[idx]).max()? as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (mono, coeff) in &p.terms {
        if mono.0.iter().enumerate().any(|(i, &e)| i != idx && e > 0) || !coeff.is_integer() {
            return None;
        }
        out[mono.0[idx] as usize] = coeff.numer().clone();
    }
    Some(out)
}

/// Divides the lifted coefficient vector by its content, fixes the sign, and
/// accepts it only when it exactly divides both inputs.
fn certified_integer_divisor(
    a: &MultiPoly,
    b: &MultiPoly,
    lift: &[BigInt],
    var: &str,
) -> Option<MultiPoly> {
    let mut content = BigInt::zero();
    for c in lift {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return None;
    }
    if *lift.last().unwrap() < BigInt::zero() {
        content = -content;
    }
    let mut candidate = MultiPoly::zero();
    let x = MultiPoly::var(var);
    for (e, c) in lift.iter().enumerate() {
        let coeff = Rational::from_bigint(c / &content);
        if !coeff.is_zero() {
            candidate = candidate.add(&x.pow(e as u32).scale(&coeff));
        }
    }
    (a.exact_div(&candidate).is_ok() && b.exact_div(&candidate).is_ok()).then_some(candidate)
}

/// Word-size primes used for modular images, largest first.
fn prime_pool() -> &'static [i64] {
    static POOL: OnceLock<Vec<i64>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut primes = Vec::with_capacity(1024);
        let mut candidate: i64 = (1 << 62) - 1;
        while primes.len() < 1024 {
            if is_prime_i64(candidate) {
                primes.push(candidate);
            }
            candidate -= 2;
        }
        primes
    })
}

/// Deterministic Miller–Rabin primality test for word-size integers.
fn is_prime_i64(n: i64) -> bool {
    const BASES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: i64, mut exp: i64, n: i64) -> i64 {
    let mut acc = 1i64;
    base = base.rem_euclid(n);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

fn mod_i64(n: &BigInt, p: i64) -> i64 {
    n.mod_floor(&BigInt::from(p)).to_i64().expect("word-size remainder")
}

fn mul_mod(a: i64, b: i64, p: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(p as i128)) as i64
}

/// Inverse of `a` modulo the prime `p`, for `a` not divisible by `p`.
fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut old_r, mut r) = (a.rem_euclid(p), p);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a unit");
    old_s.rem_euclid(p)
}

fn reduce_mod(v: &[BigInt], p: i64) -> Vec<i64> {
    v.iter().map(|c| mod_i64(c, p)).collect()
}

/// Monic gcd of two dense polynomials over the prime field, leading entries
/// nonzero, lowest coefficients first.
fn gcd_mod_p(a: Vec<i64>, b: Vec<i64>, p: i64) -> Vec<i64> {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let r = rem_mod_p(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    let inv = inv_mod(*a.last().expect("nonzero input"), p);
    a.iter().map(|c| mul_mod(*c, inv, p)).collect()
}

fn rem_mod_p(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb_inv = inv_mod(*b.last().unwrap(), p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = mul_mod(*r.last().unwrap(), lb_inv, p);
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] - mul_mod(factor, bc, p)).rem_euclid(p);
        }
        r.pop();
        while r.last().is_some_and(|&c| c == 0) {
            r.pop();
        }
    }
    r
}

/// Gcd of two coefficient-content-free integer polynomials in `var` and one
/// parameter variable, by modular evaluation and interpolation: inside each
/// prime field, univariate images at interpolation points are matched to a
/// shared leading coefficient and interpolated in the parameter; the per-prime
/// results are combined by Chinese remaindering until the symmetric lift
/// stabilizes, then certified by exact division. `None` (more parameters,
/// fractional input, exhausted primes) falls back to the remainder sequence.
fn modular_bivariate_gcd(a: &MultiPoly, b: &MultiPoly, var: &str) -> Option<MultiPoly> {
    let mut params: Vec<String> = Vec::new();
    for v in a.vars.iter().chain(b.vars.iter()) {
        if v != var
            && (a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0)
            && !params.contains(v)
        {
            params.push(v.clone());
        }
    }
    if params.len() != 1 {
        return None;
    }
    let param = params.remove(0);
    let am = integer_matrix(a, var, &param)?;
    let bm = integer_matrix(b, var, &param)?;
    // The interpolated object is (gamma / lc(G)) * G for the integer
    // leading-coefficient gcd gamma, so its parameter degree is at most
    // deg(gamma) + min of the input parameter degrees.
    let gamma = MultiPoly::gcd(&lead_coeff_in(a, var), &lead_coeff_in(b, var)).ok()?;
    let gamma_vec = dense_param_vector(&gamma, &param)?;
    let n_points = (gamma.degree_in(&param).unwrap_or(0)
        + a.degree_in(&param)
            .unwrap_or(0)
            .min(b.degree_in(&param).unwrap_or(0))) as usize
        + 1;

    let mut deg_min = usize::MAX;
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut last_lift: Option<Vec<Vec<BigInt>>> = None;
    'primes: for &p in prime_pool() {
        let pa: Vec<Vec<i64>> = am.iter().map(|row| reduce_mod(row, p)).collect();
        let pb: Vec<Vec<i64>> = bm.iter().map(|row| reduce_mod(row, p)).collect();
        if pa.last()?.iter().all(|&c| c == 0) || pb.last()?.iter().all(|&c| c == 0) {
            continue;
        }
        let gp = reduce_mod(&gamma_vec, p);
        let mut xs: Vec<i64> = Vec::new();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut image_deg: Option<usize> = None;
        let mut point: i64 = 0;
        let mut examined = 0usize;
        // Examining a couple of points beyond what interpolation needs guards
        // against an unlucky evaluation where the images share an accidental
        // factor: the honest, lower-degree image at a later point discards
        // the inflated ones.
        let examine_target = n_points + 2;
        while xs.len() < n_points || examined < examine_target {
            if point > examine_target as i64 * 4 + 64 {
                continue 'primes;
            }
            let c = point;
            point += 1;
            if eval_row_mod(pa.last()?, c, p) == 0 || eval_row_mod(pb.last()?, c, p) == 0 {
                continue;
            }
            examined += 1;
            let image = gcd_mod_p(
                pa.iter().map(|row| eval_row_mod(row, c, p)).collect(),
                pb.iter().map(|row| eval_row_mod(row, c, p)).collect(),
                p,
            );
            let d = image.len() - 1;
            if d == 0 {
                // A coprime image certifies a trivial gcd: the leading
                // coefficient of the gcd cannot vanish where the inputs'
                // leading coefficients do not.
                return Some(MultiPoly::one());
            }
            match image_deg {
                Some(best) if d > best => continue,
                Some(best) if d == best => {}
                _ => {
                    image_deg = Some(d);
                    xs.clear();
                    rows.clear();
                }
            }
            if xs.len() < n_points {
                let scale = eval_row_mod(&gp, c, p);
                xs.push(c);
                rows.push(image.iter().map(|&g| mul_mod(g, scale, p)).collect());
            }
        }
        let d_p = image_deg?;
        if d_p > deg_min {
            continue;
        }
        let mut cp: Vec<Vec<i64>> = Vec::with_capacity(d_p + 1);
        for k in 0..=d_p {
            let vals: Vec<i64> = rows.iter().map(|row| row[k]).collect();
            let mut coeffs = newton_interpolate_mod(&xs, &vals, p);
            coeffs.resize(n_points, 0);
            cp.push(coeffs);
        }
        if d_p < deg_min {
            deg_min = d_p;
            modulus = BigInt::from(p);
            residues = cp
                .iter()
                .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
                .collect();
        } else {
            let m_inv = inv_mod(mod_i64(&modulus, p), p);
            for (res_row, new_row) in residues.iter_mut().zip(&cp) {
                for (r, &c) in res_row.iter_mut().zip(new_row) {
                    let delta = mul_mod(mod_i64(&(BigInt::from(c) - &*r), p), m_inv, p);
                    *r += &modulus * BigInt::from(delta);
                }
            }
            modulus *= BigInt::from(p);
        }
        let half: BigInt = &modulus >> 1usize;
        let lift: Vec<Vec<BigInt>> = residues
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| if *r > half { r - &modulus } else { r.clone() })
                    .collect()
            })
            .collect();
        if last_lift.as_ref() == Some(&lift) {
            if let Some(g) = certified_matrix_divisor(a, b, &lift, var, &param) {
                return Some(g);
            }
        }
        last_lift = Some(lift);
    }
    None
}

/// Dense integer coefficients indexed `[var exponent][param exponent]`;
/// `None` when another variable occurs or a coefficient is fractional.
fn integer_matrix(p: &MultiPoly, var: &str, param: &str) -> Option<Vec<Vec<BigInt>>> {
    let vi = p.vars.iter().position(|v| v == var)?;
    let pi = p.vars.iter().position(|v| v == param);
    let dv = p.terms.keys().map(|m| m.0[vi]).max()? as usize;
    let dp = pi.and_then(|i| p.terms.keys().map(|m| m.0[i]).max()).unwrap_or(0) as usize;
    let mut rows = vec![vec![BigInt::zero(); dp + 1]; dv + 1];
    for (mono, coeff) in &p.terms {
        if !coeff.is_integer()
            || mono.0.iter().enumerate().any(|(i, &e)| i != vi && Some(i) != pi && e > 0)
        {
            return None;
        }
        rows[mono.0[vi] as usize][pi.map_or(0, |i| mono.0[i] as usize)] = coeff.numer().clone();
    }
    Some(rows)
}

/// Dense integer coefficients in `param` of a polynomial free of every other
/// variable; constants give a single entry.
fn dense_param_vector(p: &MultiPoly, param: &str) -> Option<Vec<BigInt>> {
    let pi = p.vars.iter().position(|v| v == param);
    let d = pi.and_then(|i| p.terms.keys().map(|m| m.0[i]).max()).unwrap_or(0) as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (mono, coeff) in &p.terms {
        if !coeff.is_integer() {
            return None;
        }
        out[pi.map_or(0, |i| mono.0[i] as usize)] = coeff.numer().clone();
    }
    Some(out)
}

/// Builds the candidate from lifted coefficients `[var exponent][param
/// exponent]`, normalizes it, and accepts it only when it exactly divides
/// both inputs.
fn certified_matrix_divisor(
    a: &MultiPoly,
    b: &MultiPoly,
    lift: &[Vec<BigInt>],
    var: &str,
    param: &str,
) -> Option<MultiPoly> {
    let mut terms: Vec<(Rational, Vec<u32>)> = Vec::new();
    for (k, row) in lift.iter().enumerate() {
        for (d, c) in row.iter().enumerate() {
            if !c.is_zero() {
                terms.push((Rational::from_bigint(c.clone()), vec![d as u32, k as u32]));
            }
        }
    }
    if terms.is_empty() {
        return None;
    }
    let refs: Vec<(Rational, &[u32])> =
        terms.iter().map(|(c, e)| (c.clone(), e.as_slice())).collect();
    let candidate = make_primitive(&MultiPoly::from_terms(&[param, var], &refs), var);
    (a.exact_div(&candidate).is_ok() && b.exact_div(&candidate).is_ok()).then_some(candidate)
}

/// Horner evaluation of a dense coefficient row at an integer point, modulo
/// the prime `p`.
fn eval_row_mod(row: &[i64], c: i64, p: i64) -> i64 {
    row.iter().rev().fold(0i64, |acc, &v| (mul_mod(acc, c, p) + v).rem_euclid(p))
}

/// Coefficients (lowest first) of the unique polynomial through the given
/// points over the prime field, by Newton's divided differences.
fn newton_interpolate_mod(xs: &[i64], ys: &[i64], p: i64) -> Vec<i64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for j in (level..n).rev() {
            let num = (dd[j] - dd[j - 1]).rem_euclid(p);
            let den = (xs[j] - xs[j - level]).rem_euclid(p);
            dd[j] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    let mut coeffs = vec![dd[n - 1]];
    for j in (0..n - 1).rev() {
        let mut next = vec![0i64; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c).rem_euclid(p);
            next[i] = (next[i] - mul_mod(c, xs[j], p)).rem_euclid(p);
        }
        next[0] = (next[0] + dd[j]).rem_euclid(p);
        coeffs = next;
    }
    coeffs
}

fn primitive_gcd_or_one(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_one() || b.is_one() {
        return MultiPoly::one();
    }
    primitive_gcd(a, b)
}

/// Gcd of the coefficients of `p` viewed as univariate in `var`; primitive
/// with positive leading coefficient.
fn coeff_content(p: &MultiPoly, var: &str) -> MultiPoly {
    let coeffs = coeffs_in(p, var);
    let mut acc: Option<MultiPoly> = None;
    for c in coeffs.into_iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.primitive_with_factor().0,
            Some(g) => {
                if g.is_one() {
                    g
                } else {
                    primitive_gcd(&g, &c.primitive_with_factor().0)
                }
            }
        });
    }
    acc.expect("nonzero polynomial")
}

fn make_primitive(p: &MultiPoly, var: &str) -> MultiPoly {
    let c = coeff_content(p, var);
    let q = p.exact_div(&c).expect("content divides");
    let (prim, _) = q.primitive_with_factor();
    prim
}

/// Coefficient list of `p` in `var`, lowest degree first, as polynomials with
/// the same variable list (degree zero in `var`).
pub(crate) fn coeffs_in(p: &MultiPoly, var: &str) -> Vec<MultiPoly> {
    let Some(idx) = p.vars.iter().position(|v| v == var) else {
        return vec![p.clone()];
    };
    let deg = p.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0) as usize;
    let mut out = vec![
        MultiPoly { vars: p.vars.clone(), terms: BTreeMap::new() };
        deg + 1
    ];
    for (mono, coeff) in &p.terms {
        let e = mono.0[idx] as usize;
        let mut m = mono.clone();
        m.0[idx] = 0;
        out[e].terms.insert(m, coeff.clone());
    }
    out.into_iter().map(|q| q.pruned()).collect()
}

/// One full pseudo-remainder step of `a` by `b` in `var`: repeatedly cancels
/// the leading term after cross-multiplying by the divisor's leading
/// coefficient. The result has smaller degree in `var` than `b`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
    let deg_b = b.degree_in(var).expect("nonzero divisor");
    let lead_b = lead_coeff_in(b, var);
    let mut r = a.clone();
    while let Some(deg_r) = r.degree_in(var) {
        if r.is_zero() || deg_r < deg_b {
            break;
        }
        let lead_r = lead_coeff_in(&r, var);
        let shift_mono = MultiPoly::var(var).pow(deg_r - deg_b);
        r = r.mul(&lead_b).sub(&b.mul(&lead_r).mul(&shift_mono));
    }
    r
}

fn lead_coeff_in(p: &MultiPoly, var: &str) -> MultiPoly {
    let coeffs = coeffs_in(p, var);
    coeffs.last().expect("nonzero polynomial").clone()
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = MultiPoly::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let (sign, mag) = if coeff.is_negative() {
                ("-", -coeff)
            } else {
                ("+", coeff.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || mono.total_degree() == 0 {
                parts.push(mag.to_string());
            }
            for (i, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
