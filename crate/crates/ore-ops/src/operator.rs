//! Skew polynomials in a shift or derivation operator.
//!
//! An operator is a polynomial `c_0 + c_1*G + ... + c_r*G^r` whose
//! coefficients are rational functions in the algebra variable and whose
//! generator `G` does not commute with them. Multiplication follows the
//! commutation rule of the generator:
//!
//! ```text
//! shift:       Sx * c(x) = c(x+1) * Sx
//! derivation:  Dx * c(x) = c(x) * Dx + c'(x)
//! ```
//!
//! Applying an operator to a rational function realizes `G` as the shift
//! `x -> x+1` or the partial derivative in `x` respectively.

use std::fmt;

use exact_core::{MultiPoly, Rational, RationalFunction};

use crate::error::OreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Shift,
    Derivation,
}

/// Names the algebra: which variable the generator acts on and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreAlgebraSpec {
    variable: String,
    generator: Generator,
}

impl OreAlgebraSpec {
    pub fn shift_in(variable: &str) -> Self {
        OreAlgebraSpec { variable: variable.to_string(), generator: Generator::Shift }
    }

    pub fn derivation_in(variable: &str) -> Self {
        OreAlgebraSpec { variable: variable.to_string(), generator: Generator::Derivation }
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    /// Printed name of the generator, e.g. `Sn` or `Dx`.
    pub fn generator_name(&self) -> String {
        match self.generator {
            Generator::Shift => format!("S{}", self.variable),
            Generator::Derivation => format!("D{}", self.variable),
        }
    }

    /// The generator's action on a rational function.
    pub fn act(&self, f: &RationalFunction) -> RationalFunction {
        match self.generator {
            Generator::Shift => f.shift(&self.variable, 1),
            Generator::Derivation => f.derivative(&self.variable),
        }
    }
}

impl fmt::Display for OreAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})[{}]", self.variable, self.generator_name())
    }
}

/// Skew polynomial over one algebra. `coeffs[i]` multiplies the i-th power of
/// the generator; the list never ends in a zero.
#[derive(Debug, Clone, PartialEq)]
pub struct OreOperator {
    spec: OreAlgebraSpec,
    coeffs: Vec<RationalFunction>,
}

impl OreOperator {
    pub fn new(spec: OreAlgebraSpec, mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        OreOperator { spec, coeffs }
    }

    pub fn zero(spec: OreAlgebraSpec) -> Self {
        OreOperator { spec, coeffs: Vec::new() }
    }

    pub fn identity(spec: OreAlgebraSpec) -> Self {
        OreOperator::new(spec, vec![RationalFunction::one()])
    }

    /// The bare generator as an operator.
    pub fn generator(spec: OreAlgebraSpec) -> Self {
        OreOperator::new(spec, vec![RationalFunction::zero(), RationalFunction::one()])
    }

    pub fn spec(&self) -> &OreAlgebraSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalFunction {
        self.coeffs.get(i).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in the generator; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn check_same_algebra(&self, other: &OreOperator) -> Result<(), OreError> {
        if self.spec != other.spec {
            return Err(OreError::AlgebraMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &OreOperator) -> Result<OreOperator, OreError> {
        self.check_same_algebra(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Ok(OreOperator::new(self.spec.clone(), coeffs))
    }

    pub fn sub(&self, other: &OreOperator) -> Result<OreOperator, OreError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OreOperator {
        OreOperator {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(RationalFunction::neg).collect(),
        }
    }

    /// Left multiplication by a rational function.
    pub fn scale(&self, c: &RationalFunction) -> OreOperator {
        if c.is_zero() {
            return OreOperator::zero(self.spec.clone());
        }
        OreOperator {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Noncommutative product `self * other`, using the commutation rule to
    /// move the generator across the right factor's coefficients.
    pub fn mul(&self, other: &OreOperator) -> Result<OreOperator, OreError> {
        self.check_same_algebra(other)?;
        let mut acc = OreOperator::zero(self.spec.clone());
        // gen_power = G^i * other, maintained incrementally.
        let mut gen_power = other.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                gen_power = gen_power.left_apply_generator();
            }
            if !a.is_zero() {
                acc = acc.add(&gen_power.scale(a))?;
            }
        }
        Ok(acc)
    }

    /// `G * self`, one application of the commutation rule.
    fn left_apply_generator(&self) -> OreOperator {
        let var = self.spec.variable.clone();
        let mut coeffs = vec![RationalFunction::zero(); self.coeffs.len() + 1];
        match self.spec.generator {
            Generator::Shift => {
                // S * c(x) G^j = c(x+1) G^(j+1)
                for (j, c) in self.coeffs.iter().enumerate() {
                    coeffs[j + 1] = c.shift(&var, 1);
                }
            }
            Generator::Derivation => {
                // D * c(x) G^j = c(x) G^(j+1) + c'(x) G^j
                for (j, c) in self.coeffs.iter().enumerate() {
                    coeffs[j + 1] = coeffs[j + 1].add(c);
                    coeffs[j] = coeffs[j].add(&c.derivative(&var));
                }
            }
        }
        OreOperator::new(self.spec.clone(), coeffs)
    }

    /// Applies the operator to a rational function (which may involve other
    /// variables; the generator only touches the algebra variable).
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        let mut power = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = self.spec.act(&power);
            }
            if !c.is_zero() {
                acc = acc.add(&c.mul(&power));
            }
        }
        acc
    }

    /// Canonical polynomial form: denominators cleared, the gcd of all
    /// coefficients removed, and the leading coefficient's sign positive.
    /// Returns the normalized operator and the left multiplier `mu` with
    /// `normalized = mu * self`.
    pub fn normalize_with_multiplier(&self) -> (OreOperator, RationalFunction) {
        if self.is_zero() {
            return (self.clone(), RationalFunction::one());
        }
        let mut den_lcm = MultiPoly::one();
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            den_lcm = MultiPoly::lcm(&den_lcm, c.den()).expect("nonzero");
        }
        let cleared: Vec<MultiPoly> = self
            .coeffs
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
        let mut gcd = gcd.expect("nonzero operator");
        let lead = cleared.last().expect("nonzero operator");
        if lead.leading_coeff().is_negative() {
            gcd = gcd.neg();
        }
        let coeffs = cleared
            .into_iter()
            .map(|c| {
                RationalFunction::from_poly(c.exact_div(&gcd).expect("gcd divides"))
            })
            .collect();
        let multiplier = RationalFunction::new(den_lcm, gcd).expect("nonzero gcd");
        (OreOperator::new(self.spec.clone(), coeffs), multiplier)
    }

    pub fn normalize(&self) -> OreOperator {
        self.normalize_with_multiplier().0
    }

    /// True when every coefficient is a polynomial.
    pub fn has_polynomial_coeffs(&self) -> bool {
        self.coeffs.iter().all(RationalFunction::is_polynomial)
    }
}

impl fmt::Display for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let gen = self.spec.generator_name();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // Pull the sign out when the numerator's leading coefficient is
            // negative, so terms read `- (n+2)*Sn` rather than `+ (-n-2)*Sn`.
            let negative = c.num().leading_coeff().is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                // A multi-term constant needs parentheses when a sign was
                // pulled out, so that the sign applies to all of it.
                let atomic = mag.as_constant().is_some()
                    || (mag.is_polynomial() && mag.num().num_terms() == 1);
                if negative && !atomic {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            let power = if i == 1 { gen.clone() } else { format!("{gen}^{i}") };
            match coefficient_atom(&mag) {
                None => write!(f, "{power}")?,
                Some(cs) => write!(f, "{cs}*{power}")?,
            }
        }
        Ok(())
    }
}

/// Renders a coefficient for operator display; `None` means the coefficient
/// is 1 and can be omitted before a generator power.
fn coefficient_atom(c: &RationalFunction) -> Option<String> {
    if let Some(k) = c.as_constant() {
        if k == Rational::one() {
            return None;
        }
        return Some(k.to_string());
    }
    if c.is_polynomial() && c.num().num_terms() == 1 {
        return Some(format!("({})", c.num()));
    }
    Some(format!("({c})"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(p: MultiPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn n_poly() -> MultiPoly {
        MultiPoly::var("n")
    }

    fn shift_n() -> OreAlgebraSpec {
        OreAlgebraSpec::shift_in("n")
    }

    fn deriv_x() -> OreAlgebraSpec {
        OreAlgebraSpec::derivation_in("x")
    }

    #[test]
    fn shift_commutation_rule() {
        // Sn * n = (n+1) * Sn
        let s = OreOperator::generator(shift_n());
        let n = OreOperator::new(shift_n(), vec![rf(n_poly())]);
        let prod = s.mul(&n).unwrap();
        let expected = OreOperator::new(
            shift_n(),
            vec![
                RationalFunction::zero(),
                rf(n_poly().add(&MultiPoly::one())),
            ],
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn derivation_commutation_rule() {
        // Dx * x = x * Dx + 1
        let d = OreOperator::generator(deriv_x());
        let x = OreOperator::new(deriv_x(), vec![rf(MultiPoly::var("x"))]);
        let prod = d.mul(&x).unwrap();
        let expected = OreOperator::new(
            deriv_x(),
            vec![RationalFunction::one(), rf(MultiPoly::var("x"))],
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn constant_coefficient_operators_commute() {
        // (D + 1)(D - 1) = D^2 - 1 = (D - 1)(D + 1)
        let d = OreOperator::generator(deriv_x());
        let one = OreOperator::identity(deriv_x());
        let a = d.add(&one).unwrap();
        let b = d.sub(&one).unwrap();
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        let expected = OreOperator::new(
            deriv_x(),
            vec![
                RationalFunction::from_int(-1),
                RationalFunction::zero(),
                RationalFunction::one(),
            ],
        );
        assert_eq!(ab, expected);
        assert_eq!(ba, expected);
    }

    #[test]
    fn apply_shift_operator() {
        // (Sk - 1) applied to 1/k gives 1/(k+1) - 1/k
        let spec = OreAlgebraSpec::shift_in("k");
        let op = OreOperator::generator(spec.clone())
            .sub(&OreOperator::identity(spec))
            .unwrap();
        let k = MultiPoly::var("k");
        let f = RationalFunction::new(MultiPoly::one(), k.clone()).unwrap();
        let result = op.apply(&f);
        let expected = RationalFunction::new(
            MultiPoly::constant(Rational::from_int(-1)),
            k.mul(&k.add(&MultiPoly::one())),
        )
        .unwrap();
        assert_eq!(result, expected);
    }

    #[test]
    fn apply_derivation_with_spectator_variable() {
        // (2x*Dx + 1) applied to 1/(x + y^2) gives (y^2 - x)/(x + y^2)^2
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let op = OreOperator::new(
            deriv_x(),
            vec![RationalFunction::one(), rf(x.scale(&Rational::from_int(2)))],
        );
        let den = x.add(&y.mul(&y));
        let f = RationalFunction::new(MultiPoly::one(), den.clone()).unwrap();
        let result = op.apply(&f);
        let expected =
            RationalFunction::new(y.mul(&y).sub(&x), den.mul(&den)).unwrap();
        assert_eq!(result, expected);
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a = OreOperator::generator(shift_n());
        let b = OreOperator::generator(deriv_x());
        assert!(matches!(a.mul(&b), Err(OreError::AlgebraMismatch { .. })));
        assert!(matches!(a.add(&b), Err(OreError::AlgebraMismatch { .. })));
    }

    #[test]
    fn normalization_clears_denominators_and_content() {
        // (1/(n+1)) * Sn - (4n+2)/(n+1)  ->  Sn - (4n+2), multiplier n+1
        // then content: gcd(1, 4n+2) = 1, so only denominators clear.
        let n = n_poly();
        let np1 = n.add(&MultiPoly::one());
        let c1 = RationalFunction::new(MultiPoly::one(), np1.clone()).unwrap();
        let c0 = RationalFunction::new(
            n.scale(&Rational::from_int(4)).add(&MultiPoly::constant(Rational::from_int(2))),
            np1.clone(),
        )
        .unwrap()
        .neg();
        let op = OreOperator::new(shift_n(), vec![c0, c1]);
        let (norm, mu) = op.normalize_with_multiplier();
        assert!(norm.has_polynomial_coeffs());
        assert_eq!(norm.coeff(1), RationalFunction::one());
        assert_eq!(mu, rf(np1));
        // The multiplier reproduces the normalized coefficients.
        for i in 0..2 {
            assert_eq!(norm.coeff(i), op.coeff(i).mul(&mu));
        }

        // Common factor and sign: (-2n-2) + (-4n-4)*Sn -> (2n+2... reduced)
        let c0 = rf(n.scale(&Rational::from_int(-2)).sub(&MultiPoly::constant(Rational::from_int(2))));
        let c1 = rf(n.scale(&Rational::from_int(-4)).sub(&MultiPoly::constant(Rational::from_int(4))));
        let op = OreOperator::new(shift_n(), vec![c0, c1]);
        let norm = op.normalize();
        assert_eq!(norm.coeff(0), RationalFunction::from_int(1));
        assert_eq!(norm.coeff(1), RationalFunction::from_int(2));
    }

    #[test]
    fn display_formats() {
        let n = n_poly();
        // Sn^2 - (n+2)*Sn + 1
        let op = OreOperator::new(
            shift_n(),
            vec![
                RationalFunction::one(),
                rf(n.add(&MultiPoly::constant(Rational::from_int(2)))).neg(),
                RationalFunction::one(),
            ],
        );
        assert_eq!(op.to_string(), "Sn^2 - (n + 2)*Sn + 1");

        // (2*x)*Dx + 1
        let op = OreOperator::new(
            deriv_x(),
            vec![
                RationalFunction::one(),
                rf(MultiPoly::var("x").scale(&Rational::from_int(2))),
            ],
        );
        assert_eq!(op.to_string(), "(2*x)*Dx + 1");

        assert_eq!(OreOperator::zero(shift_n()).to_string(), "0");
        assert_eq!(OreOperator::identity(shift_n()).to_string(), "1");
        let s2 = OreOperator::new(
            shift_n(),
            vec![
                RationalFunction::zero(),
                RationalFunction::zero(),
                RationalFunction::from_int(-1),
            ],
        );
        assert_eq!(s2.to_string(), "-Sn^2");
    }
}
