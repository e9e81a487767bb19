//! Randomized algebraic invariants for Ore operators: the noncommutative
//! product must be associative and must realize composition of actions, and
//! the differential-to-recurrence conversion must produce relations that the
//! coefficient sequences of actual solutions satisfy.

use exact_core::{poly_as_univariate, MultiPoly, Rational, RationalFunction};
use ore_ops::{ode_to_rec, Generator, OreAlgebraSpec, OreOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x0513_90f7)
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[&str], degree: u32) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for _ in 0..4 {
        let c = Rational::from_int(rng.gen_range(-3..=3));
        if c.is_zero() {
            continue;
        }
        let exps: Vec<u32> = vars.iter().map(|_| rng.gen_range(0..=degree)).collect();
        let term = MultiPoly::from_terms(vars, &[(c, exps.as_slice())]);
        acc = acc.add(&term);
    }
    acc
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng, vars: &[&str], degree: u32) -> MultiPoly {
    loop {
        let p = random_poly(rng, vars, degree);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_operator(rng: &mut ChaCha8Rng, spec: &OreAlgebraSpec, vars: &[&str]) -> OreOperator {
    let order = rng.gen_range(0..=2);
    let mut coeffs = Vec::new();
    for _ in 0..=order {
        coeffs.push(RationalFunction::from_poly(random_poly(rng, vars, 2)));
    }
    OreOperator::new(spec.clone(), coeffs)
}

fn random_ratfun(rng: &mut ChaCha8Rng, vars: &[&str]) -> RationalFunction {
    let num = random_poly(rng, vars, 2);
    let den = random_nonzero_poly(rng, vars, 1);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

#[test]
fn multiplication_is_associative() {
    let mut rng = rng();
    for spec in [OreAlgebraSpec::shift_in("n"), OreAlgebraSpec::derivation_in("x")] {
        let vars: &[&str] = match spec.generator() {
            Generator::Shift => &["n"],
            Generator::Derivation => &["x", "y"],
        };
        for _ in 0..25 {
            let a = random_operator(&mut rng, &spec, vars);
            let b = random_operator(&mut rng, &spec, vars);
            let c = random_operator(&mut rng, &spec, vars);
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(left.coeffs(), right.coeffs());
        }
    }
}

#[test]
fn product_realizes_composition_of_actions() {
    let mut rng = rng();
    for spec in [OreAlgebraSpec::shift_in("n"), OreAlgebraSpec::derivation_in("x")] {
        let vars: &[&str] = match spec.generator() {
            Generator::Shift => &["n"],
            Generator::Derivation => &["x", "y"],
        };
        for _ in 0..25 {
            let a = random_operator(&mut rng, &spec, vars);
            let b = random_operator(&mut rng, &spec, vars);
            let f = random_ratfun(&mut rng, vars);
            let composed = a.mul(&b).unwrap().apply(&f);
            let sequential = a.apply(&b.apply(&f));
            assert_eq!(composed, sequential);
        }
    }
}

#[test]
fn distributes_over_addition() {
    let mut rng = rng();
    let spec = OreAlgebraSpec::shift_in("n");
    for _ in 0..25 {
        let a = random_operator(&mut rng, &spec, &["n"]);
        let b = random_operator(&mut rng, &spec, &["n"]);
        let c = random_operator(&mut rng, &spec, &["n"]);
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(left.coeffs(), right.coeffs());
    }
}

/// For a polynomial solution `p` of a differential operator, the Taylor
/// coefficient sequence of `p` (padded with zeros) must satisfy the converted
/// recurrence. `p * Dx - p'` annihilates `p` by construction.
#[test]
fn converted_recurrence_holds_on_polynomial_solutions() {
    let mut rng = rng();
    let spec = OreAlgebraSpec::derivation_in("x");
    let mut checked = 0;
    for _ in 0..40 {
        let p = random_nonzero_poly(&mut rng, &["x"], 4);
        if p.derivative("x").is_zero() {
            continue; // constant solutions satisfy every relation trivially
        }
        let annihilator = OreOperator::new(
            spec.clone(),
            vec![
                RationalFunction::from_poly(p.derivative("x").neg()),
                RationalFunction::from_poly(p.clone()),
            ],
        );
        let rec = ode_to_rec(&annihilator, "m").unwrap();
        let taylor = poly_as_univariate(&p, "x").expect("univariate");
        let terms: Vec<Rational> = (0..10).map(|i| taylor.coeff(i)).collect();
        assert_eq!(rec.holds_on(&terms).unwrap(), None);
        checked += 1;
    }
    assert!(checked >= 20);
}
