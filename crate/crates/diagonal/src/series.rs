//! Brute-force diagonal coefficients by truncated Taylor expansion.
//!
//! With `q(0) != 0`, write `q = q(0)(1 - u)` where `u` has no constant term;
//! then `1/q = (1/q(0)) sum_k u^k`, and every monomial of `u^k` has total
//! degree at least `k`, so truncating all products at total degree `d*N`
//! leaves a finite sum that is exact for every coefficient of total degree
//! up to `d*N` — in particular the diagonal ones through `a_{N,...,N}`.

use exact_core::{MultiPoly, Rational};

use crate::problem::{constant_term, DiagonalProblem};

/// First `n + 1` diagonal coefficients `a_{0,...,0}, ..., a_{n,...,n}` of
/// the Taylor expansion at the origin.
pub fn series_diagonal(problem: &DiagonalProblem, n: usize) -> Vec<Rational> {
    let cap = (problem.dimension() * n) as u32;
    let p = problem.f().num();
    let q = problem.f().den();
    let lead = constant_term(q);
    let u = MultiPoly::one().sub(&q.scale(&lead.recip()));

    let mut inverse = MultiPoly::one();
    let mut power = MultiPoly::one();
    for _ in 1..=cap {
        power = truncate(&power.mul(&u), cap);
        if power.is_zero() {
            break;
        }
        inverse = inverse.add(&power);
    }
    let series = truncate(&p.mul(&inverse), cap).scale(&lead.recip());
    (0..=n)
        .map(|i| diagonal_coefficient(&series, i))
        .collect()
}

/// Drops every term of total degree above `cap`. Dropped terms only ever
/// produce higher-degree terms in later products, so truncating after each
/// multiplication is exact for the retained range.
fn truncate(p: &MultiPoly, cap: u32) -> MultiPoly {
    let vars: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    let kept: Vec<(Rational, &[u32])> = p
        .terms()
        .filter(|(mono, _)| mono.total_degree() <= cap)
        .map(|(mono, c)| (c.clone(), mono.0.as_slice()))
        .collect();
    MultiPoly::from_terms(&vars, &kept)
}

/// Coefficient of the monomial with every variable raised to `index`. A
/// variable the expansion never mentions carries exponent zero throughout,
/// so only index 0 can pick up such terms.
fn diagonal_coefficient(series: &MultiPoly, index: usize) -> Rational {
    let want = index as u32;
    series
        .terms()
        .find(|(mono, _)| mono.0.iter().all(|&e| e == want))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero)
}
