//! The diagonal as a contour integral of a bivariate rational function.
//!
//! Substituting `(x1, x2) -> (z, x/z)` into `sum a_{mn} x1^m x2^n` yields
//! `sum a_{mn} x^n z^{m-n}`: the `z`-free row collects exactly the
//! equal-index coefficients. Dividing by one more `z` moves that row to the
//! residue, so `diag F = (1/2πi) ∮ F(z, x/z) dz/z` over a circle small
//! enough to enclose only the poles that collapse into the origin as
//! `x -> 0`. Any telescoper of the cleared integrand annihilates every
//! contour integral of it — the certificate is again rational, and exact
//! derivatives integrate to zero over closed contours — so no root
//! classification is needed downstream.

use exact_core::{MultiPoly, Rational, RationalFunction};

/// Clears `F(z, x/z)/z` to a ratio of polynomials in `(x, z)`. With `t` the
/// larger `x2`-degree of numerator and denominator, each cleared part maps
/// `c·x1^i·x2^j` to `c·x^j·z^{i+t-j}`, and the extra contour `z` joins the
/// denominator:
///
/// ```text
/// G(x, z) = (p(z, x/z) z^t) / (q(z, x/z) z^{t+1})
/// ```
pub fn diagonal_integrand(
    f: &RationalFunction,
    x1: &str,
    x2: &str,
    x: &str,
    z: &str,
) -> RationalFunction {
    let t = f
        .num()
        .degree_in(x2)
        .unwrap_or(0)
        .max(f.den().degree_in(x2).unwrap_or(0));
    let num = laurent_cleared(f.num(), x1, x2, x, z, t);
    let den = laurent_cleared(f.den(), x1, x2, x, z, t).mul(&MultiPoly::var(z));
    RationalFunction::new(num, den).expect("denominator stays nonzero under substitution")
}

/// `p(z, x/z) z^t` as a polynomial in `(x, z)`; requires `t >= deg_{x2} p`.
fn laurent_cleared(p: &MultiPoly, x1: &str, x2: &str, x: &str, z: &str, t: u32) -> MultiPoly {
    let vars = p.vars();
    let pos1 = vars.iter().position(|v| v == x1);
    let pos2 = vars.iter().position(|v| v == x2);
    let mapped: Vec<(Rational, Vec<u32>)> = p
        .terms()
        .map(|(mono, c)| {
            let i = pos1.map_or(0, |idx| mono.0[idx]);
            let j = pos2.map_or(0, |idx| mono.0[idx]);
            (c.clone(), vec![j, i + t - j])
        })
        .collect();
    let borrowed: Vec<(Rational, &[u32])> =
        mapped.iter().map(|(c, e)| (c.clone(), e.as_slice())).collect();
    MultiPoly::from_terms(&[x, z], &borrowed)
}
