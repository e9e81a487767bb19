//! Nonnegative integer roots of univariate rational-coefficient polynomials.
//!
//! Degrees are small here but coefficients can be huge, so candidates in the
//! Cauchy-bound range are first filtered by evaluation modulo two word-size
//! primes and only survivors are checked exactly.

use num::bigint::BigInt;
use num::traits::{Signed, ToPrimitive, Zero};
use num::Integer;

use crate::error::CoreError;
use crate::rational::Rational;
use crate::unipoly::UniPoly;

const SCAN_LIMIT: u64 = 10_000_000;
const FILTER_PRIMES: [u64; 2] = [1_000_000_007, 998_244_353];

/// All integer roots `>= 0` of a nonzero polynomial, sorted ascending.
/// Fails only when the root bound is astronomically large and the constant
/// term resists factoring, which cannot happen for the shift quotients this
/// crate family works with.
pub fn nonnegative_integer_roots(p: &UniPoly<Rational>) -> Result<Vec<i64>, CoreError> {
    if p.is_zero() {
        return Err(CoreError::Domain("root search on the zero polynomial".into()));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }

    // Clear denominators to integer coefficients.
    let mut den_lcm = BigInt::from(1);
    for c in p.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut coeffs: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();

    let mut roots = Vec::new();
    // A power of X contributes the root 0.
    let trailing_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if trailing_zeros > 0 {
        roots.push(0);
        coeffs.drain(..trailing_zeros);
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }

    // Cauchy bound: every root has magnitude <= 1 + max |a_i| / |a_d|.
    let lead = coeffs.last().unwrap().abs();
    let max_abs = coeffs.iter().map(num::Signed::abs).max().unwrap();
    let bound_big: BigInt = (max_abs / &lead) + 2;
    let bound = bound_big.to_u64().unwrap_or(u64::MAX);

    if bound <= SCAN_LIMIT {
        scan_range(&coeffs, 1..=bound, &mut roots);
    } else {
        // Fall back to divisors of the constant term when it factors over
        // small primes.
        let candidates = divisor_candidates(&coeffs[0], bound)
            .ok_or_else(|| CoreError::Domain("integer root search out of range".into()))?;
        for r in candidates {
            if eval_exact(&coeffs, r).is_zero() {
                roots.push(r as i64);
            }
        }
        roots.sort_unstable();
    }
    Ok(roots)
}

fn scan_range(
    coeffs: &[BigInt],
    range: std::ops::RangeInclusive<u64>,
    roots: &mut Vec<i64>,
) {
    let residues: Vec<Vec<u64>> = FILTER_PRIMES
        .iter()
        .map(|&m| coeffs.iter().map(|c| to_residue(c, m)).collect())
        .collect();
    'cand: for r in range {
        for (residue_coeffs, &m) in residues.iter().zip(FILTER_PRIMES.iter()) {
            if horner_mod(residue_coeffs, r % m, m) != 0 {
                continue 'cand;
            }
        }
        if eval_exact(coeffs, r).is_zero() {
            roots.push(r as i64);
        }
    }
}

/// All divisors of `c` up to `bound`, or `None` when `c` has a prime factor
/// beyond the trial-division range (making complete enumeration infeasible).
fn divisor_candidates(c: &BigInt, bound: u64) -> Option<Vec<u64>> {
    let mut n = c.abs();
    let mut prime_powers: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while &n > &BigInt::from(1) && p <= 1_000_000 {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            prime_powers.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if &n > &BigInt::from(1) {
        // One large prime cofactor can itself be a divisor candidate.
        if let Some(cof) = n.to_u64() {
            prime_powers.push((cof, 1));
        } else {
            return None;
        }
    }
    let mut divisors: Vec<u64> = vec![1];
    for (p, e) in prime_powers {
        let mut extended = Vec::new();
        for &d in &divisors {
            let mut pk = 1u64;
            for _ in 0..e {
                let Some(next) = pk.checked_mul(p) else { break };
                pk = next;
                let Some(v) = d.checked_mul(pk) else { break };
                if v <= bound {
                    extended.push(v);
                }
            }
        }
        divisors.extend(extended);
        if divisors.len() > 200_000 {
            return None;
        }
    }
    divisors.sort_unstable();
    divisors.dedup();
    Some(divisors)
}

fn to_residue(c: &BigInt, m: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

fn horner_mod(coeffs: &[u64], x: u64, m: u64) -> u64 {
    let mut acc: u128 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * u128::from(x) + u128::from(c)) % u128::from(m);
    }
    acc as u64
}

fn eval_exact(coeffs: &[BigInt], r: u64) -> BigInt {
    let x = BigInt::from(r);
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}
