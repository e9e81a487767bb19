//! Reduction-based creative telescoping for bivariate rational functions.
//!
//! For `f(x, y)` rational, each `x`-derivative reduces to
//! `D_x^i f = D_y g_i + h_i` with `h_i` proper and squarefree-denominator in
//! `y`       (Hermite reduction). All the `h_i` live in the finite-dimensional
//! space spanned by `y^j / q*` with `q*` the squarefree part of the
//! denominator, so at latest after `deg_y q*` steps they become linearly
//! dependent over the coefficient field: `sum c_i(x) h_i = 0`. Then
//! `L = sum c_i D_x^i` is a telescoper with certificate `sum c_i g_i`, and its
//! order is at most `deg_y q*`.

use exact_core::{ratfun_as_unipoly_pair, unipoly_as_ratfun, RatMatrix, RationalFunction, UniPoly};
use ore_ops::{OreAlgebraSpec, OreOperator};

use crate::hermite::hermite_reduce;

/// A differential telescoper with its certificate: `L·f = D_y g` exactly,
/// with `L` polynomial-cleared over the parameter variable.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffTelescoperResult {
    pub telescoper: OreOperator,
    pub certificate: RationalFunction,
    pub order: usize,
}

/// The incrementally reduced derivatives of `f`: the remainders' coordinates
/// over the standard basis `{y^j / q*}`, plus the data needed to assemble the
/// accumulated certificates `g_i` on demand.
///
/// Every level works in the `y`-univariate view over the coefficient field.
/// After the first reduction, each remainder is `p_i / q*` with the *same*
/// monic squarefree core `q*`, so its derivative `(p_i' q* - p_i (q*)') / q*^2`
/// needs just one multiplicity peeled — and the Bézout inverse of `D_y q*`
/// modulo `q*` driving that step is computed once for the whole tower. The
/// certificate for `D_x^i f` splits as `D_x^i g_0` plus pieces supported on
/// powers of `q*`; both parts are carried as numerator chains over fixed
/// denominators and only turned into canonical rational functions when a
/// telescoper has been found.
pub(crate) struct ReductionTower {
    pub coordinates: Vec<Vec<RationalFunction>>,
    pub dimension: usize,
    variable: String,
    /// Denominator of the level-0 certificate; `base_nums[i] / base_den^(i+1)`
    /// is `D_x^i g_0`.
    base_den: UniPoly<RationalFunction>,
    base_nums: Vec<UniPoly<RationalFunction>>,
    /// Monic squarefree core `q*`; `tail_nums[i] / q*^i` collects the pieces
    /// integrated while reducing the first `i` derivatives.
    core: UniPoly<RationalFunction>,
    tail_nums: Vec<UniPoly<RationalFunction>>,
}

impl ReductionTower {
    /// Reduces `f, D_x f, ..., D_x^count f`. Differentiating the already
    /// reduced form keeps the work per step small:
    /// `D_x(D_y g + h) = D_y(D_x g) + D_x h`, and only `D_x h` needs a fresh
    /// reduction.
    pub(crate) fn build(f: &RationalFunction, x: &str, y: &str, count: usize) -> ReductionTower {
        let core = squarefree_denominator(f, y);
        let dimension = core.degree().expect("nonzero").max(1);
        let first = hermite_reduce(f, y);
        let (mut base_num, base_den) = ratfun_as_unipoly_pair(&first.g, y);
        let mut p = numerator_over_core(&first.h, &core, y);

        // One-time data for the per-level Hermite step and the derivative
        // recurrences; a `y`-free core means every remainder is zero and no
        // step ever runs.
        let core_dy = core.derivative();
        let core_dx = derivative_in_x(&core, x);
        let base_den_dx = derivative_in_x(&base_den, x);
        let bezout = if core.degree() > Some(0) {
            let (gcd, s, _) = core_dy.extended_gcd(&core);
            debug_assert_eq!(gcd.degree(), Some(0), "squarefree core is coprime to D_y q*");
            Some(s)
        } else {
            None
        };

        let mut coordinates = vec![padded_coefficients(&p, dimension)];
        let mut base_nums = vec![base_num.clone()];
        let mut tail_num: UniPoly<RationalFunction> = UniPoly::zero();
        let mut tail_nums = vec![tail_num.clone()];
        let mut core_power = UniPoly::one();
        for level in 0..count {
            // D_x(p / q*) = (p' q* - p (q*)') / q*^2; one peeling step writes
            // it as D_y(-B / q*) + (C + B') / q* with B (D_y q*) + C q* = n.
            let b = match &bezout {
                Some(s) => {
                    let n = derivative_in_x(&p, x).mul(&core).sub(&p.mul(&core_dx));
                    let b = s.mul(&n).div_rem(&core).1;
                    let c = n.sub(&b.mul(&core_dy)).exact_div(&core);
                    p = c.add(&b.derivative());
                    b
                }
                None => UniPoly::zero(),
            };
            let step = RationalFunction::from_int(level as i64 + 1);
            base_num = derivative_in_x(&base_num, x)
                .mul(&base_den)
                .sub(&base_num.scale(&step).mul(&base_den_dx));
            tail_num = derivative_in_x(&tail_num, x)
                .mul(&core)
                .sub(&tail_num.scale(&RationalFunction::from_int(level as i64)).mul(&core_dx))
                .sub(&b.mul(&core_power));
            core_power = core_power.mul(&core);
            coordinates.push(padded_coefficients(&p, dimension));
            base_nums.push(base_num.clone());
            tail_nums.push(tail_num.clone());
        }
        ReductionTower {
            coordinates,
            dimension,
            variable: y.to_string(),
            base_den,
            base_nums,
            core,
            tail_nums,
        }
    }

    /// The certificate `sum_i weights[i] * g_i`, assembled over the two fixed
    /// denominators and canonicalized once.
    pub(crate) fn assemble_certificate(&self, weights: &[RationalFunction]) -> RationalFunction {
        let r = weights.len() - 1;
        let mut base_acc = UniPoly::zero();
        let mut tail_acc = UniPoly::zero();
        for (i, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let stretch = (r - i) as u32;
            base_acc = base_acc.add(&self.base_nums[i].scale(w).mul(&self.base_den.pow(stretch)));
            tail_acc = tail_acc.add(&self.tail_nums[i].scale(w).mul(&self.core.pow(stretch)));
        }
        let base = fraction(&base_acc, &self.base_den.pow(r as u32 + 1), &self.variable);
        let tail = fraction(&tail_acc, &self.core.pow(r as u32), &self.variable);
        base.add(&tail)
    }
}

/// Canonical rational function `num / den` from a `y`-univariate pair.
fn fraction(
    num: &UniPoly<RationalFunction>,
    den: &UniPoly<RationalFunction>,
    y: &str,
) -> RationalFunction {
    if num.is_zero() {
        return RationalFunction::zero();
    }
    unipoly_as_ratfun(num, y)
        .div(&unipoly_as_ratfun(den, y))
        .expect("nonzero denominator")
}

/// Coefficient-wise `x`-derivative of a `y`-polynomial.
fn derivative_in_x(p: &UniPoly<RationalFunction>, x: &str) -> UniPoly<RationalFunction> {
    UniPoly::from_coeffs(p.coeffs().iter().map(|c| c.derivative(x)).collect())
}

/// Monic squarefree part of the denominator of `f`, in the `y`-univariate
/// view; its degree bounds the telescoper order.
fn squarefree_denominator(f: &RationalFunction, y: &str) -> UniPoly<RationalFunction> {
    let (_, den) = ratfun_as_unipoly_pair(f, y);
    den.monic()
        .squarefree_decomposition()
        .into_iter()
        .fold(UniPoly::one(), |acc, (q, _)| acc.mul(&q))
}

/// Numerator of a proper, squarefree-denominator remainder written over the
/// core `q*`: the canonical numerator stretched by the cofactor `q* / den`.
fn numerator_over_core(
    h: &RationalFunction,
    core: &UniPoly<RationalFunction>,
    y: &str,
) -> UniPoly<RationalFunction> {
    if h.is_zero() {
        return UniPoly::zero();
    }
    let (num, den) = ratfun_as_unipoly_pair(h, y);
    let lc_inv = RationalFunction::one().div(&den.lc()).expect("nonzero");
    let cofactor = core.exact_div(&den.monic());
    num.scale(&lc_inv).mul(&cofactor)
}

/// The coefficients of a `y`-polynomial padded out to the basis size.
fn padded_coefficients(p: &UniPoly<RationalFunction>, dimension: usize) -> Vec<RationalFunction> {
    let mut out = vec![RationalFunction::zero(); dimension];
    for (j, c) in p.coeffs().iter().enumerate() {
        out[j] = c.clone();
    }
    out
}

/// Finds the minimal-order telescoper of `f` with respect to `D_x`, with the
/// integration variable `y`, by reducing derivatives until their remainders
/// become linearly dependent. Always succeeds, with order at most the
/// `y`-degree of the squarefree part of the denominator.
pub fn reduction_ct(f: &RationalFunction, x: &str, y: &str) -> DiffTelescoperResult {
    let dimension = squarefree_denominator(f, y).degree().expect("nonzero").max(1);
    let tower = ReductionTower::build(f, x, y, dimension);
    for i in 0..=dimension {
        // Columns are the remainder coordinate vectors; a kernel vector is a
        // dependence sum c_i h_i = 0.
        let rows: Vec<Vec<RationalFunction>> = (0..dimension)
            .map(|j| (0..=i).map(|col| tower.coordinates[col][j].clone()).collect())
            .collect();
        let kernel = RatMatrix::from_rows(rows).nullspace();
        let Some(c) = kernel.into_iter().next() else {
            continue;
        };
        let spec = OreAlgebraSpec::derivation_in(x);
        let raw = OreOperator::new(spec, c.clone());
        let (telescoper, multiplier) = raw.normalize_with_multiplier();
        let certificate = tower.assemble_certificate(&c).mul(&multiplier);
        let order = telescoper.order().expect("nontrivial kernel vector");
        return DiffTelescoperResult {
            telescoper,
            certificate,
            order,
        };
    }
    unreachable!("more remainders than basis elements must be dependent");
}

/// Exact check of the telescoping identity `L·f - D_y g = 0`. The zero
/// operator is never a telescoper.
pub fn verify_ct_diff(f: &RationalFunction, y: &str, result: &DiffTelescoperResult) -> bool {
    if result.telescoper.is_zero() {
        return false;
    }
    let lhs = result.telescoper.apply(f);
    let rhs = result.certificate.derivative(y);
    lhs == rhs
}
