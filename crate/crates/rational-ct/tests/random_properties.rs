//! Randomized invariants for the differential telescoping stack: Hermite
//! reduction must reconstruct its input exactly with a proper, squarefree
//! remainder; reduction-based telescoping must stay within the dimension
//! bound and verify symbolically; the fixed-order ansatz must never fail at
//! the guaranteed order and never beat the reduction method's order; and
//! order-degree scans must be monotone.

use exact_core::{
    poly_as_unipoly, ratfun_as_unipoly_pair, MultiPoly, Rational, RationalFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rational_ct::{az_ct, hermite_reduce, order_degree_scan, reduction_ct, verify_ct_diff};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x0d1f_f7a3)
}

fn random_poly(rng: &mut ChaCha8Rng, x_deg: u32, y_deg: u32) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for _ in 0..5 {
        let c = Rational::from_int(rng.gen_range(-3..=3));
        if c.is_zero() {
            continue;
        }
        let exps = [rng.gen_range(0..=x_deg), rng.gen_range(0..=y_deg)];
        acc = acc.add(&MultiPoly::from_terms(&["x", "y"], &[(c, &exps[..])]));
    }
    acc
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng, x_deg: u32, y_deg: u32) -> MultiPoly {
    loop {
        let p = random_poly(rng, x_deg, y_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A denominator that frequently carries repeated factors.
fn random_denominator(rng: &mut ChaCha8Rng) -> MultiPoly {
    let base = random_nonzero_poly(rng, 1, 2);
    let mut den = base.clone();
    if rng.gen_bool(0.6) {
        den = den.mul(&base);
    }
    if rng.gen_bool(0.4) {
        den = den.mul(&random_nonzero_poly(rng, 1, 1));
    }
    den
}

fn y_degree(p: &MultiPoly) -> usize {
    poly_as_unipoly(p, "y").degree().unwrap_or(0)
}

#[test]
fn hermite_reconstructs_exactly_with_squarefree_remainder() {
    let mut rng = rng();
    for _ in 0..100 {
        let num = random_poly(&mut rng, 3, 6);
        let den = random_denominator(&mut rng);
        let f = RationalFunction::new(num, den).unwrap();
        let res = hermite_reduce(&f, "y");
        assert_eq!(res.g.derivative("y").add(&res.h), f);
        if res.h.is_zero() {
            continue;
        }
        let (h_num, h_den) = ratfun_as_unipoly_pair(&res.h, "y");
        // Proper in y.
        assert!(h_num.degree().unwrap_or(0) < h_den.degree().expect("nonconstant") .max(1)
            || h_den.degree() == Some(0) && h_num.degree().is_none());
        // Squarefree denominator: coprime with its derivative.
        let monic = h_den.monic();
        if monic.degree() > Some(0) {
            let g = monic.gcd(&monic.derivative());
            assert_eq!(g.degree(), Some(0));
        }
    }
}

#[test]
fn reduction_order_respects_dimension_bound_and_verifies() {
    let mut rng = rng();
    for _ in 0..40 {
        let num = random_poly(&mut rng, 2, 3);
        let den = random_denominator(&mut rng);
        let f = RationalFunction::new(num, den.clone()).unwrap();
        let res = reduction_ct(&f, "x", "y");
        assert!(verify_ct_diff(&f, "y", &res));
        // The squarefree part of the canonical denominator bounds the order.
        let den_view = poly_as_unipoly(f.den(), "y").monic();
        let squarefree_deg: usize = den_view
            .squarefree_decomposition()
            .iter()
            .map(|(q, _)| q.degree().unwrap_or(0))
            .sum();
        assert!(res.order <= squarefree_deg.max(1));
    }
}

#[test]
fn ansatz_never_fails_at_the_guaranteed_order() {
    let mut rng = rng();
    for _ in 0..25 {
        let num = random_poly(&mut rng, 2, 2);
        let den = random_nonzero_poly(&mut rng, 1, 3);
        let f = RationalFunction::new(num, den).unwrap();
        let r_guaranteed = y_degree(f.den());
        let res = az_ct(&f, "x", "y", r_guaranteed)
            .expect("order deg_y q always admits a telescoper");
        assert!(verify_ct_diff(&f, "y", &res));
        // The reduction method finds the minimal order, so no successful
        // ansatz order can undercut it.
        let reduced = reduction_ct(&f, "x", "y");
        assert!(verify_ct_diff(&f, "y", &reduced));
        let minimal_ansatz = (0..=r_guaranteed)
            .find(|&r| az_ct(&f, "x", "y", r).is_some())
            .expect("guaranteed order succeeded above");
        assert!(reduced.order <= minimal_ansatz);
    }
}

#[test]
fn order_degree_scans_are_monotone() {
    let mut rng = rng();
    for i in 0..20 {
        let num = random_poly(&mut rng, 2, 2);
        // Scans solve one ansatz system per probed (order, degree) pair, so
        // keep the pole structure a notch lighter than the reduction tests.
        let mut den = random_nonzero_poly(&mut rng, 1, 2);
        if rng.gen_bool(0.5) {
            den = den.mul(&random_nonzero_poly(&mut rng, 0, 1));
        }
        let f = RationalFunction::new(num, den).unwrap();
        // The reduction telescoper is itself an admissible dependence, so its
        // coefficient degree caps the minimal degree at its order and above.
        let base = reduction_ct(&f, "x", "y");
        let cap = base
            .telescoper
            .coeffs()
            .iter()
            .filter_map(|c| c.num().degree_in("x"))
            .max()
            .unwrap_or(0) as usize;
        let points = order_degree_scan(&f, "x", "y", 0..=base.order + 1, cap);
        assert!(
            points.iter().any(|p| p.order == base.order),
            "instance {i}: the scan must admit a point at the reduction order"
        );
        for pair in points.windows(2) {
            assert!(pair[1].degree <= pair[0].degree, "instance {i}");
        }
    }
}
