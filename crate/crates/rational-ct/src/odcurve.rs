//! Measuring order-degree trade-offs: for each operator order `r`, the
//! smallest coefficient degree `d` admitting a polynomial-coefficient
//! telescoper of order at most `r`.
//!
//! A dependence `sum c_i(x) h_i = 0` with polynomial `c_i` of degree at most
//! `d` is a linear condition on the `(r+1)(d+1)` rational coefficients of the
//! `c_i`: each basis coordinate of the `h_i` contributes one polynomial
//! identity in `x`, compared coefficient-wise. Raising the order can only
//! lower the minimal degree, since an order-`r` solution is also an
//! order-`(r+1)` solution with `c_(r+1) = 0`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use exact_core::{poly_as_univariate, MultiPoly, Rational, RationalFunction, UniPoly};

use crate::reduction::ReductionTower;

/// One measured point of the order-degree curve: at order `order`, some
/// telescoper has polynomial coefficients of degree `degree` and none of
/// smaller degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderDegreePoint {
    pub order: usize,
    pub degree: usize,
}

/// For each order in `orders`, finds the minimal coefficient degree
/// `d <= d_cap` admitting a nonzero polynomial-coefficient dependence among
/// `h_0, ..., h_r`; orders admitting none within the cap are omitted.
pub fn order_degree_scan(
    f: &RationalFunction,
    x: &str,
    y: &str,
    orders: RangeInclusive<usize>,
    d_cap: usize,
) -> Vec<OrderDegreePoint> {
    let r_max = *orders.end();
    let tower = ReductionTower::build(f, x, y, r_max);
    let mut points = Vec::new();
    for r in orders {
        if let Some(degree) = minimal_degree(&tower, x, r, d_cap) {
            points.push(OrderDegreePoint { order: r, degree });
        }
    }
    points
}

/// CSV rendering of scan results: header `order,degree`, one row per point.
pub fn scan_to_csv(points: &[OrderDegreePoint]) -> String {
    let mut out = String::from("order,degree\n");
    for p in points {
        writeln!(out, "{},{}", p.order, p.degree).expect("string write");
    }
    out
}

fn minimal_degree(tower: &ReductionTower, x: &str, r: usize, d_cap: usize) -> Option<usize> {
    // Clear each basis coordinate row to polynomials in x once; scaling an
    // equation does not change its solutions.
    let mut cleared: Vec<Vec<UniPoly<Rational>>> = Vec::new();
    for j in 0..tower.dimension {
        let row: Vec<RationalFunction> = (0..=r)
            .map(|i| tower.coordinates[i][j].clone())
            .collect();
        let mut lcm = MultiPoly::one();
        for e in row.iter().filter(|e| !e.is_zero()) {
            lcm = MultiPoly::lcm(&lcm, e.den()).expect("nonzero denominator");
        }
        let lcm_rf = RationalFunction::from_poly(lcm);
        let polys = row
            .iter()
            .map(|e| {
                let scaled = e.mul(&lcm_rf);
                poly_as_univariate(scaled.num(), x)
                    .expect("coordinates involve only the parameter variable")
            })
            .collect();
        cleared.push(polys);
    }
    // Admitting degrees are upward-closed in `d`, so gallop to the first
    // admitting probe and binary-search the boundary below it.
    let mut lo = 0usize;
    let mut probe = 0usize;
    let mut hi = loop {
        if has_degree_d_dependence(&cleared, r, probe.min(d_cap)) {
            break probe.min(d_cap);
        }
        if probe >= d_cap {
            return None;
        }
        lo = probe.min(d_cap) + 1;
        probe = if probe == 0 { 1 } else { probe * 2 };
    };
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if has_degree_d_dependence(&cleared, r, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(hi)
}

/// Is there a not-all-zero choice of polynomials `c_i` of degree at most `d`
/// with `sum c_i(x) row_i = 0` for every cleared coordinate row?
fn has_degree_d_dependence(cleared: &[Vec<UniPoly<Rational>>], r: usize, d: usize) -> bool {
    let cols = (r + 1) * (d + 1);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for polys in cleared {
        let height = polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .map_or(0, |m| m + d + 1);
        // x-coefficient `m` of sum_i c_i * polys_i, unknowns c_{i,t}.
        for m in 0..height {
            let mut row = Vec::with_capacity(cols);
            for p in polys {
                for t in 0..=d {
                    let v = if t > m { Rational::zero() } else { p.coeff(m - t) };
                    row.push(v);
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        // No constraints at all: any nonzero constant dependence works.
        return true;
    }
    has_nontrivial_kernel(rows, cols)
}

/// Rank test over the rationals: does the homogeneous system have fewer
/// independent rows than columns? The matrices here are small, dense, and
/// purely numeric, so plain Gaussian elimination beats the general
/// rational-function solver by a wide margin.
fn has_nontrivial_kernel(mut rows: Vec<Vec<Rational>>, cols: usize) -> bool {
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for i in (rank + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &lead;
            for j in col..cols {
                let scaled = &rows[rank][j] * &factor;
                rows[i][j] = &rows[i][j] - &scaled;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank < cols
}
