//! Exact linear algebra over rational-function fields.
//!
//! The nullspace computation is the single solver behind every telescoper
//! search: those algorithms all reduce to finding nontrivial kernel vectors of
//! a matrix over `Q` or `Q(x)`. Elimination is fraction-free: rows are cleared
//! to polynomial entries, combined by cross-multiplication, and divided by
//! their entry gcd after each step to keep degrees from piling up.

use crate::multipoly::MultiPoly;
use crate::ratfun::RationalFunction;

/// Dense row-major matrix of rational functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalFunction>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match dimensions");
        RatMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RatMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    /// Basis of the right nullspace. Each basis vector is cleared to
    /// polynomial entries whose collective gcd is 1, with the first nonzero
    /// entry normalized to a positive leading coefficient.
    pub fn nullspace(&self) -> Vec<Vec<RationalFunction>> {
        // Clear every row to polynomials and strip its gcd.
        let mut mat: Vec<Vec<MultiPoly>> = (0..self.rows)
            .map(|i| {
                let row: Vec<&RationalFunction> =
                    (0..self.cols).map(|j| self.at(i, j)).collect();
                let mut lcm = MultiPoly::one();
                for e in &row {
                    if !e.is_zero() {
                        lcm = MultiPoly::lcm(&lcm, e.den()).expect("nonzero");
                    }
                }
                let cleared: Vec<MultiPoly> = row
                    .iter()
                    .map(|e| {
                        let co = lcm.exact_div(e.den()).expect("lcm divides");
                        e.num().mul(&co)
                    })
                    .collect();
                reduce_row(cleared)
            })
            .collect();

        // Row echelon form by fraction-free elimination.
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let candidate = (next_row..self.rows)
                .filter(|&i| !mat[i][col].is_zero())
                .min_by_key(|&i| {
                    let e = &mat[i][col];
                    (e.num_terms(), e.total_degree().unwrap_or(0))
                });
            let Some(pivot_row) = candidate else {
                continue;
            };
            mat.swap(next_row, pivot_row);
            for i in (next_row + 1)..self.rows {
                if mat[i][col].is_zero() {
                    continue;
                }
                let factor = mat[i][col].clone();
                let pivot = mat[next_row][col].clone();
                let combined: Vec<MultiPoly> = (0..self.cols)
                    .map(|j| mat[i][j].mul(&pivot).sub(&mat[next_row][j].mul(&factor)))
                    .collect();
                mat[i] = reduce_row(combined);
            }
            pivots.push((next_row, col));
            next_row += 1;
        }

        // One basis vector per free column, by back substitution.
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free_col in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![RationalFunction::zero(); self.cols];
            v[free_col] = RationalFunction::one();
            for &(prow, pcol) in pivots.iter().rev() {
                let mut acc = RationalFunction::zero();
                for j in (pcol + 1)..self.cols {
                    if mat[prow][j].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&RationalFunction::from_poly(mat[prow][j].clone()).mul(&v[j]));
                }
                let pivot = RationalFunction::from_poly(mat[prow][pcol].clone());
                v[pcol] = acc.neg().div(&pivot).expect("nonzero pivot");
            }
            basis.push(normalize_vector(v));
        }
        basis
    }

    /// Solves `self * x = rhs` over the rational-function field; `None` when
    /// the system is inconsistent.
    pub fn solve(&self, rhs: &[RationalFunction]) -> Option<Vec<RationalFunction>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries.push(self.at(i, j).clone());
            }
            entries.push(rhs[i].neg());
        }
        let augmented = RatMatrix::new(self.rows, self.cols + 1, entries);
        for v in augmented.nullspace() {
            let last = &v[self.cols];
            if last.is_zero() {
                continue;
            }
            let inv = last.inv().expect("nonzero");
            return Some(v[..self.cols].iter().map(|e| e.mul(&inv)).collect());
        }
        None
    }
}

/// Divides a polynomial row by the gcd of its entries.
fn reduce_row(row: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut g: Option<MultiPoly> = None;
    for e in row.iter().filter(|e| !e.is_zero()) {
        g = Some(match g {
            None => e.clone(),
            Some(acc) => MultiPoly::gcd(&acc, e).expect("nonzero"),
        });
        if g.as_ref().is_some_and(MultiPoly::is_one) {
            return row;
        }
    }
    match g {
        None => row,
        Some(g) => row
            .into_iter()
            .map(|e| e.exact_div(&g).expect("gcd divides"))
            .collect(),
    }
}

/// Clears a rational-function vector to coprime polynomial entries and fixes
/// the sign of the first nonzero entry.
fn normalize_vector(v: Vec<RationalFunction>) -> Vec<RationalFunction> {
    let mut lcm = MultiPoly::one();
    for e in v.iter().filter(|e| !e.is_zero()) {
        lcm = MultiPoly::lcm(&lcm, e.den()).expect("nonzero");
    }
    let cleared: Vec<MultiPoly> = v
        .iter()
        .map(|e| {
            if e.is_zero() {
                MultiPoly::zero()
            } else {
                e.num().mul(&lcm.exact_div(e.den()).expect("lcm divides"))
            }
        })
        .collect();
    let reduced = reduce_row(cleared);
    // Strip remaining rational content and orient the first nonzero entry.
    let mut content = exact_core_content(&reduced);
    if let Some(first) = reduced.iter().find(|e| !e.is_zero()) {
        if first.leading_coeff().is_negative() {
            content = -content;
        }
    }
    let inv = content.recip().unwrap_or_else(|_| crate::rational::Rational::one());
    reduced
        .into_iter()
        .map(|e| RationalFunction::from_poly(e.scale(&inv)))
        .collect()
}

fn exact_core_content(row: &[MultiPoly]) -> crate::rational::Rational {
    let mut acc = crate::rational::Rational::zero();
    for e in row {
        acc = crate::rational::Rational::gcd(&acc, &e.content());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::MultiPoly;
    use crate::rational::Rational;

    fn rf_poly(p: MultiPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn rf_int(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    #[test]
    fn nullspace_of_row_vector() {
        // [x, x^2] has nullspace spanned by (x, -1)
        let x = MultiPoly::var("x");
        let m = RatMatrix::from_rows(vec![vec![rf_poly(x.clone()), rf_poly(x.mul(&x))]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], rf_poly(x.clone()));
        assert_eq!(ns[0][1], rf_int(-1));
    }

    #[test]
    fn full_rank_matrix_has_trivial_nullspace() {
        let m = RatMatrix::from_rows(vec![
            vec![rf_int(1), rf_int(2)],
            vec![rf_int(3), rf_int(4)],
        ]);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        // Rank-1 3x3 matrix: rows are multiples of (1, x, x^2)
        let x = rf_poly(MultiPoly::var("x"));
        let x2 = x.mul(&x);
        let row = [rf_int(1), x.clone(), x2.clone()];
        let scaled = |c: i64| -> Vec<RationalFunction> {
            row.iter().map(|e| e.mul(&rf_int(c))).collect()
        };
        let m = RatMatrix::from_rows(vec![scaled(1), scaled(2), scaled(-3)]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for i in 0..3 {
                let mut acc = RationalFunction::zero();
                for j in 0..3 {
                    acc = acc.add(&m.at(i, j).mul(&v[j]));
                }
                assert!(acc.is_zero());
            }
            // Entries are polynomial and collectively coprime.
            assert!(v.iter().all(RationalFunction::is_polynomial));
        }
    }

    #[test]
    fn zero_row_matrix_gives_standard_basis() {
        let m = RatMatrix::new(0, 3, Vec::new());
        let ns = m.nullspace();
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            for (j, e) in v.iter().enumerate() {
                assert_eq!(e, &rf_int(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn solve_inhomogeneous() {
        // x + 2y = 5, 3x + 4y = 11  ->  x = 1, y = 2
        let m = RatMatrix::from_rows(vec![
            vec![rf_int(1), rf_int(2)],
            vec![rf_int(3), rf_int(4)],
        ]);
        let sol = m.solve(&[rf_int(5), rf_int(11)]).unwrap();
        assert_eq!(sol, vec![rf_int(1), rf_int(2)]);

        // Inconsistent system
        let m2 = RatMatrix::from_rows(vec![
            vec![rf_int(1), rf_int(1)],
            vec![rf_int(2), rf_int(2)],
        ]);
        assert!(m2.solve(&[rf_int(1), rf_int(3)]).is_none());
    }

    #[test]
    fn rational_entries_are_cleared() {
        // Row [1/x, 1] -> kernel (x, -1) after clearing
        let x = MultiPoly::var("x");
        let inv_x = RationalFunction::new(MultiPoly::one(), x.clone()).unwrap();
        let m = RatMatrix::from_rows(vec![vec![inv_x, rf_int(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], rf_poly(x));
        assert_eq!(ns[0][1], rf_int(-1));
    }

    #[test]
    fn scaling_content_is_stripped() {
        let m = RatMatrix::from_rows(vec![vec![
            RationalFunction::from_const(Rational::frac(2, 3)),
            RationalFunction::from_const(Rational::frac(4, 3)),
        ]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], rf_int(2));
        assert_eq!(ns[0][1], rf_int(-1));
    }
}
