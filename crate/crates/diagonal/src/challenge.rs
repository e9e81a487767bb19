//! Harness that derives and certifies recurrences for the challenge family.
//!
//! The family is `F_d = 1/(1 - sum_{i=1}^d x_i/(1-x_i))`; clearing the
//! nested fractions gives a rational function whose denominator is 1 at the
//! origin, so the diagonal pipeline applies verbatim: derive an annihilating
//! operator, convert it to a coefficient recurrence, and confront the
//! recurrence with brute-force series data — once by substituting the data
//! into every window of the relation, and once by unrolling the recurrence
//! from initial terms and comparing term by term. Unrolling stalls where the
//! leading coefficient vanishes; those indices are reported and bridged with
//! series data, never invented.

use exact_core::{MultiPoly, RationalFunction};
use ore_ops::{ode_to_rec, OreError, OreOperator, Recurrence};
use serde_json::{json, Value};

use crate::error::DiagonalError;
use crate::ode::diagonal_ode;
use crate::problem::DiagonalProblem;
use crate::series::series_diagonal;

/// Outcome of confronting a derived recurrence with series data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportStatus {
    Verified,
    /// The relation failed at this coefficient index.
    Failed { index: usize },
}

/// A derived annihilator with its recurrence and the verification verdict.
#[derive(Debug, Clone)]
pub struct DiagonalReport {
    pub d: usize,
    pub telescoper: OreOperator,
    pub recurrence: Recurrence,
    /// Number of series coefficients the recurrence was checked against.
    pub verified_terms: usize,
    /// Output indices where the leading coefficient vanished during
    /// unrolling; the affected terms were supplied from series data.
    pub singular_indices: Vec<usize>,
    pub status: ReportStatus,
}

impl DiagonalReport {
    pub fn to_json(&self) -> Value {
        let mut value = json!({
            "d": self.d,
            "telescoper": self.telescoper.to_string(),
            "recurrence": self.recurrence.operator().to_string(),
            "verified_terms": self.verified_terms,
            "singular_indices": self.singular_indices,
            "status": match self.status {
                ReportStatus::Verified => "verified",
                ReportStatus::Failed { .. } => "failed",
            },
        });
        if let ReportStatus::Failed { index } = self.status {
            value["failing_index"] = json!(index);
        }
        value
    }
}

/// The cleared challenge instance `1/(1 - sum x_i/(1-x_i))`: numerator
/// `prod (1-x_i)`, denominator `prod (1-x_i) - sum_i x_i prod_{j!=i} (1-x_j)`.
pub fn challenge_problem(d: usize) -> Result<DiagonalProblem, DiagonalError> {
    if !(1..=2).contains(&d) {
        return Err(DiagonalError::UnsupportedDimension { d });
    }
    let names: Vec<String> = if d == 1 {
        vec!["x".into()]
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    };
    let factors: Vec<MultiPoly> = names
        .iter()
        .map(|v| MultiPoly::one().sub(&MultiPoly::var(v)))
        .collect();
    let num = factors.iter().fold(MultiPoly::one(), |acc, f| acc.mul(f));
    let mut den = num.clone();
    for (i, v) in names.iter().enumerate() {
        let others = factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(MultiPoly::one(), |acc, (_, f)| acc.mul(f));
        den = den.sub(&MultiPoly::var(v).mul(&others));
    }
    let f = RationalFunction::new(num, den).expect("denominator is 1 at the origin");
    let borrowed: Vec<&str> = names.iter().map(String::as_str).collect();
    DiagonalProblem::new(f, &borrowed)
}

/// Runs the full pipeline on one problem: operator, recurrence, and a
/// two-way check against the first `n + 1` series coefficients.
pub fn diagonal_report(
    problem: &DiagonalProblem,
    n: usize,
) -> Result<DiagonalReport, DiagonalError> {
    let telescoper = diagonal_ode(problem)?;
    let recurrence = ode_to_rec(&telescoper, "n")?;
    let series = series_diagonal(problem, n);

    let mut status = match recurrence.holds_on(&series)? {
        Some(index) => ReportStatus::Failed { index },
        None => ReportStatus::Verified,
    };

    let mut singular_indices = Vec::new();
    let order = recurrence.order();
    if status == ReportStatus::Verified && series.len() > order {
        let mut supplied = order;
        loop {
            match recurrence.unroll(&series[..supplied], series.len()) {
                Ok(terms) => {
                    if let Some(index) =
                        terms.iter().zip(&series).position(|(a, b)| a != b)
                    {
                        status = ReportStatus::Failed { index };
                    }
                    break;
                }
                Err(OreError::SingularIndex { index }) => {
                    singular_indices.push(index);
                    supplied = index + 1;
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    Ok(DiagonalReport {
        d: problem.dimension(),
        telescoper,
        recurrence,
        verified_terms: series.len(),
        singular_indices,
        status,
    })
}

/// Challenge entry point: build `F_d`, derive, convert, verify against
/// `n + 1` coefficients.
pub fn challenge_run(d: usize, n: usize) -> Result<DiagonalReport, DiagonalError> {
    diagonal_report(&challenge_problem(d)?, n)
}
