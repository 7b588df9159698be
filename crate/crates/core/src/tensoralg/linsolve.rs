//! Exact sparse Gauss–Jordan elimination over the rationals.

use super::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Row-major sparse matrix; each row maps column index to a nonzero entry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<BTreeMap<usize, Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Solution(Vec<Rational>),
    Inconsistent,
}

impl LinearSolution {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Solution(v) => Some(v),
            LinearSolution::Inconsistent => None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, LinearSolution::Solution(_))
    }
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            );
        }
        m
    }

    pub fn push_row(&mut self, row: BTreeMap<usize, Rational>) {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        self.rows
            .push(row.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BTreeMap<usize, Rational>] {
        &self.rows
    }
}

fn axpy(target: &mut BTreeMap<usize, Rational>, factor: &Rational, src: &BTreeMap<usize, Rational>) {
    for (&c, v) in src {
        let e = target.entry(c).or_insert_with(Rational::zero);
        *e += factor * v;
        if e.is_zero() {
            target.remove(&c);
        }
    }
}

/// Reduced row echelon form of `[m | rhs]`; returns (pivot columns paired
/// with their reduced rows, augmented rhs of those rows, inconsistent flag).
fn eliminate(
    m: &SparseMatrix,
    rhs: Option<&[Rational]>,
) -> (Vec<(usize, BTreeMap<usize, Rational>, Rational)>, bool) {
    // The rhs is stored in column `ncols` so it follows the row operations.
    let rc = m.ncols;
    let mut pending: Vec<BTreeMap<usize, Rational>> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            if let Some(b) = rhs {
                if !b[i].is_zero() {
                    r.insert(rc, b[i].clone());
                }
            }
            r
        })
        .collect();
    let mut pivots: Vec<(usize, BTreeMap<usize, Rational>)> = Vec::new();
    // Process columns left to right; among remaining rows pick the smallest
    // index with a nonzero entry in that column.
    let mut active: Vec<usize> = (0..pending.len()).collect();
    for col in 0..m.ncols {
        let Some(pos) = active
            .iter()
            .position(|&i| pending[i].contains_key(&col))
        else {
            continue;
        };
        let pi = active.remove(pos);
        let mut prow = std::mem::take(&mut pending[pi]);
        let inv = prow[&col].recip();
        for v in prow.values_mut() {
            *v *= &inv;
        }
        for &i in &active {
            if let Some(f) = pending[i].get(&col).cloned() {
                axpy(&mut pending[i], &-f, &prow);
            }
        }
        for (_, r) in pivots.iter_mut() {
            if let Some(f) = r.get(&col).cloned() {
                axpy(r, &-f, &prow);
            }
        }
        pivots.push((col, prow));
    }
    let inconsistent = active.iter().any(|&i| pending[i].contains_key(&rc));
    let out = pivots
        .into_iter()
        .map(|(c, mut r)| {
            let b = r.remove(&rc).unwrap_or_else(Rational::zero);
            (c, r, b)
        })
        .collect();
    (out, inconsistent)
}

/// Solves `m v = rhs` exactly. Free variables are set to zero.
pub fn linear_solve(m: &SparseMatrix, rhs: &[Rational]) -> LinearSolution {
    assert_eq!(rhs.len(), m.nrows(), "rhs length must match row count");
    let (pivots, inconsistent) = eliminate(m, Some(rhs));
    if inconsistent {
        return LinearSolution::Inconsistent;
    }
    let mut v = vec![Rational::zero(); m.ncols];
    for (c, _, b) in pivots {
        v[c] = b;
    }
    LinearSolution::Solution(v)
}

pub fn rank(m: &SparseMatrix) -> usize {
    eliminate(m, None).0.len()
}
