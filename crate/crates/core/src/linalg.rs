//! Exact sparse row reduction over ℚ(i).
//!
//! Rows are sorted `(column, coefficient)` lists without zeros. Column 0 is
//! the most significant, so a row's pivot is its first entry.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseRow = Vec<(usize, Scalar)>;

/// `a - c·b`, both sorted.
pub fn sub_scaled(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(row: &mut SparseRow) {
    if let Some((_, lead)) = row.first() {
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero leading entry");
            for (_, v) in row.iter_mut() {
                *v = &*v * &inv;
            }
        }
    }
}

/// An incrementally built row-echelon basis with monic pivot rows.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces the leading entry until it is not a pivot column.
    fn top_reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((col, lead)) = row.first() {
            match self.pivot_row.get(col) {
                Some(&r) => {
                    let c = lead.clone();
                    row = sub_scaled(&row, &c, &self.rows[r]);
                }
                None => break,
            }
        }
        row
    }

    /// Adds a row to the span; returns `true` if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.top_reduce(row);
        if row.is_empty() {
            return false;
        }
        normalize(&mut row);
        self.pivot_row.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut row = row;
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            if let Some(&r) = self.pivot_row.get(&col) {
                let c = row[pos].1.clone();
                row = sub_scaled(&row, &c, &self.rows[r]);
                // Entries before `pos` are untouched and stay pivot-free.
            } else {
                pos += 1;
            }
        }
        row
    }

    pub fn into_rref(self, ncols: usize) -> Rref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].first().map(|e| e.0));
        let mut rows: Vec<SparseRow> = order.into_iter().map(|i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let pivot_index: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        // Back substitution from the last pivot upward.
        for i in (0..rows.len()).rev() {
            let mut row = std::mem::take(&mut rows[i]);
            let mut pos = 1;
            while pos < row.len() {
                let col = row[pos].0;
                match pivot_index.get(&col) {
                    Some(&k) if k > i => {
                        let c = row[pos].1.clone();
                        row = sub_scaled(&row, &c, &rows[k]);
                    }
                    _ => pos += 1,
                }
            }
            rows[i] = row;
        }
        Rref { ncols, rows, pivots, pivot_index }
    }
}

/// Reduced row-echelon form: canonical for the row space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
    pivot_index: HashMap<usize, usize>,
}

impl Rref {
    pub fn from_rows(ncols: usize, rows: Vec<SparseRow>) -> Self {
        let mut ech = Echelon::new();
        for r in rows {
            ech.insert(r);
        }
        ech.into_rref(ncols)
    }

    /// Accepts rows already in reduced echelon form; `None` if they are not.
    pub fn from_canonical(ncols: usize, rows: Vec<SparseRow>) -> Option<Self> {
        if rows.iter().any(|r| r.is_empty()) {
            return None;
        }
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let pivot_index = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let rref = Rref { ncols, rows, pivots, pivot_index };
        rref.is_canonical().then_some(rref)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_index.contains_key(&col)
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseRow> {
        self.pivot_index.get(&col).map(|&i| &self.rows[i])
    }

    /// Remainder of `row` after eliminating all pivot columns.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            if let Some(&k) = self.pivot_index.get(&col) {
                let c = row[pos].1.clone();
                row = sub_scaled(&row, &c, &self.rows[k]);
            } else {
                pos += 1;
            }
        }
        row
    }

    /// Checks the RREF shape: monic pivots, strictly increasing, and no pivot
    /// column used by another row.
    pub fn is_canonical(&self) -> bool {
        let mut last = None;
        for row in &self.rows {
            let Some((lead, c)) = row.first() else { return false };
            if !c.is_one() || last.is_some_and(|l| l >= *lead) || *lead >= self.ncols {
                return false;
            }
            last = Some(*lead);
            if row.windows(2).any(|w| w[0].0 >= w[1].0) || row.iter().any(|(_, v)| v.is_zero()) {
                return false;
            }
            if row[1..].iter().any(|(col, _)| self.pivot_index.contains_key(col)) {
                return false;
            }
        }
        true
    }
}

/// Rank of the row space spanned by `rows`.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new();
    rows.into_iter().filter(|r| ech.insert(r.clone())).count()
}

/// Solves `Σ x_j · columns_j = target` for dense square systems; `None`
/// when the matrix is singular or the system inconsistent.
pub fn solve_dense(matrix: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = target.len();
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<Scalar>> = matrix
        .iter()
        .zip(target)
        .map(|(r, t)| {
            let mut r = r.clone();
            r.push(t.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].inv()?;
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let c = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&c * pv);
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}
