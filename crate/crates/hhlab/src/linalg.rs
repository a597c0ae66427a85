//! Sparse exact linear algebra: rank, kernel bases, and linear solves over
//! any of the supported coefficient fields.

use std::collections::BTreeMap;

use crate::field::{FieldSpec, Scalar};
use crate::Error;

/// A sparse matrix with all entries in a single field; zero entries are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> SparseMatrix {
        let mut m = SparseMatrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        assert_eq!(value.field(), self.field, "mixed fields in matrix");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Scalar) {
        let current = self
            .entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| self.field.zero());
        self.set(row, col, current.add(value));
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.cols, self.rows, self.field);
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }

    /// Stack `other` below `self` (same column count).
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        assert_eq!(self.field, other.field);
        let mut out = SparseMatrix::zero(self.rows + other.rows, self.cols, self.field);
        for (r, c, v) in self.entries() {
            out.set(r, c, v.clone());
        }
        for (r, c, v) in other.entries() {
            out.set(self.rows + r, c, v.clone());
        }
        out
    }

    /// Place `other` to the right of `self` (same row count).
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        assert_eq!(self.field, other.field);
        let mut out = SparseMatrix::zero(self.rows, self.cols + other.cols, self.field);
        for (r, c, v) in self.entries() {
            out.set(r, c, v.clone());
        }
        for (r, c, v) in other.entries() {
            out.set(r, self.cols + c, v.clone());
        }
        out
    }

    pub fn mul_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (r, c, entry) in self.entries() {
            if !v[c].is_zero() {
                out[r] = out[r].add(&entry.mul(&v[c]));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of the right null space; count = cols - rank, and each vector
    /// satisfies A v = 0 exactly.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let pivot_col: BTreeMap<usize, usize> = rref
            .pivots
            .iter()
            .enumerate()
            .map(|(row, &col)| (col, row))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (&col, &row) in &pivot_col {
                // pivot entry is 1, so the pivot coordinate is minus the
                // free-column entry of that row
                let c = rref.rows[row].get(&free).cloned();
                if let Some(c) = c {
                    v[col] = c.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        if b.len() != self.rows {
            return Err(Error::new("dimension mismatch in solve"));
        }
        let mut aug = SparseMatrix::zero(self.rows, self.cols + 1, self.field);
        for (r, c, v) in self.entries() {
            aug.set(r, c, v.clone());
        }
        for (r, v) in b.iter().enumerate() {
            aug.set(r, self.cols, v.clone());
        }
        let rref = aug.rref();
        if rref.pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &col) in rref.pivots.iter().enumerate() {
            if let Some(v) = rref.rows[row].get(&self.cols) {
                x[col] = v.clone();
            }
        }
        Ok(Some(x))
    }

    /// Reduced row echelon form. Pivots are chosen by (column, then row) for
    /// reproducibility, and each pivot is normalized to 1.
    fn rref(&self) -> Rref {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.rows];
        for (r, c, v) in self.entries() {
            rows[r].insert(c, v.clone());
        }
        let mut pivots = Vec::new();
        let mut done: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        for col in 0..self.cols {
            let Some(pos) = rows
                .iter()
                .position(|row| row.first_key_value().map(|(&c, _)| c) == Some(col))
            else {
                continue;
            };
            let mut pivot_row = rows.swap_remove(pos);
            let inv = pivot_row[&col].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for v in pivot_row.values_mut() {
                    *v = v.mul(&inv);
                }
            }
            for row in rows.iter_mut().chain(done.iter_mut()) {
                if let Some(factor) = row.get(&col).cloned() {
                    for (&c, pv) in &pivot_row {
                        let cur = row.get(&c).cloned().unwrap_or_else(|| self.field.zero());
                        let next = cur.sub(&factor.mul(pv));
                        if next.is_zero() {
                            row.remove(&c);
                        } else {
                            row.insert(c, next);
                        }
                    }
                }
            }
            pivots.push(col);
            done.push(pivot_row);
        }
        Rref { rows: done, pivots }
    }
}

struct Rref {
    /// One map per pivot row, in pivot order.
    rows: Vec<BTreeMap<usize, Scalar>>,
    /// Pivot column of each row, strictly increasing.
    pivots: Vec<usize>,
}

/// Rank of the span of a set of sparse row vectors given as (index, value)
/// lists over `dim` coordinates.
pub fn span_rank(vectors: &[Vec<(usize, Scalar)>], dim: usize, field: FieldSpec) -> usize {
    let mut m = SparseMatrix::zero(vectors.len(), dim, field);
    for (r, vec) in vectors.iter().enumerate() {
        for (c, v) in vec {
            m.add_to(r, *c, v);
        }
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(n)
    }

    fn mat(rows: usize, cols: usize, data: &[(usize, usize, i64)]) -> SparseMatrix {
        let mut m = SparseMatrix::zero(rows, cols, FieldSpec::Rationals);
        for &(r, c, v) in data {
            m.set(r, c, q(v));
        }
        m
    }

    #[test]
    fn identity_rank() {
        assert_eq!(SparseMatrix::identity(3, FieldSpec::Rationals).rank(), 3);
        assert_eq!(SparseMatrix::zero(2, 5, FieldSpec::Rationals).rank(), 0);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let m = mat(3, 4, &[(0, 0, 1), (0, 1, 2), (1, 1, 3), (2, 0, 2), (2, 1, 7)]);
        assert_eq!(m.rank(), m.transpose().rank());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_annihilates() {
        let m = mat(2, 4, &[(0, 0, 1), (0, 2, 1), (1, 1, 2), (1, 3, -1)]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 4 - m.rank());
        for v in &kernel {
            for entry in m.mul_vector(v) {
                assert!(entry.is_zero());
            }
        }
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(SparseMatrix::identity(2, FieldSpec::Rationals).kernel_basis().len(), 0);
        assert_eq!(SparseMatrix::zero(2, 2, FieldSpec::Rationals).kernel_basis().len(), 2);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = SparseMatrix::identity(3, FieldSpec::Rationals);
        let b = vec![q(5), q(-2), q(0)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let zero = SparseMatrix::zero(2, 2, FieldSpec::Rationals);
        assert_eq!(zero.solve(&[q(1), q(0)]).unwrap(), None);
        assert!(zero.solve(&[q(0)]).is_err());
    }

    #[test]
    fn solve_residual_exact() {
        let m = mat(3, 3, &[(0, 0, 2), (0, 1, 1), (1, 1, 3), (1, 2, 5), (2, 0, 1), (2, 2, 4)]);
        let b = vec![q(7), q(11), q(9)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vector(&x), b);
    }

    #[test]
    fn underdetermined_solve_consistent() {
        let m = mat(1, 3, &[(0, 0, 1), (0, 1, 1), (0, 2, 1)]);
        let x = m.solve(&[q(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vector(&x), vec![q(6)]);
    }
}
