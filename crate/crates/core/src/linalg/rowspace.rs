//! Incrementally maintained reduced row echelon basis of a row space.
//!
//! Rows are stored sparsely and kept fully reduced after every insertion: each
//! stored row has a unit pivot and zeros in every other row's pivot column.
//! The final form is the unique reduced row echelon form of the span, so the
//! result does not depend on insertion order.

use super::field::{Field, Scalar};

type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    cols: usize,
    rows: Vec<SparseRow>,
    /// `pivot_row[c]` is the index into `rows` whose pivot is column `c`.
    pivot_row: Vec<Option<usize>>,
}

impl RowSpace {
    pub fn new(field: Field, cols: usize) -> Self {
        RowSpace {
            field,
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place modulo the current span.
    pub fn reduce(&self, v: &mut [Scalar]) {
        debug_assert_eq!(v.len(), self.cols);
        // Stored rows vanish at each other's pivots, so the pivot coefficients
        // of `v` are unaffected by the subtractions below.
        let hits: Vec<(usize, Scalar)> = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                let p = row[0].0;
                (!v[p].is_zero()).then(|| (i, v[p].clone()))
            })
            .collect();
        for (i, coef) in hits {
            for (c, x) in &self.rows[i] {
                let t = &coef * x;
                v[*c] -= &t;
            }
        }
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the spanning set. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pivot) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pivot].inv().expect("nonzero pivot");
        let new_row: SparseRow = w
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, &x * &inv))
            .collect();
        for row in &mut self.rows {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |(c, _)| *c) {
                let coef = row[pos].1.clone();
                *row = axpy(row, &coef, &new_row);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    /// Inserts a dense vector given as an iterator of `(column, value)` pairs.
    pub fn insert_sparse<I: IntoIterator<Item = (usize, Scalar)>>(&mut self, entries: I) -> bool {
        let mut v = vec![self.field.zero(); self.cols];
        for (c, x) in entries {
            v[c] += &x;
        }
        self.insert(&v)
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Row with pivot column `c`, densified.
    pub fn pivot_row_dense(&self, c: usize) -> Option<Vec<Scalar>> {
        self.pivot_row[c].map(|i| self.densify(&self.rows[i]))
    }

    /// The reduced rows, ordered by pivot.
    pub fn rows_dense(&self) -> Vec<Vec<Scalar>> {
        self.pivots()
            .into_iter()
            .map(|c| self.densify(&self.rows[self.pivot_row[c].unwrap()]))
            .collect()
    }

    /// Entry of the row whose pivot is `pivot`, at column `col`.
    pub fn entry(&self, pivot: usize, col: usize) -> Scalar {
        let row = &self.rows[self.pivot_row[pivot].expect("pivot column")];
        match row.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(pos) => row[pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Sparse entries of the row whose pivot is `pivot`, pivot included.
    pub fn row_entries(&self, pivot: usize) -> &[(usize, Scalar)] {
        &self.rows[self.pivot_row[pivot].expect("pivot column")]
    }

    fn densify(&self, row: &SparseRow) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.cols];
        for (c, x) in row {
            v[*c] = x.clone();
        }
        v
    }
}

/// `a - coef * b` on sorted sparse rows.
fn axpy(a: &SparseRow, coef: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = -(coef * &b[j].1);
            if !v.is_zero() {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 - &(coef * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_order_does_not_matter() {
        let q = Field::Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let rows = [v(&[1, 2, 3]), v(&[2, 4, 7]), v(&[0, 0, 5])];
        let mut a = RowSpace::new(q, 3);
        let mut b = RowSpace::new(q, 3);
        for r in &rows {
            a.insert(r);
        }
        for r in rows.iter().rev() {
            b.insert(r);
        }
        assert_eq!(a.rows_dense(), b.rows_dense());
        assert_eq!(a.pivots(), vec![0, 2]);
        assert_eq!(a.rows_dense(), vec![v(&[1, 2, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn membership() {
        let f = Field::prime(2).unwrap();
        let mut s = RowSpace::new(f, 2);
        s.insert(&[f.one(), f.one()]);
        assert!(s.contains(&[f.one(), f.one()]));
        assert!(!s.contains(&[f.one(), f.zero()]));
        assert!(!s.insert(&[f.one(), f.one()]));
    }
}
