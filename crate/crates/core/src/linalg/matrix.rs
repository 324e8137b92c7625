use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use super::rowspace::RowSpace;
use super::subspace::Subspace;
use super::vector;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field. Linear maps act on column
/// vectors, so rows index target coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// A consistent affine system's canonical solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    /// Free variables set to zero.
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Why an affine system has no solution: appending the right-hand side
/// raises the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankWitness {
    pub rank: usize,
    pub augmented_rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, field, data }
    }

    /// Builds a matrix from rows; every entry must live in `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Malformed(format!(
                    "row {i} has length {}, expected {c}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::Malformed(format!(
                        "entry in {} inside a matrix over {field}",
                        x.field()
                    )));
                }
                data.push(x);
            }
        }
        Ok(Matrix { rows: r, cols: c, field, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        for c in columns {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn row_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_fn(field, 1, v.len(), |_, c| v[c].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Checks that every entry belongs to the matrix's field.
    pub fn check_field(&self) -> Result<()> {
        match self.data.iter().find(|x| x.field() != self.field) {
            Some(x) => Err(Error::Malformed(format!(
                "entry in {} inside a matrix over {}",
                x.field(),
                self.field
            ))),
            None => Ok(()),
        }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Malformed(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self * rhs)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Kronecker product matching lexicographic (left-major) tensor coordinates.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (r2, c2) = (rhs.rows, rhs.cols);
        let mut out = Matrix::zeros(self.field, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn row_space(&self) -> RowSpace {
        let mut rs = RowSpace::new(self.field, self.cols);
        for r in 0..self.rows {
            rs.insert(self.row(r));
        }
        rs
    }

    /// Reduced row echelon form with unit pivots, zero rows last.
    pub fn rref(&self) -> Result<Rref> {
        self.check_field()?;
        let rs = self.row_space();
        let pivots = rs.pivots();
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (i, row) in rs.rows_dense().into_iter().enumerate() {
            for (c, x) in row.into_iter().enumerate() {
                m.set(i, c, x);
            }
        }
        Ok(Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.row_space().rank()
    }

    /// Basis of the null space, one vector per free column of the RREF (in
    /// increasing order), with a 1 in that column and 0 in the other free
    /// columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_from_rowspace(&self.row_space())
    }

    /// Null space as a [`Subspace`] whose coordinates are the free columns.
    pub fn kernel(&self) -> Subspace {
        let rs = self.row_space();
        Subspace::from_kernel_vectors(self.cols, self.field, kernel_from_rowspace(&rs), rs.free_columns())
    }

    /// Column space as a [`Subspace`].
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.field, self.rows, &self.columns())
    }

    /// Solves `self · x = b`.
    pub fn solve_affine(&self, b: &[Scalar]) -> Result<Option<AffineSolution>> {
        Ok(self.solve_or_witness(b)?.ok())
    }

    /// Like [`solve_affine`](Self::solve_affine), but reports the rank
    /// witness when the system is inconsistent.
    pub fn solve_or_witness(&self, b: &[Scalar]) -> Result<std::result::Result<AffineSolution, RankWitness>> {
        if b.len() != self.rows {
            return Err(Error::Malformed(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        self.check_field()?;
        let n = self.cols;
        let mut aug = RowSpace::new(self.field, n + 1);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.push(b[r].clone());
            aug.insert(&row);
        }
        Ok(solve_from_augmented(&aug, n))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let rs = aug.row_space();
        if rs.pivots().iter().take(n).copied().ne(0..n) {
            return None;
        }
        let rows = rs.rows_dense();
        Some(Matrix::from_fn(self.field, n, n, |r, c| rows[r][n + c].clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

pub(crate) fn kernel_from_rowspace(rs: &RowSpace) -> Vec<Vec<Scalar>> {
    let field = rs.field();
    let pivots = rs.pivots();
    rs.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![field.zero(); rs.cols()];
            v[f] = field.one();
            for &p in &pivots {
                v[p] = -rs.entry(p, f);
            }
            v
        })
        .collect()
}

/// Reads the solution of an augmented system whose last column is the
/// right-hand side and whose first `n` columns are the unknowns.
pub(crate) fn solve_from_augmented(aug: &RowSpace, n: usize) -> std::result::Result<AffineSolution, RankWitness> {
    let field = aug.field();
    let pivots = aug.pivots();
    if pivots.last() == Some(&n) {
        return Err(RankWitness {
            rank: pivots.len() - 1,
            augmented_rank: pivots.len(),
        });
    }
    let mut particular = vec![field.zero(); n];
    for &p in &pivots {
        particular[p] = aug.entry(p, n);
    }
    let kernel = aug
        .free_columns()
        .into_iter()
        .filter(|&f| f < n)
        .map(|f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for &p in &pivots {
                v[p] = -aug.entry(p, f);
            }
            v
        })
        .collect();
    Ok(AffineSolution { particular, kernel })
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    #[track_caller]
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    #[track_caller]
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    #[track_caller]
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

macro_rules! forward_matrix_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Matrix> for Matrix {
            type Output = Matrix;
            #[track_caller]
            fn $m(self, rhs: Matrix) -> Matrix {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Matrix> for Matrix {
            type Output = Matrix;
            #[track_caller]
            fn $m(self, rhs: &Matrix) -> Matrix {
                (&self).$m(rhs)
            }
        }
        impl $tr<Matrix> for &Matrix {
            type Output = Matrix;
            #[track_caller]
            fn $m(self, rhs: Matrix) -> Matrix {
                self.$m(&rhs)
            }
        }
    };
}
forward_matrix_owned!(Mul, mul);
forward_matrix_owned!(Add, add);
forward_matrix_owned!(Sub, sub);

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", vector::display(self.row(r)))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rref_scalar_normalization() {
        let r = Matrix::from_i64(q(), &[&[2]]).rref().unwrap();
        assert_eq!(r.matrix, Matrix::from_i64(q(), &[&[1]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_dependent_rows() {
        let r = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).rref().unwrap();
        assert_eq!(r.matrix, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_characteristic_two() {
        let r = Matrix::from_i64(f2(), &[&[1, 1], &[1, 1]]).rref().unwrap();
        assert_eq!(r.matrix, Matrix::from_i64(f2(), &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_rejects_mixed_fields() {
        let mut m = Matrix::zeros(q(), 1, 2);
        m.set(0, 1, f2().one());
        assert!(matches!(m.rref(), Err(Error::Malformed(_))));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 3).kernel_basis().is_empty());
        let k = Matrix::zeros(q(), 2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v, &vector::unit(q(), 3, i));
        }
        let k = Matrix::from_i64(f2(), &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![f2().one(), f2().one()]]);
    }

    #[test]
    fn solve_examples() {
        let f = f2();
        let s = Matrix::from_i64(f, &[&[1, 1]])
            .solve_affine(&[f.one()])
            .unwrap()
            .unwrap();
        assert_eq!(s.particular, vec![f.one(), f.zero()]);
        assert_eq!(s.kernel, vec![vec![f.one(), f.one()]]);

        let none = Matrix::from_i64(q(), &[&[0]]).solve_or_witness(&[q().one()]).unwrap();
        assert_eq!(
            none,
            Err(RankWitness {
                rank: 0,
                augmented_rank: 1
            })
        );

        let b: Vec<_> = [3, -1, 4].iter().map(|&x| q().from_i64(x)).collect();
        let s = Matrix::identity(q(), 3).solve_affine(&b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());
        assert!(Matrix::identity(q(), 2).solve_affine(&b).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_matches_lexicographic_coordinates() {
        let a = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(1, 0), &q().from_i64(1));
        assert_eq!(k.get(3, 2), &q().from_i64(4));
        let x = vec![q().from_i64(1), q().from_i64(0)];
        let y = vec![q().from_i64(0), q().from_i64(1)];
        assert_eq!(k.mul_vec(&vector::kron(&x, &y)), vector::kron(&a.mul_vec(&x), &b.mul_vec(&y)));
    }
}
