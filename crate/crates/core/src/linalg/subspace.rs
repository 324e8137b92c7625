use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::rowspace::RowSpace;
use super::vector;

/// A subspace of `field^ambient` with a basis in echelon position: restricted
/// to `coord_rows`, the basis matrix is the identity, so coordinates of a
/// member are read off those rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Matrix,
    coord_rows: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Matrix::zeros(field, ambient, 0),
            coord_rows: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Matrix::identity(field, ambient),
            coord_rows: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors, with basis the reduced echelon rows.
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut rs = RowSpace::new(field, ambient);
        for v in vectors {
            rs.insert(v);
        }
        Subspace::from_rowspace(&rs)
    }

    pub fn from_rowspace(rs: &RowSpace) -> Subspace {
        let rows = rs.rows_dense();
        Subspace {
            field: rs.field(),
            ambient: rs.cols(),
            basis: Matrix::from_columns(rs.field(), rs.cols(), &rows),
            coord_rows: rs.pivots(),
        }
    }

    pub(crate) fn from_kernel_vectors(ambient: usize, field: Field, vectors: Vec<Vec<Scalar>>, free: Vec<usize>) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Matrix::from_columns(field, ambient, &vectors),
            coord_rows: free,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.coord_rows.len()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn inclusion(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    /// The `dim × ambient` matrix reading coordinates of members. Applied to
    /// a non-member it returns garbage; use [`coords`](Self::coords) when
    /// membership is not known.
    pub fn coordinate_map(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.ambient);
        for (i, &r) in self.coord_rows.iter().enumerate() {
            m.set(i, r, self.field.one());
        }
        m
    }

    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let c: Vec<Scalar> = self.coord_rows.iter().map(|&r| v[r].clone()).collect();
        (self.basis.mul_vec(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    /// Whether every column of `m` lies in the subspace.
    pub fn contains_columns(&self, m: &Matrix) -> bool {
        m.columns().iter().all(|c| self.contains(c))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Corestricts a map with image inside the subspace; `None` if some
    /// column falls outside.
    pub fn corestrict(&self, m: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vec<Scalar>>> = m.columns().iter().map(|c| self.coords(c)).collect();
        cols.map(|cs| Matrix::from_columns(self.field, self.dim(), &cs))
    }

    pub fn element(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.basis.mul_vec(coords)
    }

    pub fn is_zero_space(&self) -> bool {
        self.dim() == 0
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vs: Vec<String> = self.basis_vectors().iter().map(|v| vector::display(v)).collect();
        write!(f, "span{{{}}}", vs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_of_members() {
        let q = Field::Rationals;
        let s = Subspace::span(q, 3, &[vector::from_i64(q, &[1, 1, 0]), vector::from_i64(q, &[2, 2, 0])]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.coords(&vector::from_i64(q, &[3, 3, 0])), Some(vector::from_i64(q, &[3])));
        assert!(!s.contains(&vector::from_i64(q, &[1, 0, 0])));
        let k = Matrix::from_i64(q, &[&[1, -1, 0]]).kernel();
        assert!(s.is_subspace_of(&k));
        assert_eq!(k.dim(), 2);
    }
}
