use super::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, RowSpace, Scalar};

/// `M ⊗_B N` for an `(L, B)`-bimodule `M` and a `(B, R)`-bimodule `N`.
///
/// The quotient basis is the set of non-pivot coordinates of the reduced
/// relation space inside `M ⊗_k N` (lexicographic, `M` index major).
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub left: Bimodule,
    pub right: Bimodule,
    free: Vec<usize>,
    project: Matrix,
    /// Column `c` of `project`, sparsely.
    columns: Vec<Vec<(usize, Scalar)>>,
    relation_rank: usize,
    module: Bimodule,
}

impl BalancedTensor {
    pub fn new(left: &Bimodule, right: &Bimodule) -> Result<BalancedTensor> {
        if left.right_algebra != right.left_algebra {
            return Err(Error::Malformed("balanced tensor over mismatched middle algebras".into()));
        }
        let field = left.field();
        let (m, n) = (left.dim(), right.dim());
        let full = m * n;
        let mut rs = RowSpace::new(field, full);
        for k in 0..left.right_algebra.dim() {
            let rk = left.right_basis(k);
            let lk = right.left_basis(k);
            for i in 0..m {
                for j in 0..n {
                    let mut v = vec![field.zero(); full];
                    for a in 0..m {
                        let x = rk.get(a, i);
                        if !x.is_zero() {
                            v[a * n + j] += x;
                        }
                    }
                    for b in 0..n {
                        let x = lk.get(b, j);
                        if !x.is_zero() {
                            v[i * n + b] -= x;
                        }
                    }
                    if !vector::is_zero(&v) {
                        rs.insert(&v);
                    }
                }
            }
        }
        let free = rs.free_columns();
        let mut index = vec![usize::MAX; full];
        for (fi, &f) in free.iter().enumerate() {
            index[f] = fi;
        }
        let mut columns: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); full];
        for (fi, &f) in free.iter().enumerate() {
            columns[f].push((fi, field.one()));
        }
        for p in rs.pivots() {
            columns[p] = rs
                .row_entries(p)
                .iter()
                .filter(|(c, _)| *c != p)
                .map(|(c, x)| (index[*c], -x))
                .collect();
        }
        let mut project = Matrix::zeros(field, free.len(), full);
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col {
                project.set(*r, c, x.clone());
            }
        }
        let q = free.len();
        let mut t = BalancedTensor {
            left: left.clone(),
            right: right.clone(),
            free,
            project,
            columns,
            relation_rank: rs.rank(),
            module: Bimodule::vector_space(field, 0),
        };
        let la: Vec<Matrix> = (0..left.left_algebra.dim())
            .map(|i| t.induced(|a| left.left_basis(i).column(a), |b| vector::unit(field, n, b)))
            .collect();
        let ra: Vec<Matrix> = (0..right.right_algebra.dim())
            .map(|i| t.induced(|a| vector::unit(field, m, a), |b| right.right_basis(i).column(b)))
            .collect();
        t.module = Bimodule::new(left.left_algebra.clone(), right.right_algebra.clone(), q, la, ra)?;
        Ok(t)
    }

    fn induced(&self, f: impl Fn(usize) -> Vec<Scalar>, g: impl Fn(usize) -> Vec<Scalar>) -> Matrix {
        let n = self.right.dim();
        let cols: Vec<Vec<Scalar>> = self
            .free
            .iter()
            .map(|&c| self.project_vec(&vector::kron(&f(c / n), &g(c % n))))
            .collect();
        Matrix::from_columns(self.left.field(), self.dim(), &cols)
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Dimension of `M ⊗_k N`.
    pub fn full_dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    /// Tensor coordinates used as the quotient basis.
    pub fn free_coordinates(&self) -> &[usize] {
        &self.free
    }

    /// Quotient map `M ⊗_k N → M ⊗_B N`.
    pub fn project(&self) -> &Matrix {
        &self.project
    }

    /// Canonical representatives: unit tensors at the free coordinates.
    pub fn section(&self) -> Matrix {
        let f = self.left.field();
        Matrix::from_fn(f, self.full_dim(), self.dim(), |r, c| if self.free[c] == r { f.one() } else { f.zero() })
    }

    pub fn project_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.full_dim(), "tensor vector has wrong length");
        let mut out = vector::zeros(self.left.field(), self.dim());
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, p) in &self.columns[c] {
                out[*r] += &(p * x);
            }
        }
        out
    }

    /// Projects every column of a map into `M ⊗_k N`.
    pub fn project_map(&self, m: &Matrix) -> Matrix {
        let cols: Vec<Vec<Scalar>> = m.columns().iter().map(|c| self.project_vec(c)).collect();
        Matrix::from_columns(self.left.field(), self.dim(), &cols)
    }

    /// The class of `x ⊗ y`.
    pub fn element(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.project_vec(&vector::kron(x, y))
    }

    /// The induced `(L, R)`-bimodule structure on the quotient.
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    /// `f ⊗_B g` from this tensor into `target`, for `f: M → M'` right
    /// `B`-linear and `g: N → N'` left `B`-linear.
    pub fn map_to(&self, target: &BalancedTensor, f: &Matrix, g: &Matrix) -> Matrix {
        assert_eq!((f.cols(), g.cols()), (self.left.dim(), self.right.dim()), "tensor map source mismatch");
        assert_eq!((f.rows(), g.rows()), (target.left.dim(), target.right.dim()), "tensor map target mismatch");
        let n = self.right.dim();
        let cols: Vec<Vec<Scalar>> = self
            .free
            .iter()
            .map(|&c| target.project_vec(&vector::kron(&f.column(c / n), &g.column(c % n))))
            .collect();
        Matrix::from_columns(self.left.field(), target.dim(), &cols)
    }

    /// A linear map out of `M ⊗_k N` that kills every relation factors
    /// through the quotient; returns the factored map or `None`.
    pub fn factor(&self, h: &Matrix) -> Option<Matrix> {
        let induced = h * &self.section();
        (&induced * &self.project == *h).then_some(induced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;
    use std::sync::Arc;

    #[test]
    fn dimension_examples() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let reg = Bimodule::regular(a.clone());
        let t = BalancedTensor::new(&reg, &reg).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.relation_rank(), 2);

        let f3 = Field::prime(3).unwrap();
        let m = Arc::new(Algebra::matrix_units(f3, 2));
        let reg = Bimodule::regular(m);
        let t = BalancedTensor::new(&reg, &reg).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.relation_rank(), 12);
    }

    #[test]
    fn ground_tensor_has_identity_projection() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let k = Arc::new(Algebra::ground(q));
        let ar = Bimodule::new(a.clone(), k.clone(), 2, (0..2).map(|i| a.left_basis(i).clone()).collect(), vec![Matrix::identity(q, 2)]).unwrap();
        let al = Bimodule::new(k, a.clone(), 2, vec![Matrix::identity(q, 2)], (0..2).map(|i| a.right_basis(i).clone()).collect()).unwrap();
        let t = BalancedTensor::new(&ar, &al).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.project().is_identity());
        assert!(t.module().validate().is_valid());
    }
}
