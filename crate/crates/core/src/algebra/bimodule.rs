use std::sync::Arc;

use super::algebra::{combine, Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace};
use crate::validation::Validation;

/// An `(L, R)`-bimodule: `left[i]` is `m ↦ e_i·m` for the basis of `L`,
/// `right[i]` is `m ↦ m·e_i` for the basis of `R`. One-sided modules use the
/// ground field on the other side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(left_algebra: Arc<Algebra>, right_algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let field = left_algebra.field();
        if right_algebra.field() != field {
            return Err(Error::Malformed("acting algebras over different fields".into()));
        }
        if left.len() != left_algebra.dim() || right.len() != right_algebra.dim() {
            return Err(Error::Malformed(format!(
                "expected {} left and {} right action matrices, got {} and {}",
                left_algebra.dim(),
                right_algebra.dim(),
                left.len(),
                right.len()
            )));
        }
        for m in left.iter().chain(&right) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Malformed(format!(
                    "action matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            m.check_field()?;
            if m.field() != field {
                return Err(Error::Malformed("action matrix over the wrong field".into()));
            }
        }
        Ok(Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left,
            right,
        })
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: Arc<Algebra>) -> Bimodule {
        let left = (0..a.dim()).map(|i| a.left_basis(i).clone()).collect();
        let right = (0..a.dim()).map(|i| a.right_basis(i).clone()).collect();
        Bimodule {
            dim: a.dim(),
            left_algebra: a.clone(),
            right_algebra: a,
            left,
            right,
        }
    }

    /// A left `A`-module viewed as an `(A, k)`-bimodule.
    pub fn left_module(a: Arc<Algebra>, dim: usize, left: Vec<Matrix>) -> Result<Bimodule> {
        let k = Arc::new(Algebra::ground(a.field()));
        let right = vec![Matrix::identity(a.field(), dim)];
        Bimodule::new(a, k, dim, left, right)
    }

    /// A right `A`-module viewed as a `(k, A)`-bimodule.
    pub fn right_module(a: Arc<Algebra>, dim: usize, right: Vec<Matrix>) -> Result<Bimodule> {
        let k = Arc::new(Algebra::ground(a.field()));
        let left = vec![Matrix::identity(a.field(), dim)];
        Bimodule::new(k, a, dim, left, right)
    }

    /// The vector space `k^n` with trivial actions of the ground field.
    pub fn vector_space(field: Field, dim: usize) -> Bimodule {
        let k = Arc::new(Algebra::ground(field));
        let id = vec![Matrix::identity(field, dim)];
        Bimodule {
            left_algebra: k.clone(),
            right_algebra: k,
            dim,
            left: id.clone(),
            right: id,
        }
    }

    pub fn field(&self) -> Field {
        self.left_algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_basis(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_basis(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right
    }

    /// The operator `m ↦ a·m`.
    pub fn act_left(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.left, a)
    }

    /// The operator `m ↦ m·a`.
    pub fn act_right(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.right, a)
    }

    /// Pulls both actions back along algebra maps into the acting algebras.
    pub fn restrict(&self, left: &AlgebraMorphism, right: &AlgebraMorphism) -> Result<Bimodule> {
        if *left.target != *self.left_algebra || *right.target != *self.right_algebra {
            return Err(Error::Malformed("restriction along a map into a different algebra".into()));
        }
        let l = (0..left.source.dim()).map(|i| self.act_left(&left.matrix.column(i))).collect();
        let r = (0..right.source.dim()).map(|i| self.act_right(&right.matrix.column(i))).collect();
        Bimodule::new(left.source.clone(), right.source.clone(), self.dim, l, r)
    }

    pub fn restrict_left(&self, left: &AlgebraMorphism) -> Result<Bimodule> {
        self.restrict(left, &AlgebraMorphism::identity(self.right_algebra.clone()))
    }

    pub fn restrict_right(&self, right: &AlgebraMorphism) -> Result<Bimodule> {
        self.restrict(&AlgebraMorphism::identity(self.left_algebra.clone()), right)
    }

    /// Forgets the right action.
    pub fn left_part(&self) -> Bimodule {
        Bimodule::left_module(self.left_algebra.clone(), self.dim, self.left.clone()).expect("left part")
    }

    /// Forgets the left action.
    pub fn right_part(&self) -> Bimodule {
        Bimodule::right_module(self.right_algebra.clone(), self.dim, self.right.clone()).expect("right part")
    }

    /// The sub-bimodule on an invariant subspace, in its coordinates.
    pub fn submodule(&self, space: &Subspace) -> Result<Bimodule> {
        let restrict = |m: &Matrix| {
            space
                .corestrict(&(m * space.inclusion()))
                .ok_or_else(|| Error::Precondition("subspace is not stable under the actions".into()))
        };
        let left = self.left.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        Bimodule::new(self.left_algebra.clone(), self.right_algebra.clone(), space.dim(), left, right)
    }

    /// The quotient by an invariant subspace, on coordinates complementary
    /// to the subspace's echelon basis. Returns the module and the projection.
    pub fn quotient(&self, space: &Subspace) -> Result<(Bimodule, Matrix)> {
        let field = self.field();
        let mut rs = crate::linalg::RowSpace::new(field, self.dim);
        for v in space.basis_vectors() {
            rs.insert(&v);
        }
        let free = rs.free_columns();
        let mut proj = Matrix::zeros(field, free.len(), self.dim);
        for (fi, &f) in free.iter().enumerate() {
            proj.set(fi, f, field.one());
            for p in rs.pivots() {
                proj.set(fi, p, -rs.entry(p, f));
            }
        }
        let section = Matrix::from_fn(field, self.dim, free.len(), |r, c| if free[c] == r { field.one() } else { field.zero() });
        for m in self.left.iter().chain(&self.right) {
            if !space.contains_columns(&(m * space.inclusion())) {
                return Err(Error::Precondition("subspace is not stable under the actions".into()));
            }
        }
        let left = self.left.iter().map(|m| &(&proj * m) * &section).collect();
        let right = self.right.iter().map(|m| &(&proj * m) * &section).collect();
        Ok((Bimodule::new(self.left_algebra.clone(), self.right_algebra.clone(), free.len(), left, right)?, proj))
    }

    /// Direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.left_algebra != other.left_algebra || self.right_algebra != other.right_algebra {
            return Err(Error::Malformed("direct sum of modules over different algebras".into()));
        }
        let n = self.dim + other.dim;
        let f = self.field();
        let block = |a: &Matrix, b: &Matrix| {
            Matrix::from_fn(f, n, n, |r, c| {
                if r < self.dim && c < self.dim {
                    a.get(r, c).clone()
                } else if r >= self.dim && c >= self.dim {
                    b.get(r - self.dim, c - self.dim).clone()
                } else {
                    f.zero()
                }
            })
        };
        let left = self.left.iter().zip(&other.left).map(|(a, b)| block(a, b)).collect();
        let right = self.right.iter().zip(&other.right).map(|(a, b)| block(a, b)).collect();
        Bimodule::new(self.left_algebra.clone(), self.right_algebra.clone(), n, left, right)
    }

    /// Module axioms. With `right_unital = false` the right unit law is
    /// skipped (pre-corings).
    pub fn validate_with(&self, right_unital: bool) -> Validation {
        let mut v = Validation::new();
        let l = &self.left_algebra;
        let r = &self.right_algebra;
        let id = Matrix::identity(self.field(), self.dim);
        v.check(self.act_left(l.unit()) == id, "left module unit", || "1".into());
        if right_unital {
            v.check(self.act_right(r.unit()) == id, "right module unit", || "1".into());
        }
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let lhs = self.act_left(l.product(i, j));
                v.check(lhs == &self.left[i] * &self.left[j], "left module associativity", || format!("({i},{j})"));
            }
        }
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let lhs = self.act_right(r.product(i, j));
                v.check(lhs == &self.right[j] * &self.right[i], "right module associativity", || format!("({i},{j})"));
            }
        }
        for i in 0..l.dim() {
            for j in 0..r.dim() {
                let lr = &self.left[i] * &self.right[j];
                v.check(lr == &self.right[j] * &self.left[i], "actions commute", || format!("({i},{j})"));
            }
        }
        v
    }

    pub fn validate(&self) -> Validation {
        self.validate_with(true)
    }

    /// Whether `f: self → other` commutes with the left actions.
    pub fn is_left_linear(&self, other: &Bimodule, f: &Matrix) -> bool {
        self.left_algebra == other.left_algebra && (0..self.left.len()).all(|i| f * &self.left[i] == &other.left[i] * f)
    }

    /// Whether `f: self → other` commutes with the right actions.
    pub fn is_right_linear(&self, other: &Bimodule, f: &Matrix) -> bool {
        self.right_algebra == other.right_algebra && (0..self.right.len()).all(|i| f * &self.right[i] == &other.right[i] * f)
    }

    pub fn is_bilinear(&self, other: &Bimodule, f: &Matrix) -> bool {
        self.is_left_linear(other, f) && self.is_right_linear(other, f)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field(), self.dim, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_bimodule_validates() {
        let f3 = Field::prime(3).unwrap();
        let a = Arc::new(Algebra::matrix_units(f3, 2));
        assert!(Bimodule::regular(a).validate().is_valid());
    }

    #[test]
    fn non_commuting_actions_are_reported() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let reg = Bimodule::regular(a.clone());
        // Twist the right action of x by a non-A-linear map.
        let twist = Matrix::from_i64(q, &[&[0, 1], &[1, 0]]);
        let right = vec![reg.right_basis(0).clone(), twist];
        let m = Bimodule::new(a.clone(), a, 2, reg.left_actions().to_vec(), right).unwrap();
        let v = m.validate();
        assert!(v.violates("actions commute"));
        assert!(v.violates("right module associativity"));
    }
}
