use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace};
use crate::validation::Validation;

/// A finite-dimensional algebra given by structure constants: `mult[i][j][k]`
/// is the coefficient of `e_k` in `e_i·e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    mult: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Algebra {
    pub fn new(field: Field, mult: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Algebra> {
        let dim = unit.len();
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Malformed(format!(
                "structure constants of an algebra of dimension {dim} must form a {dim}x{dim}x{dim} array"
            )));
        }
        let all = mult.iter().flatten().flatten().chain(&unit);
        if let Some(x) = all.into_iter().find(|x| x.field() != field) {
            return Err(Error::Malformed(format!("scalar in {} inside an algebra over {field}", x.field())));
        }
        let left = (0..dim)
            .map(|i| Matrix::from_fn(field, dim, dim, |k, j| mult[i][j][k].clone()))
            .collect();
        let right = (0..dim)
            .map(|i| Matrix::from_fn(field, dim, dim, |k, j| mult[j][i][k].clone()))
            .collect();
        Ok(Algebra {
            field,
            dim,
            mult,
            unit,
            left,
            right,
        })
    }

    /// Builds an algebra from a function giving the product of basis elements.
    pub fn from_products(field: Field, dim: usize, unit: Vec<Scalar>, mut prod: impl FnMut(usize, usize) -> Vec<Scalar>) -> Result<Algebra> {
        let mult = (0..dim).map(|i| (0..dim).map(|j| prod(i, j)).collect()).collect();
        Algebra::new(field, mult, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        Algebra::new(field, vec![vec![vec![field.one()]]], vec![field.one()]).expect("ground algebra")
    }

    /// `M_n(k)` on matrix units `E_{ij}` at index `i·n + j`.
    pub fn matrix_units(field: Field, n: usize) -> Algebra {
        let dim = n * n;
        let unit = (0..dim).map(|x| if x / n == x % n { field.one() } else { field.zero() }).collect();
        Algebra::from_products(field, dim, unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            if j == k {
                vector::unit(field, dim, i * n + l)
            } else {
                vector::zeros(field, dim)
            }
        })
        .expect("matrix algebra")
    }

    /// `k[x]/(x^n)` on the basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Algebra {
        Algebra::from_products(field, n, vector::unit(field, n, 0), |i, j| {
            if i + j < n {
                vector::unit(field, n, i + j)
            } else {
                vector::zeros(field, n)
            }
        })
        .expect("truncated polynomial algebra")
    }

    /// Group algebra of the cyclic group of order `n` on the group basis.
    pub fn cyclic_group(field: Field, n: usize) -> Algebra {
        Algebra::from_products(field, n, vector::unit(field, n, 0), |i, j| vector::unit(field, n, (i + j) % n))
            .expect("cyclic group algebra")
    }

    /// `k^n` with orthogonal idempotents as basis.
    pub fn diagonal(field: Field, n: usize) -> Algebra {
        let unit = vec![field.one(); n];
        Algebra::from_products(field, n, unit, |i, j| {
            if i == j {
                vector::unit(field, n, i)
            } else {
                vector::zeros(field, n)
            }
        })
        .expect("diagonal algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Scalar>>> {
        &self.mult
    }

    /// Coordinates of `e_i·e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.left_mul(x).mul_vec(y)
    }

    /// Left multiplication by `e_i`.
    pub fn left_basis(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Right multiplication by `e_i`.
    pub fn right_basis(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.left, x)
    }

    pub fn right_mul(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.right, x)
    }

    /// The multiplication map `A⊗A → A` on lexicographic tensor coordinates.
    pub fn mult_matrix(&self) -> Matrix {
        let d = self.dim;
        Matrix::from_fn(self.field, d, d * d, |k, c| self.mult[c / d][c % d][k].clone())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim, i)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn opposite(&self) -> Algebra {
        Algebra::from_products(self.field, self.dim, self.unit.clone(), |i, j| self.mult[j][i].clone()).expect("opposite algebra")
    }

    /// Center of the algebra.
    pub fn center(&self) -> Subspace {
        let mut eqs = Matrix::zeros(self.field, 0, self.dim);
        for i in 0..self.dim {
            eqs = eqs.vstack(&(&self.left[i] - &self.right[i]));
        }
        eqs.kernel()
    }

    /// Associativity and unit laws on all basis elements.
    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = &self.mult[i][j];
                for k in 0..self.dim {
                    let lhs = self.right[k].mul_vec(ij);
                    let rhs = self.left[i].mul_vec(&self.mult[j][k]);
                    v.check(lhs == rhs, "associativity", || format!("({i},{j},{k})"));
                }
            }
        }
        let lu = self.left_mul(&self.unit);
        let ru = self.right_mul(&self.unit);
        for i in 0..self.dim {
            v.check(lu.column(i) == self.basis_vector(i), "left unit", || format!("e{i}"));
            v.check(ru.column(i) == self.basis_vector(i), "right unit", || format!("e{i}"));
        }
        v
    }

    pub fn into_arc(self) -> Arc<Algebra> {
        Arc::new(self)
    }
}

pub(crate) fn combine(field: Field, n: usize, mats: &[Matrix], x: &[Scalar]) -> Matrix {
    assert_eq!(mats.len(), x.len(), "coordinate vector has wrong length");
    let mut out = Matrix::zeros(field, n, n);
    for (m, c) in mats.iter().zip(x) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}

/// A unital subalgebra given by a basis inside an ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub algebra: Arc<Algebra>,
    pub space: Subspace,
    pub ambient: Arc<Algebra>,
}

impl Subalgebra {
    /// Structure constants on the subspace basis; fails unless the subspace
    /// contains 1 and is closed under multiplication.
    pub fn from_subspace(ambient: Arc<Algebra>, space: Subspace) -> Result<Subalgebra> {
        let f = ambient.field();
        let unit = space
            .coords(ambient.unit())
            .ok_or_else(|| Error::Precondition("subspace does not contain 1".into()))?;
        let basis = space.basis_vectors();
        let mut mult = Vec::with_capacity(basis.len());
        for x in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in &basis {
                let p = ambient.mul(x, y);
                row.push(
                    space
                        .coords(&p)
                        .ok_or_else(|| Error::Precondition("subspace is not closed under multiplication".into()))?,
                );
            }
            mult.push(row);
        }
        let algebra = Algebra::new(f, mult, unit)?;
        Ok(Subalgebra {
            algebra: Arc::new(algebra),
            space,
            ambient,
        })
    }

    pub fn whole(ambient: Arc<Algebra>) -> Subalgebra {
        Subalgebra {
            space: Subspace::full(ambient.field(), ambient.dim()),
            algebra: ambient.clone(),
            ambient,
        }
    }

    pub fn scalars(ambient: Arc<Algebra>) -> Subalgebra {
        let space = Subspace::span(ambient.field(), ambient.dim(), &[ambient.unit().to_vec()]);
        Subalgebra::from_subspace(ambient, space).expect("scalars form a subalgebra")
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn inclusion(&self) -> AlgebraMorphism {
        AlgebraMorphism {
            source: self.algebra.clone(),
            target: self.ambient.clone(),
            matrix: self.space.inclusion().clone(),
        }
    }
}

/// A linear map between algebras, meant to be unital and multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<AlgebraMorphism> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Malformed(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        matrix.check_field()?;
        if matrix.field() != source.field() || source.field() != target.field() {
            return Err(Error::Malformed("morphism mixes fields".into()));
        }
        Ok(AlgebraMorphism { source, target, matrix })
    }

    pub fn identity(a: Arc<Algebra>) -> AlgebraMorphism {
        AlgebraMorphism {
            matrix: Matrix::identity(a.field(), a.dim()),
            source: a.clone(),
            target: a,
        }
    }

    /// The unit map `k → A`.
    pub fn unit_map(a: Arc<Algebra>) -> AlgebraMorphism {
        AlgebraMorphism {
            matrix: Matrix::column_vector(a.field(), a.unit()),
            source: Arc::new(Algebra::ground(a.field())),
            target: a,
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        v.check(self.apply(self.source.unit()) == self.target.unit(), "unit preservation", || "1".into());
        let s = &self.source;
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(s.product(i, j));
                let rhs = self.target.mul(&self.matrix.column(i), &self.matrix.column(j));
                v.check(lhs == rhs, "multiplicativity", || format!("({i},{j})"));
            }
        }
        v
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    /// The image as a subalgebra of the target.
    pub fn image(&self) -> Result<Subalgebra> {
        Subalgebra::from_subspace(self.target.clone(), self.matrix.column_space())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_validate() {
        let q = Field::Rationals;
        let f3 = Field::prime(3).unwrap();
        assert!(Algebra::truncated_polynomial(q, 2).validate().is_valid());
        assert!(Algebra::matrix_units(f3, 2).validate().is_valid());
        assert!(Algebra::cyclic_group(f3, 2).validate().is_valid());
        assert!(Algebra::diagonal(Field::prime(2).unwrap(), 2).validate().is_valid());
    }

    #[test]
    fn broken_square_of_x() {
        let q = Field::Rationals;
        let good = Algebra::truncated_polynomial(q, 2);
        let mut mult = good.structure_constants().clone();
        mult[1][1] = vector::from_i64(q, &[1, 0]);
        let a = Algebra::new(q, mult, good.unit().to_vec()).unwrap();
        let v = a.validate();
        // x² = 1 is associative; the identity is still a unit.
        assert!(v.is_valid());
        let mut mult = good.structure_constants().clone();
        mult[1][1] = vector::from_i64(q, &[0, 1]);
        mult[1][0] = vector::from_i64(q, &[1, 0]);
        let b = Algebra::new(q, mult, good.unit().to_vec()).unwrap();
        assert!(!b.validate().is_valid());
    }

    #[test]
    fn center_of_matrix_algebra_is_scalars() {
        let f3 = Field::prime(3).unwrap();
        let a = Algebra::matrix_units(f3, 2);
        let z = a.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(a.unit()));
    }
}
