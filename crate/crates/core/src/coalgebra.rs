//! Finite-dimensional coalgebras, their comodules and cotensor products.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace};
use crate::validation::Validation;

/// A coalgebra given by `comult[i][j][k]`, the coefficient of `e_j⊗e_k` in
/// `Δ(e_i)`, and counit values `ε(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    field: Field,
    dim: usize,
    delta: Matrix,
    counit: Vec<Scalar>,
}

impl Coalgebra {
    pub fn new(field: Field, comult: Vec<Vec<Vec<Scalar>>>, counit: Vec<Scalar>) -> Result<Coalgebra> {
        let dim = counit.len();
        if comult.len() != dim || comult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Malformed(format!(
                "comultiplication of a coalgebra of dimension {dim} must form a {dim}x{dim}x{dim} array"
            )));
        }
        if let Some(x) = comult.iter().flatten().flatten().chain(&counit).find(|x| x.field() != field) {
            return Err(Error::Malformed(format!("scalar in {} inside a coalgebra over {field}", x.field())));
        }
        let delta = Matrix::from_fn(field, dim * dim, dim, |r, i| comult[i][r / dim][r % dim].clone());
        Ok(Coalgebra { field, dim, delta, counit })
    }

    /// From the comultiplication matrix `C → C⊗C` and counit row.
    pub fn from_matrices(delta: Matrix, counit: Vec<Scalar>) -> Result<Coalgebra> {
        let dim = counit.len();
        if delta.rows() != dim * dim || delta.cols() != dim {
            return Err(Error::Malformed("comultiplication matrix has the wrong shape".into()));
        }
        delta.check_field()?;
        Ok(Coalgebra {
            field: delta.field(),
            dim,
            delta,
            counit,
        })
    }

    /// The ground field with `Δ(1) = 1⊗1`.
    pub fn ground(field: Field) -> Coalgebra {
        Coalgebra::grouplike(field, 1)
    }

    /// `n` grouplike basis elements: `Δ(g) = g⊗g`, `ε(g) = 1`.
    pub fn grouplike(field: Field, n: usize) -> Coalgebra {
        let delta = Matrix::from_fn(field, n * n, n, |r, i| if r == i * n + i { field.one() } else { field.zero() });
        Coalgebra::from_matrices(delta, vec![field.one(); n]).expect("grouplike coalgebra")
    }

    /// The coalgebra dual to a finite-dimensional algebra, on the dual basis.
    pub fn dual_of(a: &Algebra) -> Coalgebra {
        let d = a.dim();
        let delta = Matrix::from_fn(a.field(), d * d, d, |r, k| a.product(r / d, r % d)[k].clone());
        Coalgebra::from_matrices(delta, a.unit().to_vec()).expect("dual coalgebra")
    }

    /// The convolution algebra `C*` on the dual basis.
    pub fn dual_algebra(&self) -> Algebra {
        let d = self.dim;
        Algebra::from_products(self.field, d, self.counit.clone(), |i, j| (0..d).map(|k| self.delta.get(i * d + j, k).clone()).collect())
            .expect("dual algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Δ` as a `dim² × dim` matrix.
    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn counit_row(&self) -> Matrix {
        Matrix::row_vector(self.field, &self.counit)
    }

    pub fn comultiply(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.delta.mul_vec(c)
    }

    pub fn epsilon(&self, c: &[Scalar]) -> Scalar {
        vector::dot(&self.counit, c)
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field, self.dim)
    }

    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        let id = self.identity();
        let lhs = &self.delta.kron(&id) * &self.delta;
        let rhs = &id.kron(&self.delta) * &self.delta;
        for i in 0..self.dim {
            v.check(lhs.column(i) == rhs.column(i), "coassociativity", || format!("e{i}"));
        }
        let eps = self.counit_row();
        let left = &eps.kron(&id) * &self.delta;
        let right = &id.kron(&eps) * &self.delta;
        for i in 0..self.dim {
            v.check(left.column(i) == id.column(i), "left counit", || format!("e{i}"));
            v.check(right.column(i) == id.column(i), "right counit", || format!("e{i}"));
        }
        v
    }
}

/// A linear map of coalgebras, meant to be comultiplicative and counital.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    pub source: Arc<Coalgebra>,
    pub target: Arc<Coalgebra>,
    pub matrix: Matrix,
}

impl CoalgebraMorphism {
    pub fn new(source: Arc<Coalgebra>, target: Arc<Coalgebra>, matrix: Matrix) -> Result<CoalgebraMorphism> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Malformed("coalgebra morphism matrix has the wrong shape".into()));
        }
        matrix.check_field()?;
        Ok(CoalgebraMorphism { source, target, matrix })
    }

    pub fn identity(c: Arc<Coalgebra>) -> CoalgebraMorphism {
        CoalgebraMorphism {
            matrix: c.identity(),
            source: c.clone(),
            target: c,
        }
    }

    /// The counit as a morphism onto the ground coalgebra.
    pub fn counit(c: Arc<Coalgebra>) -> CoalgebraMorphism {
        CoalgebraMorphism {
            matrix: c.counit_row(),
            target: Arc::new(Coalgebra::ground(c.field())),
            source: c,
        }
    }

    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        let p = &self.matrix;
        let eps = &self.target.counit_row() * p;
        v.check(eps == self.source.counit_row(), "counit preservation", || "ε".into());
        let lhs = self.target.delta() * p;
        let rhs = &p.kron(p) * self.source.delta();
        for i in 0..self.source.dim() {
            v.check(lhs.column(i) == rhs.column(i), "comultiplicativity", || format!("e{i}"));
        }
        v
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Bi,
}

/// A comodule over a coalgebra: `right: M → M⊗C` and/or `left: M → C⊗M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    pub coalgebra: Arc<Coalgebra>,
    dim: usize,
    right: Option<Matrix>,
    left: Option<Matrix>,
}

impl Comodule {
    pub fn new(coalgebra: Arc<Coalgebra>, dim: usize, left: Option<Matrix>, right: Option<Matrix>) -> Result<Comodule> {
        let c = coalgebra.dim();
        for m in left.iter().chain(&right) {
            if m.rows() != dim * c || m.cols() != dim {
                return Err(Error::Malformed(format!(
                    "coaction matrix is {}x{}, expected {}x{dim}",
                    m.rows(),
                    m.cols(),
                    dim * c
                )));
            }
            m.check_field()?;
        }
        if left.is_none() && right.is_none() {
            return Err(Error::Malformed("comodule without a coaction".into()));
        }
        Ok(Comodule {
            coalgebra,
            dim,
            right,
            left,
        })
    }

    pub fn right(coalgebra: Arc<Coalgebra>, dim: usize, rho: Matrix) -> Result<Comodule> {
        Comodule::new(coalgebra, dim, None, Some(rho))
    }

    pub fn left(coalgebra: Arc<Coalgebra>, dim: usize, lambda: Matrix) -> Result<Comodule> {
        Comodule::new(coalgebra, dim, Some(lambda), None)
    }

    /// `C` over itself on both sides via `Δ`.
    pub fn regular(c: Arc<Coalgebra>) -> Comodule {
        let d = c.delta().clone();
        Comodule {
            dim: c.dim(),
            right: Some(d.clone()),
            left: Some(d),
            coalgebra: c,
        }
    }

    pub fn side(&self) -> Side {
        match (&self.left, &self.right) {
            (Some(_), Some(_)) => Side::Bi,
            (Some(_), None) => Side::Left,
            _ => Side::Right,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.coalgebra.field()
    }

    pub fn right_coaction(&self) -> Option<&Matrix> {
        self.right.as_ref()
    }

    pub fn left_coaction(&self) -> Option<&Matrix> {
        self.left.as_ref()
    }

    pub fn as_right(&self) -> Result<Comodule> {
        let r = self.right.clone().ok_or_else(|| Error::Precondition("not a right comodule".into()))?;
        Comodule::right(self.coalgebra.clone(), self.dim, r)
    }

    pub fn as_left(&self) -> Result<Comodule> {
        let l = self.left.clone().ok_or_else(|| Error::Precondition("not a left comodule".into()))?;
        Comodule::left(self.coalgebra.clone(), self.dim, l)
    }

    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        let c = &self.coalgebra;
        let im = Matrix::identity(self.field(), self.dim);
        let ic = c.identity();
        let eps = c.counit_row();
        if let Some(r) = &self.right {
            let lhs = &r.kron(&ic) * r;
            let rhs = &im.kron(c.delta()) * r;
            for i in 0..self.dim {
                v.check(lhs.column(i) == rhs.column(i), "right coassociativity", || format!("m{i}"));
            }
            let cu = &im.kron(&eps) * r;
            for i in 0..self.dim {
                v.check(cu.column(i) == im.column(i), "right counit", || format!("m{i}"));
            }
        }
        if let Some(l) = &self.left {
            let lhs = &ic.kron(l) * l;
            let rhs = &c.delta().kron(&im) * l;
            for i in 0..self.dim {
                v.check(lhs.column(i) == rhs.column(i), "left coassociativity", || format!("m{i}"));
            }
            let cu = &eps.kron(&im) * l;
            for i in 0..self.dim {
                v.check(cu.column(i) == im.column(i), "left counit", || format!("m{i}"));
            }
        }
        if let (Some(l), Some(r)) = (&self.left, &self.right) {
            let lhs = &l.kron(&ic) * r;
            let rhs = &ic.kron(r) * l;
            for i in 0..self.dim {
                v.check(lhs.column(i) == rhs.column(i), "coactions commute", || format!("m{i}"));
            }
        }
        v
    }

    /// Whether `f: self → other` commutes with the right coactions.
    pub fn is_right_colinear(&self, other: &Comodule, f: &Matrix) -> bool {
        match (&self.right, &other.right) {
            (Some(a), Some(b)) => b * f == &f.kron(&self.coalgebra.identity()) * a,
            _ => false,
        }
    }

    /// Whether `f: self → other` commutes with the left coactions.
    pub fn is_left_colinear(&self, other: &Comodule, f: &Matrix) -> bool {
        match (&self.left, &other.left) {
            (Some(a), Some(b)) => b * f == &self.coalgebra.identity().kron(f) * a,
            _ => false,
        }
    }
}

/// `M □_C N`: the kernel of `ρ^M⊗N − M⊗λ^N` inside `M⊗N`.
pub fn cotensor(m: &Comodule, n: &Comodule) -> Result<Subspace> {
    if m.coalgebra != n.coalgebra {
        return Err(Error::Malformed("cotensor over different coalgebras".into()));
    }
    let rho = m.right.as_ref().ok_or_else(|| Error::Malformed("left factor of a cotensor needs a right coaction".into()))?;
    let lambda = n.left.as_ref().ok_or_else(|| Error::Malformed("right factor of a cotensor needs a left coaction".into()))?;
    let f = m.field();
    let map = &rho.kron(&Matrix::identity(f, n.dim)) - &Matrix::identity(f, m.dim).kron(lambda);
    Ok(map.kernel())
}

/// Transports coactions along a coalgebra morphism `π: C → B`.
pub fn comodule_via_morphism(m: &Comodule, pi: &CoalgebraMorphism) -> Result<Comodule> {
    if *pi.source != *m.coalgebra {
        return Err(Error::Malformed("morphism does not start at the comodule's coalgebra".into()));
    }
    pi.validate().require("coalgebra morphism")?;
    let im = Matrix::identity(m.field(), m.dim);
    let right = m.right.as_ref().map(|r| &im.kron(&pi.matrix) * r);
    let left = m.left.as_ref().map(|l| &pi.matrix.kron(&im) * l);
    Comodule::new(pi.target.clone(), m.dim, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grouplike_and_broken_counit() {
        let f = Field::prime(3).unwrap();
        let c = Coalgebra::grouplike(f, 2);
        assert!(c.validate().is_valid());
        let bad = Coalgebra::from_matrices(c.delta().clone(), vec![f.zero(), f.one()]).unwrap();
        let v = bad.validate();
        assert!(v.violates("left counit"));
        assert!(v.violations.iter().all(|x| x.at == "e0"));
    }

    #[test]
    fn dual_roundtrip() {
        let f = Field::prime(2).unwrap();
        let a = Algebra::matrix_units(f, 2);
        let c = Coalgebra::dual_of(&a);
        assert!(c.validate().is_valid());
        assert_eq!(c.dual_algebra(), a);
    }

    #[test]
    fn cotensor_of_grouplikes() {
        let f = Field::prime(3).unwrap();
        let c = Arc::new(Coalgebra::grouplike(f, 2));
        let reg = Comodule::regular(c.clone());
        let s = cotensor(&reg, &reg).unwrap();
        assert_eq!(s.dim(), 2);
        let triv = comodule_via_morphism(&reg, &CoalgebraMorphism::counit(c)).unwrap();
        assert!(triv.validate().is_valid());
        assert_eq!(cotensor(&triv, &triv).unwrap().dim(), 4);
    }
}
