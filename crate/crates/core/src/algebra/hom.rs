use std::sync::Arc;

use super::algebra::{Algebra, Subalgebra};
use super::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, Matrix, Scalar, Subspace, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    LeftLinear,
    RightLinear,
    Bilinear,
}

/// A basis of a space of module maps `M → N`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub flavor: Flavor,
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ cᵢ·basisᵢ`.
    pub fn combination(&self, coeffs: &[Scalar]) -> Matrix {
        assert_eq!(coeffs.len(), self.basis.len(), "coefficient count mismatch");
        let field = coeffs.first().map(Scalar::field);
        let mut out = match field {
            Some(f) => Matrix::zeros(f, self.target_dim, self.source_dim),
            None => return self.zero_map(),
        };
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    fn zero_map(&self) -> Matrix {
        let f = self.basis.first().map_or(crate::linalg::Field::Rationals, Matrix::field);
        Matrix::zeros(f, self.target_dim, self.source_dim)
    }

    /// Coordinates of `f` in the basis, if `f` lies in the span.
    pub fn coords(&self, f: &Matrix) -> Option<Vec<Scalar>> {
        let field = f.field();
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        let m = Matrix::from_columns(field, self.target_dim * self.source_dim, &cols);
        let sol = m.solve_affine(f.entries()).ok()??;
        Some(sol.particular)
    }
}

/// Maps `m → n` commuting with the actions named by `flavor`, as the kernel
/// of the linearity constraints.
pub fn hom_space(m: &Bimodule, n: &Bimodule, flavor: Flavor) -> Result<HomSpace> {
    let left = matches!(flavor, Flavor::LeftLinear | Flavor::Bilinear);
    let right = matches!(flavor, Flavor::RightLinear | Flavor::Bilinear);
    if left && m.left_algebra != n.left_algebra {
        return Err(Error::Malformed("left-linear maps between modules over different algebras".into()));
    }
    if right && m.right_algebra != n.right_algebra {
        return Err(Error::Malformed("right-linear maps between modules over different algebras".into()));
    }
    let field = m.field();
    let (blocks, vars) = LinearSystem::layout(&[(n.dim(), m.dim())]);
    let x = blocks[0];
    let mut sys = LinearSystem::new(field, vars);
    if left {
        for i in 0..m.left_algebra.dim() {
            sys.add_matrix_equation(
                &[Term::new(x, None, Some(m.left_basis(i))), Term::new(x, Some(n.left_basis(i)), None).negated()],
                None,
            );
        }
    }
    if right {
        for i in 0..m.right_algebra.dim() {
            sys.add_matrix_equation(
                &[Term::new(x, None, Some(m.right_basis(i))), Term::new(x, Some(n.right_basis(i)), None).negated()],
                None,
            );
        }
    }
    let sol = sys.solve().map_err(|_| Error::Internal("homogeneous system reported inconsistent".into()))?;
    Ok(HomSpace {
        flavor,
        source_dim: m.dim(),
        target_dim: n.dim(),
        basis: sol.kernel.iter().map(|v| x.extract(field, v)).collect(),
    })
}

/// `M^A = {m : a·m = m·a}` for an `(A, A)`-bimodule.
pub fn bimodule_invariants(m: &Bimodule) -> Result<Subspace> {
    if m.left_algebra != m.right_algebra {
        return Err(Error::Malformed("invariants need the same algebra on both sides".into()));
    }
    let mut eqs = Matrix::zeros(m.field(), 0, m.dim());
    for i in 0..m.left_algebra.dim() {
        eqs = eqs.vstack(&(m.left_basis(i) - m.right_basis(i)));
    }
    Ok(eqs.kernel())
}

/// `{b ∈ A : b·v = v·b}` for `v` in an `(A, A)`-bimodule, as a subalgebra.
pub fn centralizer(a: &Arc<Algebra>, m: &Bimodule, v: &[Scalar]) -> Result<Subalgebra> {
    if *m.left_algebra != **a || *m.right_algebra != **a {
        return Err(Error::Malformed("centralizer in a bimodule over a different algebra".into()));
    }
    if v.len() != m.dim() {
        return Err(Error::Malformed("element has the wrong number of coordinates".into()));
    }
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| crate::linalg::vector::sub(&m.left_basis(i).mul_vec(v), &m.right_basis(i).mul_vec(v)))
        .collect();
    let map = Matrix::from_columns(a.field(), m.dim(), &cols);
    Subalgebra::from_subspace(a.clone(), map.kernel()).map_err(|e| Error::Internal(format!("centralizer: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BalancedTensor;
    use crate::linalg::{vector, Field};

    fn over_ground(a: &Arc<Algebra>) -> (Bimodule, Bimodule) {
        let q = a.field();
        let k = Arc::new(Algebra::ground(q));
        let d = a.dim();
        let ar = Bimodule::new(a.clone(), k.clone(), d, (0..d).map(|i| a.left_basis(i).clone()).collect(), vec![Matrix::identity(q, d)]).unwrap();
        let al = Bimodule::new(k, a.clone(), d, vec![Matrix::identity(q, d)], (0..d).map(|i| a.right_basis(i).clone()).collect()).unwrap();
        (ar, al)
    }

    #[test]
    fn hom_dimensions() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let reg = Bimodule::regular(a.clone());
        assert_eq!(hom_space(&reg, &reg, Flavor::LeftLinear).unwrap().dim(), 2);
        let (ar, al) = over_ground(&a);
        let c = BalancedTensor::new(&ar, &al).unwrap();
        assert_eq!(hom_space(c.module(), &reg, Flavor::LeftLinear).unwrap().dim(), 4);

        let f3 = Field::prime(3).unwrap();
        let m = Arc::new(Algebra::matrix_units(f3, 2));
        let reg = Bimodule::regular(m);
        assert_eq!(hom_space(&reg, &reg, Flavor::Bilinear).unwrap().dim(), 1);
    }

    #[test]
    fn invariants_of_canonical_square() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let (ar, al) = over_ground(&a);
        let c = BalancedTensor::new(&ar, &al).unwrap();
        let inv = bimodule_invariants(c.module()).unwrap();
        assert_eq!(inv.dim(), 2);
        assert!(inv.contains(&vector::from_i64(q, &[0, 1, 1, 0])));
        assert!(inv.contains(&vector::from_i64(q, &[0, 0, 0, 1])));
    }

    #[test]
    fn centralizers_in_regular_and_canonical_modules() {
        let f3 = Field::prime(3).unwrap();
        let a = Arc::new(Algebra::matrix_units(f3, 2));
        let reg = Bimodule::regular(a.clone());
        let z = centralizer(&a, &reg, a.unit()).unwrap();
        assert_eq!(z.dim(), 4);
        let (ar, al) = over_ground(&a);
        let c = BalancedTensor::new(&ar, &al).unwrap();
        let one = c.element(a.unit(), a.unit());
        let b = centralizer(&a, c.module(), &one).unwrap();
        assert_eq!(b.dim(), 1);
    }
}
