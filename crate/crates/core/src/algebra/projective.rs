use super::bimodule::Bimodule;
use crate::linalg::{LinearSystem, Matrix, RankWitness, RowSpace, Scalar, Subspace, Term};

/// A dual basis `{rᵢ, cⁱ}` of a left module: `Σᵢ rᵢ(m)·cⁱ = m` for all `m`,
/// with each `rᵢ` left linear into the algebra.
#[derive(Clone, Debug)]
pub struct DualBasis {
    /// `rᵢ` as `dim A × dim M` matrices.
    pub functionals: Vec<Matrix>,
    /// `cⁱ` as coordinate vectors in `M`.
    pub generators: Vec<Vec<Scalar>>,
}

impl DualBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Checks `Σᵢ rᵢ(m)·cⁱ = m` on every basis vector and left linearity.
    pub fn verify(&self, m: &Bimodule) -> bool {
        let a = &m.left_algebra;
        let linear = self
            .functionals
            .iter()
            .all(|r| (0..a.dim()).all(|i| r * m.left_basis(i) == a.left_basis(i) * r));
        let mut total = Matrix::zeros(m.field(), m.dim(), m.dim());
        for (r, c) in self.functionals.iter().zip(&self.generators) {
            total = &total + &(&generator_map(m, c) * r);
        }
        linear && total.is_identity()
    }
}

/// `a ↦ a·c` as a `dim M × dim A` matrix.
fn generator_map(m: &Bimodule, c: &[Scalar]) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..m.left_algebra.dim()).map(|t| m.left_basis(t).mul_vec(c)).collect();
    Matrix::from_columns(m.field(), m.dim(), &cols)
}

/// Basis vectors picked greedily until they generate `M` as a left module.
fn greedy_generators(m: &Bimodule) -> Vec<Vec<Scalar>> {
    let mut span = RowSpace::new(m.field(), m.dim());
    let mut gens = Vec::new();
    for j in 0..m.dim() {
        let e = m.basis_vector(j);
        if span.contains(&e) {
            continue;
        }
        for t in 0..m.left_algebra.dim() {
            span.insert(&m.left_basis(t).mul_vec(&e));
        }
        gens.push(e);
    }
    gens
}

/// Decides whether the left module `m` is projective by solving for a dual
/// basis over a generating set of basis vectors; infeasibility comes with
/// its rank witness.
pub fn dual_basis_projectivity(m: &Bimodule) -> Result<DualBasis, RankWitness> {
    let a = &m.left_algebra;
    let field = m.field();
    let gens = greedy_generators(m);
    let shapes: Vec<(usize, usize)> = gens.iter().map(|_| (a.dim(), m.dim())).collect();
    let (blocks, vars) = LinearSystem::layout(&shapes);
    let mut sys = LinearSystem::new(field, vars);
    let gmaps: Vec<Matrix> = gens.iter().map(|c| generator_map(m, c)).collect();
    let terms: Vec<Term<'_>> = blocks.iter().zip(&gmaps).map(|(&r, g)| Term::new(r, Some(g), None)).collect();
    sys.add_matrix_equation(&terms, Some(&Matrix::identity(field, m.dim())));
    for &r in &blocks {
        for i in 0..a.dim() {
            sys.add_matrix_equation(
                &[Term::new(r, None, Some(m.left_basis(i))), Term::new(r, Some(a.left_basis(i)), None).negated()],
                None,
            );
        }
    }
    let sol = sys.solve()?;
    Ok(DualBasis {
        functionals: blocks.iter().map(|r| r.extract(field, &sol.particular)).collect(),
        generators: gens,
    })
}

/// The submodule of a left module generated by the given vectors.
pub fn generated_submodule(m: &Bimodule, gens: &[Vec<Scalar>]) -> Subspace {
    let vs: Vec<Vec<Scalar>> = gens
        .iter()
        .flat_map(|g| (0..m.left_algebra.dim()).map(move |t| m.left_basis(t).mul_vec(g)))
        .collect();
    Subspace::span(m.field(), m.dim(), &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, BalancedTensor};
    use crate::linalg::Field;
    use std::sync::Arc;

    #[test]
    fn free_module_has_singleton_dual_basis() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let reg = Bimodule::regular(a).left_part();
        let db = dual_basis_projectivity(&reg).unwrap();
        assert_eq!(db.len(), 1);
        assert!(db.functionals[0].is_identity());
        assert!(db.verify(&reg));
    }

    #[test]
    fn tensor_square_is_free_of_rank_two() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let k = Arc::new(Algebra::ground(q));
        let ar = Bimodule::new(a.clone(), k.clone(), 2, (0..2).map(|i| a.left_basis(i).clone()).collect(), vec![Matrix::identity(q, 2)]).unwrap();
        let al = Bimodule::new(k, a.clone(), 2, vec![Matrix::identity(q, 2)], (0..2).map(|i| a.right_basis(i).clone()).collect()).unwrap();
        let c = BalancedTensor::new(&ar, &al).unwrap();
        let db = dual_basis_projectivity(&c.module().left_part()).unwrap();
        assert_eq!(db.len(), 2);
        assert!(db.verify(&c.module().left_part()));
    }

    #[test]
    fn residue_field_is_not_projective() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        // A/(x): x acts by zero.
        let m = Bimodule::left_module(a, 1, vec![Matrix::identity(q, 1), Matrix::zeros(q, 1, 1)]).unwrap();
        assert!(m.validate().is_valid());
        let w = dual_basis_projectivity(&m).unwrap_err();
        assert_eq!(w.augmented_rank, w.rank + 1);
    }
}
