use super::Coring;
use crate::algebra::{BalancedTensor, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar, Subspace};
use crate::validation::Validation;

/// A right comodule over a coring: a right `A`-module `M` (as a `(k, A)`
/// bimodule) with a coaction given by a lift `M → M⊗_k C`.
#[derive(Clone, Debug)]
pub struct CoringComodule {
    pub module: Bimodule,
    lift: Matrix,
    tensor: BalancedTensor,
}

impl CoringComodule {
    pub fn new(coring: &Coring, module: Bimodule, lift: Matrix) -> Result<CoringComodule> {
        if *module.right_algebra != **coring.algebra() {
            return Err(Error::Malformed("comodule over a different algebra".into()));
        }
        if module.left_algebra.dim() != 1 {
            return Err(Error::Malformed("comodule must be a right module, i.e. a (k, A)-bimodule".into()));
        }
        let (m, n) = (module.dim(), coring.dim());
        if lift.rows() != m * n || lift.cols() != m {
            return Err(Error::Malformed(format!(
                "coaction lift is {}x{}, expected {}x{m}",
                lift.rows(),
                lift.cols(),
                m * n
            )));
        }
        lift.check_field()?;
        let tensor = BalancedTensor::new(&module, coring.bimodule())?;
        Ok(CoringComodule { module, lift, tensor })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    /// `M ⊗_A C`.
    pub fn tensor(&self) -> &BalancedTensor {
        &self.tensor
    }

    /// `ρ^M` on quotient coordinates of `M ⊗_A C`.
    pub fn coaction(&self) -> Matrix {
        self.tensor.project_map(&self.lift)
    }

    /// `m ⊗_A c`.
    pub fn element(&self, m: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        self.tensor.element(m, c)
    }

    pub fn validate(&self, coring: &Coring) -> Validation {
        let mut v = Validation::new();
        v.absorb("module: ", self.module.validate());
        let a = coring.algebra();
        let rho = self.coaction();
        let mc = self.tensor.module();
        for i in 0..a.dim() {
            v.check(
                &rho * self.module.right_basis(i) == mc.right_basis(i) * &rho,
                "coaction right linearity",
                || format!("a{i}"),
            );
        }
        let f = coring.field();
        let m = self.dim();
        let n = coring.dim();
        let second = BalancedTensor::new(mc, coring.bimodule()).expect("M⊗_A C⊗_A C");
        let q = self.tensor.dim();
        let mut lhs = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for col in 0..m {
            let x = self.lift.column(col);
            // (ρ⊗C)ρ: ρ(m_i) ⊗ c_j, first factor already in M⊗_A C.
            let mut w = vector::zeros(f, q * n);
            // (M⊗Δ)ρ: m_i ⊗ Δ(c_j), then regroup as (m_i⊗c')⊗c''.
            let mut t = vector::zeros(f, m * n * n);
            for (idx, coef) in x.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (i, j) = (idx / n, idx % n);
                for r in 0..q {
                    let d = rho.get(r, i);
                    if !d.is_zero() {
                        w[r * n + j] += &(d * coef);
                    }
                }
                for s in 0..n * n {
                    let d = coring.lift().get(s, j);
                    if !d.is_zero() {
                        t[i * n * n + s] += &(d * coef);
                    }
                }
            }
            lhs.push(second.project_vec(&w));
            let mut u = vector::zeros(f, q * n);
            for l in 0..n {
                let slice: Vec<Scalar> = (0..m * n).map(|ij| t[ij * n + l].clone()).collect();
                if vector::is_zero(&slice) {
                    continue;
                }
                for (r, y) in self.tensor.project_vec(&slice).into_iter().enumerate() {
                    u[r * n + l] = y;
                }
            }
            rhs.push(second.project_vec(&u));
        }
        for col in 0..m {
            v.check(lhs[col] == rhs[col], "coaction coassociativity", || format!("m{col}"));
        }
        let ma = BalancedTensor::new(&self.module, &Bimodule::regular(a.clone())).expect("M⊗_A A");
        let id = Matrix::identity(f, m);
        let applied = ma.project_map(&(&id.kron(coring.counit()) * &self.lift));
        let expected = ma.project_map(&id.kron(&Matrix::column_vector(f, a.unit())));
        for col in 0..m {
            v.check(applied.column(col) == expected.column(col), "coaction counit law", || format!("m{col}"));
        }
        v
    }

    /// Whether `f: self → other` is right `A`-linear and colinear.
    pub fn is_comodule_map(&self, other: &CoringComodule, f: &Matrix) -> bool {
        if !self.module.is_right_linear(&other.module, f) {
            return false;
        }
        let id = Matrix::identity(f.field(), self.tensor.right.dim());
        let fc = self.tensor.map_to(&other.tensor, f, &id);
        &other.coaction() * f == &fc * &self.coaction()
    }
}

/// `M^{co C} = {m : ρ(m) = m ⊗_A g}`.
pub fn coinvariants(m: &CoringComodule, g: &[Scalar]) -> Subspace {
    let f = m.module.field();
    let cols: Vec<Vec<Scalar>> = (0..m.dim()).map(|i| m.element(&vector::unit(f, m.dim(), i), g)).collect();
    let mg = Matrix::from_columns(f, m.tensor.dim(), &cols);
    (&m.coaction() - &mg).kernel()
}
