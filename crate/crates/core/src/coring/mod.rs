//! Corings over a finite-dimensional algebra and their comodules.
//!
//! A coproduct is supplied as a lift `C → C⊗_k C`; every axiom is checked
//! after projecting to the balanced tensor product, so callers never need the
//! computed quotient basis.

mod comodule;
mod dual;
mod grouplike;

use std::sync::Arc;

pub use comodule::{coinvariants, CoringComodule};
pub use dual::{dual_product, dual_ring, DualRing};
pub use grouplike::{find_grouplikes, is_grouplike, GrouplikeSearch, DEFAULT_BUDGET};

use crate::algebra::{Algebra, AlgebraMorphism, BalancedTensor, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace};
use crate::validation::Validation;

/// An `A`-coring: an `(A, A)`-bimodule with coproduct and counit.
#[derive(Clone, Debug)]
pub struct Coring {
    algebra: Arc<Algebra>,
    bimodule: Bimodule,
    lift: Matrix,
    counit: Matrix,
    square: BalancedTensor,
    right_unital: bool,
    hints: Vec<Vec<Scalar>>,
}

impl Coring {
    /// Assembles a coring from a bimodule, a coproduct lift `C → C⊗_k C` and
    /// a counit `C → A`. Only shapes are checked; call [`validate`](Self::validate).
    pub fn new(bimodule: Bimodule, lift: Matrix, counit: Matrix) -> Result<Coring> {
        Coring::assemble(bimodule, lift, counit, true)
    }

    fn assemble(bimodule: Bimodule, lift: Matrix, counit: Matrix, right_unital: bool) -> Result<Coring> {
        if bimodule.left_algebra != bimodule.right_algebra {
            return Err(Error::Malformed("a coring needs the same algebra on both sides".into()));
        }
        let n = bimodule.dim();
        let algebra = bimodule.left_algebra.clone();
        if lift.rows() != n * n || lift.cols() != n {
            return Err(Error::Malformed(format!(
                "coproduct lift is {}x{}, expected {}x{n}",
                lift.rows(),
                lift.cols(),
                n * n
            )));
        }
        if counit.rows() != algebra.dim() || counit.cols() != n {
            return Err(Error::Malformed(format!(
                "counit is {}x{}, expected {}x{n}",
                counit.rows(),
                counit.cols(),
                algebra.dim()
            )));
        }
        lift.check_field()?;
        counit.check_field()?;
        if lift.field() != algebra.field() || counit.field() != algebra.field() {
            return Err(Error::Malformed("coring data over the wrong field".into()));
        }
        let square = BalancedTensor::new(&bimodule, &bimodule)?;
        Ok(Coring {
            algebra,
            bimodule,
            lift,
            counit,
            square,
            right_unital,
            hints: Vec::new(),
        })
    }

    /// Records elements known to be grouplike by construction; they are
    /// verified whenever they are used.
    pub fn with_hints(mut self, hints: Vec<Vec<Scalar>>) -> Coring {
        self.hints = hints;
        self
    }

    /// A `k`-coalgebra as a coring over the ground field.
    pub fn from_coalgebra(c: &crate::coalgebra::Coalgebra) -> Coring {
        let f = c.field();
        let k = Arc::new(Algebra::ground(f));
        let id = vec![c.identity()];
        let bm = Bimodule::new(k.clone(), k, c.dim(), id.clone(), id).expect("coalgebra bimodule");
        Coring::new(bm, c.delta().clone(), c.counit_row()).expect("coalgebra as coring")
    }

    pub fn hints(&self) -> &[Vec<Scalar>] {
        &self.hints
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn dim(&self) -> usize {
        self.bimodule.dim()
    }

    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    /// `C ⊗_A C`.
    pub fn square(&self) -> &BalancedTensor {
        &self.square
    }

    /// `Δ_C` on quotient coordinates of `C ⊗_A C`.
    pub fn coproduct(&self) -> Matrix {
        self.square.project_map(&self.lift)
    }

    pub fn is_right_unital(&self) -> bool {
        self.right_unital
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field(), self.dim(), i)
    }

    pub fn epsilon(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.counit.mul_vec(c)
    }

    /// `c ↦ a·c`.
    pub fn act_left(&self, a: &[Scalar]) -> Matrix {
        self.bimodule.act_left(a)
    }

    /// `c ↦ c·a`.
    pub fn act_right(&self, a: &[Scalar]) -> Matrix {
        self.bimodule.act_right(a)
    }

    /// `A ⊗_A C`.
    pub fn left_unit_tensor(&self) -> BalancedTensor {
        BalancedTensor::new(&Bimodule::regular(self.algebra.clone()), &self.bimodule).expect("A⊗_A C")
    }

    /// `C ⊗_A A`.
    pub fn right_unit_tensor(&self) -> BalancedTensor {
        BalancedTensor::new(&self.bimodule, &Bimodule::regular(self.algebra.clone())).expect("C⊗_A A")
    }

    /// `C ⊗_A C ⊗_A C`, built as `(C ⊗_A C) ⊗_A C`.
    pub fn cube(&self) -> BalancedTensor {
        BalancedTensor::new(self.square.module(), &self.bimodule).expect("C⊗_A C⊗_A C")
    }

    /// `(Δ⊗C)∘Δ` and `(C⊗Δ)∘Δ` in the cube.
    pub fn coassociativity_sides(&self, cube: &BalancedTensor) -> (Matrix, Matrix) {
        let n = self.dim();
        let f = self.field();
        let delta = self.coproduct();
        let q = self.square.dim();
        let mut lhs = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for c in 0..n {
            let x = self.lift.column(c);
            let mut w = vector::zeros(f, q * n);
            let mut t = vector::zeros(f, n * n * n);
            for (idx, coef) in x.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (i, j) = (idx / n, idx % n);
                // Δ(e_i) ⊗ e_j
                for r in 0..q {
                    let d = delta.get(r, i);
                    if !d.is_zero() {
                        w[r * n + j] += &(d * coef);
                    }
                }
                // e_i ⊗ lift(e_j)
                for s in 0..n * n {
                    let d = self.lift.get(s, j);
                    if !d.is_zero() {
                        t[i * n * n + s] += &(d * coef);
                    }
                }
            }
            lhs.push(cube.project_vec(&w));
            rhs.push(cube.project_vec(&self.project_triple(&t)));
        }
        (Matrix::from_columns(f, cube.dim(), &lhs), Matrix::from_columns(f, cube.dim(), &rhs))
    }

    /// Projects the first two factors of `C⊗_k C⊗_k C` to `C⊗_A C`.
    fn project_triple(&self, t: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let q = self.square.dim();
        let f = self.field();
        let mut out = vector::zeros(f, q * n);
        for l in 0..n {
            let slice: Vec<Scalar> = (0..n * n).map(|ij| t[ij * n + l].clone()).collect();
            if vector::is_zero(&slice) {
                continue;
            }
            let p = self.square.project_vec(&slice);
            for (r, x) in p.into_iter().enumerate() {
                out[r * n + l] = x;
            }
        }
        out
    }

    /// Every coring axiom, evaluated exactly on basis elements.
    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        v.absorb("bimodule: ", self.bimodule.validate_with(self.right_unital));
        let a = &self.algebra;
        let reg = Bimodule::regular(a.clone());
        // Without a unital right action only ε(c·a) = ε(c·1)a can be asked for.
        let eps_right = if self.right_unital {
            self.counit.clone()
        } else {
            &self.counit * &self.act_right(a.unit())
        };
        for i in 0..a.dim() {
            v.check(
                &self.counit * self.bimodule.left_basis(i) == reg.left_basis(i) * &self.counit,
                "counit left linearity",
                || format!("a{i}"),
            );
            v.check(
                &self.counit * self.bimodule.right_basis(i) == reg.right_basis(i) * &eps_right,
                "counit right linearity",
                || format!("a{i}"),
            );
        }
        let delta = self.coproduct();
        let sq = self.square.module();
        for i in 0..a.dim() {
            v.check(
                &delta * self.bimodule.left_basis(i) == sq.left_basis(i) * &delta,
                "coproduct left linearity",
                || format!("a{i}"),
            );
            v.check(
                &delta * self.bimodule.right_basis(i) == sq.right_basis(i) * &delta,
                "coproduct right linearity",
                || format!("a{i}"),
            );
        }
        let cube = self.cube();
        let (lhs, rhs) = self.coassociativity_sides(&cube);
        for c in 0..self.dim() {
            v.check(lhs.column(c) == rhs.column(c), "coassociativity", || format!("c{c}"));
        }
        let (left, right) = self.counit_sides();
        for c in 0..self.dim() {
            v.check(left.0.column(c) == left.1.column(c), "left counit law", || format!("c{c}"));
            v.check(right.0.column(c) == right.1.column(c), "right counit law", || format!("c{c}"));
        }
        v
    }

    /// `((ε⊗C)Δ, 1⊗−)` in `A⊗_A C` and `((C⊗ε)Δ, −⊗1)` in `C⊗_A A`.
    #[allow(clippy::type_complexity)]
    pub fn counit_sides(&self) -> ((Matrix, Matrix), (Matrix, Matrix)) {
        let n = self.dim();
        let f = self.field();
        let lt = self.left_unit_tensor();
        let rt = self.right_unit_tensor();
        let id = Matrix::identity(f, n);
        let lhs_l = lt.project_map(&(&self.counit.kron(&id) * &self.lift));
        let rhs_l = lt.project_map(&Matrix::column_vector(f, self.algebra.unit()).kron(&id));
        let lhs_r = rt.project_map(&(&id.kron(&self.counit) * &self.lift));
        let rhs_r = rt.project_map(&id.kron(&Matrix::column_vector(f, self.algebra.unit())));
        ((lhs_l, rhs_l), (lhs_r, rhs_r))
    }

    /// `C` as a right comodule over itself via `Δ`.
    pub fn regular_comodule(&self) -> CoringComodule {
        CoringComodule::new(self, self.bimodule.right_part(), self.lift.clone()).expect("regular comodule")
    }
}

/// An `A⊗_B A` coring together with the data it was built from.
#[derive(Clone, Debug)]
pub struct CanonicalCoring {
    pub coring: Coring,
    pub extension: AlgebraMorphism,
    /// `A ⊗_B A` with `A` regarded as `(A, B)`- and `(B, A)`-bimodules.
    pub tensor: BalancedTensor,
}

impl CanonicalCoring {
    /// The class of `a ⊗_B a'`.
    pub fn element(&self, a: &[Scalar], a2: &[Scalar]) -> Vec<Scalar> {
        self.tensor.element(a, a2)
    }

    /// `1 ⊗_B 1`.
    pub fn one(&self) -> Vec<Scalar> {
        let u = self.coring.algebra().unit();
        self.element(u, u)
    }
}

/// `A ⊗_B A` with `Δ(a⊗a') = (a⊗1)⊗(1⊗a')` and `ε(a⊗a') = aa'`.
pub fn canonical_coring(ext: &AlgebraMorphism) -> Result<CanonicalCoring> {
    ext.validate().require("extension")?;
    let a = ext.target.clone();
    let reg = Bimodule::regular(a.clone());
    let ab = reg.restrict_right(ext)?;
    let ba = reg.restrict_left(ext)?;
    let t = BalancedTensor::new(&ab, &ba)?;
    let f = a.field();
    let d = a.dim();
    let one = a.unit();
    let mut lift_cols = Vec::with_capacity(t.dim());
    let mut eps_cols = Vec::with_capacity(t.dim());
    for &c in t.free_coordinates() {
        let (i, j) = (c / d, c % d);
        let left = t.element(&a.basis_vector(i), one);
        let right = t.element(one, &a.basis_vector(j));
        lift_cols.push(vector::kron(&left, &right));
        eps_cols.push(a.product(i, j).to_vec());
    }
    let q = t.dim();
    let lift = Matrix::from_columns(f, q * q, &lift_cols);
    let counit = Matrix::from_columns(f, d, &eps_cols);
    let coring = Coring::new(t.module().clone(), lift, counit)?;
    let g = t.element(one, one);
    Ok(CanonicalCoring {
        coring: coring.with_hints(vec![g]),
        extension: ext.clone(),
        tensor: t,
    })
}

/// A coring whose right action need not be unital.
#[derive(Clone, Debug)]
pub struct PreCoring {
    pub coring: Coring,
}

impl PreCoring {
    pub fn new(bimodule: Bimodule, lift: Matrix, counit: Matrix) -> Result<PreCoring> {
        Ok(PreCoring {
            coring: Coring::assemble(bimodule, lift, counit, false)?,
        })
    }

    /// `p(c) = c·1`.
    pub fn projection(&self) -> Matrix {
        self.coring.act_right(self.coring.algebra().unit())
    }

    /// The coring axioms without right unitality, plus the two identities
    /// tying `p` to the structure.
    pub fn validate(&self) -> Validation {
        let c = &self.coring;
        let mut v = c.validate();
        let n = c.dim();
        let f = c.field();
        let p = self.projection();
        // c·1 = ε(c₍₁₎·1)c₍₂₎
        let mut rhs_cols = Vec::with_capacity(n);
        for col in 0..n {
            let x = c.lift().column(col);
            let mut acc = vector::zeros(f, n);
            for (idx, coef) in x.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (i, j) = (idx / n, idx % n);
                let a = c.epsilon(&p.column(i));
                let term = c.act_left(&a).column(j);
                vector::axpy(&mut acc, coef, &term);
            }
            rhs_cols.push(acc);
        }
        let rhs = Matrix::from_columns(f, n, &rhs_cols);
        for col in 0..n {
            v.check(p.column(col) == rhs.column(col), "unit defect identity", || format!("c{col}"));
        }
        let pp = c.square().project_map(&(&p.kron(&p) * c.lift()));
        let dp = c.square().project_map(&(c.lift() * &p));
        for col in 0..n {
            v.check(pp.column(col) == dp.column(col), "projection compatibility", || format!("c{col}"));
        }
        v
    }
}

/// Restricts a pre-coring to `Im(p)`, where it is a coring. Returns the
/// image subspace and the coring on its coordinates.
pub fn coring_from_precoring(pre: &PreCoring) -> Result<(Subspace, Coring)> {
    let v = pre.validate();
    if !v.is_valid() {
        return Err(Error::Precondition(format!("pre-coring axioms fail: {v}")));
    }
    let c = &pre.coring;
    let p = pre.projection();
    if &p * &p != p {
        return Err(Error::Internal("p is not idempotent".into()));
    }
    if !c.bimodule().is_bilinear(c.bimodule(), &p) {
        return Err(Error::Internal("p is not bilinear".into()));
    }
    let image = p.column_space();
    let bm = c.bimodule().submodule(&image)?;
    let kp = &image.coordinate_map() * &p;
    let lift = &(&kp.kron(&kp) * c.lift()) * image.inclusion();
    let counit = c.counit() * image.inclusion();
    let out = Coring::new(bm, lift, counit)?;
    let hints = c
        .hints()
        .iter()
        .filter_map(|h| image.coords(&p.mul_vec(h)))
        .collect();
    Ok((image, out.with_hints(hints)))
}
