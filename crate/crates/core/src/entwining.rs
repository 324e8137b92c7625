//! Entwining structures `ψ: C⊗A → A⊗C`, weak entwinings, the corings they
//! induce and the passage between entwined modules and coring comodules.
//!
//! Coordinates: `C⊗A` has index `j·dim A + k` for `f_j⊗e_k`, and `A⊗C` has
//! index `i·dim C + j` for `e_i⊗f_j`.

use std::sync::Arc;

use crate::algebra::{Algebra, BalancedTensor, Bimodule, Subalgebra};
use crate::coalgebra::{Coalgebra, Comodule};
use crate::coring::{canonical_coring, coring_from_precoring, CanonicalCoring, Coring, CoringComodule, PreCoring};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace};
use crate::validation::Validation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entwining {
    pub algebra: Arc<Algebra>,
    pub coalgebra: Arc<Coalgebra>,
    pub psi: Matrix,
}

impl Entwining {
    pub fn new(algebra: Arc<Algebra>, coalgebra: Arc<Coalgebra>, psi: Matrix) -> Result<Entwining> {
        let n = algebra.dim() * coalgebra.dim();
        if psi.rows() != n || psi.cols() != n {
            return Err(Error::Malformed(format!("ψ is {}x{}, expected {n}x{n}", psi.rows(), psi.cols())));
        }
        psi.check_field()?;
        if algebra.field() != coalgebra.field() || psi.field() != algebra.field() {
            return Err(Error::Malformed("entwining data over different fields".into()));
        }
        Ok(Entwining { algebra, coalgebra, psi })
    }

    /// `ψ(c⊗a) = a⊗c`.
    pub fn flip(algebra: Arc<Algebra>, coalgebra: Arc<Coalgebra>) -> Entwining {
        let (a, c) = (algebra.dim(), coalgebra.dim());
        let f = algebra.field();
        let psi = Matrix::from_fn(f, a * c, c * a, |r, s| {
            let (i, j) = (r / c, r % c);
            if s == j * a + i {
                f.one()
            } else {
                f.zero()
            }
        });
        Entwining { algebra, coalgebra, psi }
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    fn ia(&self) -> Matrix {
        Matrix::identity(self.field(), self.algebra.dim())
    }

    fn ic(&self) -> Matrix {
        self.coalgebra.identity()
    }

    fn unit_col(&self) -> Matrix {
        Matrix::column_vector(self.field(), self.algebra.unit())
    }

    /// `ψ(f_j ⊗ a)` as a vector in `A⊗C`.
    pub fn apply(&self, j: usize, a: &[Scalar]) -> Vec<Scalar> {
        let c = vector::unit(self.field(), self.coalgebra.dim(), j);
        self.psi.mul_vec(&vector::kron(&c, a))
    }

    /// `c ↦ ψ(c⊗1)`, a map `C → A⊗C`.
    pub fn psi_on_unit(&self) -> Matrix {
        &self.psi * &self.ic().kron(&self.unit_col())
    }

    /// `c ↦ 1_α ε(c^α)`, a map `C → A`.
    pub fn unit_defect(&self) -> Matrix {
        &self.ia().kron(&self.coalgebra.counit_row()) * &self.psi_on_unit()
    }

    /// `ψ∘(C⊗μ)` and `(μ⊗C)∘(A⊗ψ)∘(ψ⊗A)` as maps `C⊗A⊗A → A⊗C`.
    pub fn multiplicativity_sides(&self) -> (Matrix, Matrix) {
        let mu = self.algebra.mult_matrix();
        let lhs = &self.psi * &self.ic().kron(&mu);
        let rhs = &(&mu.kron(&self.ic()) * &self.ia().kron(&self.psi)) * &self.psi.kron(&self.ia());
        (lhs, rhs)
    }

    /// `(A⊗Δ)∘ψ` and `(ψ⊗C)∘(C⊗ψ)∘(Δ⊗A)` as maps `C⊗A → A⊗C⊗C`.
    pub fn comultiplicativity_sides(&self) -> (Matrix, Matrix) {
        let delta = self.coalgebra.delta();
        let lhs = &self.ia().kron(delta) * &self.psi;
        let rhs = &(&self.psi.kron(&self.ic()) * &self.ic().kron(&self.psi)) * &delta.kron(&self.ia());
        (lhs, rhs)
    }

    fn check_structure(&self, v: &mut Validation) {
        let a = self.algebra.dim();
        let (lhs, rhs) = self.multiplicativity_sides();
        for col in 0..lhs.cols() {
            v.check(lhs.column(col) == rhs.column(col), "multiplicativity", || {
                let (j, k, l) = (col / (a * a), (col / a) % a, col % a);
                format!("(f{j},e{k},e{l})")
            });
        }
        let (lhs, rhs) = self.comultiplicativity_sides();
        for col in 0..lhs.cols() {
            v.check(lhs.column(col) == rhs.column(col), "comultiplicativity", || format!("(f{},e{})", col / a, col % a));
        }
    }

    /// `ψ(c⊗1) = 1⊗c` and `(A⊗ε)ψ = ε⊗A` together with the structure
    /// equations.
    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        self.check_structure(&mut v);
        let a = self.algebra.dim();
        let lhs = self.psi_on_unit();
        let rhs = self.unit_col().kron(&self.ic());
        for j in 0..self.coalgebra.dim() {
            v.check(lhs.column(j) == rhs.column(j), "unit", || format!("f{j}"));
        }
        let lhs = &self.ia().kron(&self.coalgebra.counit_row()) * &self.psi;
        let rhs = self.coalgebra.counit_row().kron(&self.ia());
        for col in 0..lhs.cols() {
            v.check(lhs.column(col) == rhs.column(col), "counit", || format!("(f{},e{})", col / a, col % a));
        }
        v
    }

    /// The structure equations with the unit conditions weakened to
    /// `a_α ε(c^α) = 1_α a ε(c^α)` and `1_α ε(c₍₁₎^α) ⊗ c₍₂₎ = 1_α ⊗ c^α`.
    pub fn validate_weak(&self) -> Validation {
        let mut v = Validation::new();
        self.check_structure(&mut v);
        let a = self.algebra.dim();
        let u = self.unit_defect();
        let lhs = &self.ia().kron(&self.coalgebra.counit_row()) * &self.psi;
        let rhs = &self.algebra.mult_matrix() * &u.kron(&self.ia());
        for col in 0..lhs.cols() {
            v.check(lhs.column(col) == rhs.column(col), "weak counit", || format!("(f{},e{})", col / a, col % a));
        }
        let lhs = &u.kron(&self.ic()) * self.coalgebra.delta();
        let rhs = self.psi_on_unit();
        for j in 0..self.coalgebra.dim() {
            v.check(lhs.column(j) == rhs.column(j), "weak unit", || format!("f{j}"));
        }
        v
    }

    /// `(a'⊗c)·e_k = a'ψ(c⊗e_k)` on `A⊗C`.
    pub fn right_actions(&self) -> Vec<Matrix> {
        let mu_c = self.algebra.mult_matrix().kron(&self.ic());
        let base = &mu_c * &self.ia().kron(&self.psi);
        (0..self.algebra.dim())
            .map(|k| {
                let ek = Matrix::column_vector(self.field(), &self.algebra.basis_vector(k));
                &base * &self.ia().kron(&self.ic().kron(&ek))
            })
            .collect()
    }

    /// `A⊗C` with `a·(a'⊗c) = aa'⊗c` and the right action through `ψ`.
    pub fn bimodule(&self) -> Result<Bimodule> {
        let left = (0..self.algebra.dim()).map(|i| self.algebra.left_basis(i).kron(&self.ic())).collect();
        Bimodule::new(
            self.algebra.clone(),
            self.algebra.clone(),
            self.algebra.dim() * self.coalgebra.dim(),
            left,
            self.right_actions(),
        )
    }

    /// The coproduct lift `a⊗c ↦ (a⊗c₍₁₎)⊗(1⊗c₍₂₎)` and counit `A⊗ε`.
    fn coring_maps(&self) -> (Matrix, Matrix) {
        let (a, c) = (self.algebra.dim(), self.coalgebra.dim());
        let f = self.field();
        let n = a * c;
        let delta = self.coalgebra.delta();
        let unit = self.algebra.unit();
        let mut lift = Matrix::zeros(f, n * n, n);
        for i in 0..a {
            for j in 0..c {
                let col = i * c + j;
                for l in 0..c {
                    for m in 0..c {
                        let d = delta.get(l * c + m, j);
                        if d.is_zero() {
                            continue;
                        }
                        for (u, x) in unit.iter().enumerate() {
                            if !x.is_zero() {
                                lift.add_at((i * c + l) * n + u * c + m, col, &(d * x));
                            }
                        }
                    }
                }
            }
        }
        let counit = self.ia().kron(&self.coalgebra.counit_row());
        (lift, counit)
    }

    /// `A⊗C` as a pre-coring; a coring exactly when `ψ` is an entwining.
    pub fn pre_coring(&self) -> Result<PreCoring> {
        let (lift, counit) = self.coring_maps();
        PreCoring::new(self.bimodule()?, lift, counit)
    }

    /// `p(a⊗c) = a1_α ⊗ c^α`, the right action of 1 on `A⊗C`.
    pub fn projection(&self) -> Matrix {
        let mu_c = self.algebra.mult_matrix().kron(&self.ic());
        &(&mu_c * &self.ia().kron(&self.psi)) * &self.ia().kron(&self.ic().kron(&self.unit_col()))
    }

    /// The element `a ⊗ c` of `A⊗C`.
    pub fn element(&self, a: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        vector::kron(a, c)
    }

    /// `(1⊗c)` as a column map `C → A⊗C`.
    pub fn one_tensor(&self) -> Matrix {
        self.unit_col().kron(&self.ic())
    }
}

/// The coring `A⊗C` of an entwining, with `Δ = A⊗Δ` and `ε = A⊗ε`.
pub fn coring_from_entwining(e: &Entwining) -> Result<Coring> {
    e.validate().require("entwining")?;
    let (lift, counit) = e.coring_maps();
    Ok(Coring::new(e.bimodule()?, lift, counit)?.with_hints(grouplike_hints(e)))
}

/// For each grouplike `g` of `C`, the element `1⊗g` (grouplike in the coring
/// whenever `ψ(g⊗a)` behaves; verified on use).
fn grouplike_hints(e: &Entwining) -> Vec<Vec<Scalar>> {
    let c = e.coalgebra.dim();
    let f = e.field();
    (0..c)
        .filter_map(|j| {
            let g = vector::unit(f, c, j);
            let dg = e.coalgebra.comultiply(&g);
            (dg == vector::kron(&g, &g) && e.coalgebra.epsilon(&g).is_one()).then(|| vector::kron(e.algebra.unit(), &g))
        })
        .collect()
}

/// Recovers `ψ(c⊗a) = (1⊗c)·a` from a coring on `A⊗C` with the left action,
/// coproduct and counit of [`coring_from_entwining`].
pub fn entwining_from_coring(c: &Coring, algebra: Arc<Algebra>, coalgebra: Arc<Coalgebra>) -> Result<Entwining> {
    if **c.algebra() != *algebra {
        return Err(Error::Precondition("coring is over a different algebra".into()));
    }
    let (a, d) = (algebra.dim(), coalgebra.dim());
    if c.dim() != a * d {
        return Err(Error::Precondition(format!("coring has dimension {}, expected {}", c.dim(), a * d)));
    }
    let shape = Entwining::flip(algebra.clone(), coalgebra.clone());
    for i in 0..a {
        if *c.bimodule().left_basis(i) != algebra.left_basis(i).kron(&shape.ic()) {
            return Err(Error::Precondition("left action is not a·(a'⊗c) = aa'⊗c".into()));
        }
    }
    let (lift, counit) = shape.coring_maps();
    if *c.counit() != counit {
        return Err(Error::Precondition("counit is not A⊗ε".into()));
    }
    if c.coproduct() != c.square().project_map(&lift) {
        return Err(Error::Precondition("coproduct is not A⊗Δ".into()));
    }
    let ones = shape.one_tensor();
    let f = algebra.field();
    let mut psi = Matrix::zeros(f, a * d, d * a);
    for k in 0..a {
        let rk = &c.bimodule().right_basis(k).clone() * &ones;
        for j in 0..d {
            for r in 0..a * d {
                psi.set(r, j * a + k, rk.get(r, j).clone());
            }
        }
    }
    let e = Entwining::new(algebra, coalgebra, psi)?;
    e.validate().require("extracted entwining")?;
    Ok(e)
}

/// The coring `Im(p) ⊆ A⊗C` of a weak entwining.
#[derive(Clone, Debug)]
pub struct WeakCoring {
    pub projection: Matrix,
    pub image: Subspace,
    pub coring: Coring,
}

/// Builds the coring on `Im(p)` directly: the bimodule structure restricts,
/// `ε` is `A⊗ε` on the image and `Δ = A⊗Δ` is lifted to `Im p ⊗_k Im p`
/// through the embedding `Im p ⊗_A Im p → A⊗C⊗C`.
pub fn coring_from_weak(w: &Entwining) -> Result<WeakCoring> {
    w.validate_weak().require("weak entwining")?;
    let p = w.projection();
    if &p * &p != p {
        return Err(Error::Internal("p is not idempotent".into()));
    }
    let image = p.column_space();
    let full = w.bimodule()?;
    let bm = full.submodule(&image)?;
    let (a, c) = (w.algebra.dim(), w.coalgebra.dim());
    let f = w.field();
    let s = image.dim();
    let basis = image.basis_vectors();
    let rights = w.right_actions();
    // Θ((u⊗c) ⊗ (a'⊗c')) = ((u⊗c)·a') ⊗ c'
    let mut theta_cols = Vec::with_capacity(s * s);
    for x in &basis {
        let moved: Vec<Vec<Scalar>> = rights.iter().map(|r| r.mul_vec(x)).collect();
        for y in &basis {
            let mut out = vector::zeros(f, a * c * c);
            for (idx, coef) in y.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (k, l) = (idx / c, idx % c);
                for (r, z) in moved[k].iter().enumerate() {
                    if !z.is_zero() {
                        out[r * c + l] += &(z * coef);
                    }
                }
            }
            theta_cols.push(out);
        }
    }
    let theta = Matrix::from_columns(f, a * c * c, &theta_cols);
    let a_delta = w.ia().kron(w.coalgebra.delta());
    let mut lift_cols = Vec::with_capacity(s);
    for x in &basis {
        let target = a_delta.mul_vec(x);
        let sol = theta
            .solve_affine(&target)?
            .ok_or_else(|| Error::Internal("A⊗Δ does not land in Im p ⊗_A Im p".into()))?;
        lift_cols.push(sol.particular);
    }
    let lift = Matrix::from_columns(f, s * s, &lift_cols);
    let counit = &w.ia().kron(&w.coalgebra.counit_row()) * image.inclusion();
    let coring = Coring::new(bm, lift, counit)?;
    let hints = grouplike_hints(w).iter().filter_map(|h| image.coords(&p.mul_vec(h))).collect();
    Ok(WeakCoring {
        projection: p,
        image,
        coring: coring.with_hints(hints),
    })
}

/// The same coring reached through the pre-coring `A⊗C`.
pub fn coring_from_weak_via_precoring(w: &Entwining) -> Result<(Subspace, Coring)> {
    w.validate_weak().require("weak entwining")?;
    coring_from_precoring(&w.pre_coring()?)
}

/// `(f *_ψ g)(c) = f(c₍₂₎)_α g(c₍₁₎^α)` for maps `C → A`.
pub fn psi_convolution(f: &Matrix, g: &Matrix, e: &Entwining) -> Matrix {
    let mu = e.algebra.mult_matrix();
    let step = &e.ic().kron(f) * e.coalgebra.delta();
    &(&mu * &e.ia().kron(g)) * &(&e.psi * &step)
}

/// `r ↦ r(1⊗−)`, from left `A`-linear maps `A⊗C → A` to maps `C → A`.
pub fn restrict_to_coalgebra(e: &Entwining, r: &Matrix) -> Matrix {
    r * &e.one_tensor()
}

/// The inverse identification `f ↦ (a⊗c ↦ a·f(c))`.
pub fn extend_to_coring(e: &Entwining, f: &Matrix) -> Matrix {
    &e.algebra.mult_matrix() * &e.ia().kron(f)
}

/// An algebra that is a right `C`-comodule through `ρ: A → A⊗C`.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    pub algebra: Arc<Algebra>,
    pub coalgebra: Arc<Coalgebra>,
    pub rho: Matrix,
}

impl ComoduleAlgebra {
    pub fn new(algebra: Arc<Algebra>, coalgebra: Arc<Coalgebra>, rho: Matrix) -> Result<ComoduleAlgebra> {
        let m = Comodule::right(coalgebra.clone(), algebra.dim(), rho.clone())?;
        m.validate().require("comodule")?;
        Ok(ComoduleAlgebra { algebra, coalgebra, rho })
    }

    pub fn comodule(&self) -> Comodule {
        Comodule::right(self.coalgebra.clone(), self.algebra.dim(), self.rho.clone()).expect("validated comodule")
    }

    /// `B = {b : ρ(ba) = bρ(a) for all a}`.
    pub fn coinvariants(&self) -> Result<Subalgebra> {
        let a = &self.algebra;
        let d = a.dim();
        let f = a.field();
        let ic = self.coalgebra.identity();
        let mut eqs = Matrix::zeros(f, 0, d);
        for k in 0..d {
            let rk = self.rho.mul_vec(&a.basis_vector(k));
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|i| {
                    let lhs = self.rho.mul_vec(a.product(i, k));
                    let rhs = a.left_basis(i).kron(&ic).mul_vec(&rk);
                    vector::sub(&lhs, &rhs)
                })
                .collect();
            eqs = eqs.vstack(&Matrix::from_columns(f, self.rho.rows(), &cols));
        }
        Subalgebra::from_subspace(a.clone(), eqs.kernel())
    }

    /// `A ⊗_B A` over the coinvariants, as the canonical coring of `B ⊆ A`.
    pub fn canonical(&self) -> Result<(Subalgebra, CanonicalCoring)> {
        let b = self.coinvariants()?;
        let cc = canonical_coring(&b.inclusion())?;
        Ok((b, cc))
    }

    /// `can(a⊗_B a') = aρ(a')` on quotient coordinates of `A⊗_B A`.
    pub fn can(&self, tensor: &BalancedTensor) -> Result<Matrix> {
        let a = &self.algebra;
        let d = a.dim();
        let ic = self.coalgebra.identity();
        let cols: Vec<Vec<Scalar>> = (0..d * d)
            .map(|idx| a.left_basis(idx / d).kron(&ic).mul_vec(&self.rho.column(idx % d)))
            .collect();
        let full = Matrix::from_columns(a.field(), self.rho.rows(), &cols);
        tensor
            .factor(&full)
            .ok_or_else(|| Error::Internal("can is not balanced over the coinvariants".into()))
    }

    /// `A⊗_B ρ: A⊗_B A → (A⊗_B A)⊗C`.
    pub fn tensor_coaction(&self, tensor: &BalancedTensor) -> Matrix {
        let a = &self.algebra;
        let d = a.dim();
        let c = self.coalgebra.dim();
        let q = tensor.dim();
        let f = a.field();
        let cols: Vec<Vec<Scalar>> = tensor
            .free_coordinates()
            .iter()
            .map(|&idx| {
                let (i, j) = (idx / d, idx % d);
                let r = self.rho.column(j);
                let mut out = vector::zeros(f, q * c);
                for (pos, coef) in r.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let (u, l) = (pos / c, pos % c);
                    let t = tensor.element(&a.basis_vector(i), &a.basis_vector(u));
                    for (s, x) in t.iter().enumerate() {
                        if !x.is_zero() {
                            out[s * c + l] += &(x * coef);
                        }
                    }
                }
                out
            })
            .collect();
        Matrix::from_columns(f, q * c, &cols)
    }
}

/// The output of the weak Galois construction.
#[derive(Clone, Debug)]
pub struct WeakGalois {
    pub entwining: Entwining,
    pub coinvariants: Subalgebra,
    pub canonical: CanonicalCoring,
    pub can: Matrix,
    pub sigma: Matrix,
}

/// `ψ = can∘(A⊗_B μ)∘(τ⊗A)` with `τ(c) = σ(1⊗c)`, for a left `A`-linear,
/// right `C`-colinear `σ: A⊗C → A⊗_B A` with `σ∘can = id`. `σ` is given as a
/// lift into `A⊗_k A`.
pub fn weak_entwining_from_split(ca: &ComoduleAlgebra, sigma_lift: &Matrix) -> Result<WeakGalois> {
    let a = &ca.algebra;
    let (d, c) = (a.dim(), ca.coalgebra.dim());
    let f = a.field();
    let (b, cc) = ca.canonical()?;
    let t = &cc.tensor;
    if sigma_lift.rows() != d * d || sigma_lift.cols() != d * c {
        return Err(Error::Malformed(format!(
            "σ lift is {}x{}, expected {}x{}",
            sigma_lift.rows(),
            sigma_lift.cols(),
            d * d,
            d * c
        )));
    }
    let sigma = t.project_map(sigma_lift);
    let can = ca.can(t)?;
    let ic = ca.coalgebra.identity();
    let tm = t.module();
    for i in 0..d {
        if &sigma * &a.left_basis(i).kron(&ic) != tm.left_basis(i) * &sigma {
            return Err(Error::Precondition("σ is not left A-linear".into()));
        }
    }
    let lhs = &sigma.kron(&ic) * &Matrix::identity(f, d).kron(ca.coalgebra.delta());
    let rhs = &ca.tensor_coaction(t) * &sigma;
    if lhs != rhs {
        return Err(Error::Precondition("σ is not right C-colinear".into()));
    }
    if !(&sigma * &can).is_identity() {
        return Err(Error::Precondition("σ∘can is not the identity".into()));
    }
    let section = t.section();
    let mut psi = Matrix::zeros(f, d * c, c * d);
    for j in 0..c {
        let one_c = vector::kron(a.unit(), &vector::unit(f, c, j));
        let tau = section.mul_vec(&sigma.mul_vec(&one_c));
        for k in 0..d {
            let mut out = vector::zeros(f, d * c);
            for (idx, coef) in tau.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (p, q) = (idx / d, idx % d);
                let y = a.product(q, k);
                let r = ca.rho.mul_vec(y);
                let v = a.left_basis(p).kron(&ic).mul_vec(&r);
                vector::axpy(&mut out, coef, &v);
            }
            for (r, x) in out.into_iter().enumerate() {
                psi.set(r, j * d + k, x);
            }
        }
    }
    let entwining = Entwining::new(a.clone(), ca.coalgebra.clone(), psi)?;
    let v = entwining.validate_weak();
    if !v.is_valid() {
        return Err(Error::Internal(format!("constructed ψ is not a weak entwining: {v}")));
    }
    Ok(WeakGalois {
        entwining,
        coinvariants: b,
        canonical: cc,
        can,
        sigma,
    })
}

/// A right `A`-module and right `C`-comodule on one space.
#[derive(Clone, Debug)]
pub struct EntwinedModule {
    pub dim: usize,
    /// `m·e_k`, one matrix per basis element of `A`.
    pub action: Vec<Matrix>,
    /// `ρ: M → M⊗C`.
    pub rho: Matrix,
}

impl EntwinedModule {
    pub fn new(e: &Entwining, dim: usize, action: Vec<Matrix>, rho: Matrix) -> Result<EntwinedModule> {
        if action.len() != e.algebra.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Malformed("action matrices have the wrong shape".into()));
        }
        if rho.rows() != dim * e.coalgebra.dim() || rho.cols() != dim {
            return Err(Error::Malformed("coaction has the wrong shape".into()));
        }
        Ok(EntwinedModule { dim, action, rho })
    }

    /// `A⊗C` with coaction `A⊗Δ` and action through `ψ`.
    pub fn free(e: &Entwining) -> EntwinedModule {
        EntwinedModule {
            dim: e.algebra.dim() * e.coalgebra.dim(),
            action: e.right_actions(),
            rho: e.ia().kron(e.coalgebra.delta()),
        }
    }

    /// `A` with multiplication and a given coaction.
    pub fn algebra(e: &Entwining, rho: Matrix) -> EntwinedModule {
        let a = &e.algebra;
        EntwinedModule {
            dim: a.dim(),
            action: (0..a.dim()).map(|k| a.right_basis(k).clone()).collect(),
            rho,
        }
    }

    /// The action as one map `M⊗A → M`.
    pub fn action_map(&self, field: Field) -> Matrix {
        let a = self.action.len();
        let m = self.dim;
        Matrix::from_fn(field, m, m * a, |r, col| self.action[col % a].get(r, col / a).clone())
    }

    /// `m⊗c ↦ m·1_α ⊗ c^α` on `M⊗C`.
    pub fn weak_projection(&self, e: &Entwining) -> Matrix {
        let f = e.field();
        let im = Matrix::identity(f, self.dim);
        let act = self.action_map(f);
        &(&act.kron(&e.ic()) * &im.kron(&e.psi)) * &im.kron(&e.ic().kron(&e.unit_col()))
    }

    /// Module axioms, comodule axioms, and `ρ(m·a) = m₍₀₎·a_α ⊗ m₍₁₎^α`.
    pub fn validate(&self, e: &Entwining) -> Validation {
        let mut v = Validation::new();
        let f = e.field();
        let k = Arc::new(Algebra::ground(f));
        match Bimodule::new(k, e.algebra.clone(), self.dim, vec![Matrix::identity(f, self.dim)], self.action.clone()) {
            Ok(bm) => v.absorb("module: ", bm.validate_with(e.validate().is_valid())),
            Err(err) => v.violate("module shape", err.to_string()),
        }
        match Comodule::right(e.coalgebra.clone(), self.dim, self.rho.clone()) {
            Ok(cm) => v.absorb("comodule: ", cm.validate()),
            Err(err) => v.violate("comodule shape", err.to_string()),
        }
        let act = self.action_map(f);
        let im = Matrix::identity(f, self.dim);
        let lhs = &self.rho * &act;
        let rhs = &(&act.kron(&e.ic()) * &im.kron(&e.psi)) * &self.rho.kron(&e.ia());
        let a = e.algebra.dim();
        for col in 0..lhs.cols() {
            v.check(lhs.column(col) == rhs.column(col), "entwined compatibility", || format!("(m{},e{})", col / a, col % a));
        }
        v
    }

    /// Whether `ρ(m) = m₍₀₎·1_α ⊗ m₍₁₎^α` for every `m`, i.e. the coaction
    /// lands in the image of the weak projection.
    pub fn coaction_in_weak_image(&self, e: &Entwining) -> bool {
        &self.weak_projection(e) * &self.rho == self.rho
    }
}

/// The coring a module is transported over: either `A⊗C` itself or
/// `Im(p) ⊆ A⊗C` for a weak entwining.
pub enum Target<'a> {
    Full(&'a Coring),
    Weak(&'a WeakCoring),
}

impl Target<'_> {
    fn coring(&self) -> &Coring {
        match self {
            Target::Full(c) => c,
            Target::Weak(w) => &w.coring,
        }
    }

    /// Coordinates of the coring inside `A⊗C` (identity for the full coring).
    fn inclusion(&self, n: usize, f: Field) -> Matrix {
        match self {
            Target::Full(_) => Matrix::identity(f, n),
            Target::Weak(w) => w.image.inclusion().clone(),
        }
    }
}

/// Entwined module to comodule: `m ↦ m₍₀₎ ⊗_A (1⊗m₍₁₎)`, with `1⊗c`
/// replaced by `p(1⊗c)` on the weak coring.
pub fn to_comodule(e: &Entwining, m: &EntwinedModule, target: Target<'_>) -> Result<CoringComodule> {
    let f = e.field();
    let coring = target.coring();
    let k = Arc::new(Algebra::ground(f));
    let module = Bimodule::new(k, e.algebra.clone(), m.dim, vec![Matrix::identity(f, m.dim)], m.action.clone())?;
    let into = match &target {
        Target::Full(_) => e.one_tensor(),
        Target::Weak(w) => {
            let coords = w.image.coordinate_map();
            &(&coords * &w.projection) * &e.one_tensor()
        }
    };
    let lift = &Matrix::identity(f, m.dim).kron(&into) * &m.rho;
    CoringComodule::new(coring, module, lift)
}

/// Comodule to entwined module through `M⊗_A (A⊗C) ≅ M⊗C`.
pub fn to_entwined(e: &Entwining, m: &CoringComodule, target: Target<'_>) -> Result<EntwinedModule> {
    let f = e.field();
    let coring = target.coring();
    let (a, c) = (e.algebra.dim(), e.coalgebra.dim());
    let incl = target.inclusion(a * c, f);
    let dm = m.dim();
    let actions: Vec<Matrix> = (0..a).map(|k| m.module.right_basis(k).clone()).collect();
    let n = coring.dim();
    let lift = m.lift();
    let mut rho = Matrix::zeros(f, dm * c, dm);
    for col in 0..dm {
        let x = lift.column(col);
        let mut out = vector::zeros(f, dm * c);
        for (idx, coef) in x.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (mu, s) = (idx / n, idx % n);
            for (pos, y) in incl.column(s).iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (k, l) = (pos / c, pos % c);
                let moved = actions[k].column(mu);
                for (r, z) in moved.iter().enumerate() {
                    if !z.is_zero() {
                        out[r * c + l] += &(&(z * y) * coef);
                    }
                }
            }
        }
        for (r, z) in out.into_iter().enumerate() {
            rho.set(r, col, z);
        }
    }
    EntwinedModule::new(e, dm, actions, rho)
}

/// `A` with multiplication and coaction `ρ` as a comodule over `A⊗C`.
pub fn algebra_as_comodule(e: &Entwining, rho: Matrix, coring: &Coring) -> Result<CoringComodule> {
    to_comodule(e, &EntwinedModule::algebra(e, rho), Target::Full(coring))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    /// `ψ(h⊗u) = u⊗hu` on `𝔽₃C₂`.
    fn c2() -> Entwining {
        let f = f3();
        let a = Arc::new(Algebra::cyclic_group(f, 2));
        let c = Arc::new(Coalgebra::grouplike(f, 2));
        let psi = Matrix::from_fn(f, 4, 4, |r, s| {
            let (h, u) = (s / 2, s % 2);
            if r == u * 2 + (h + u) % 2 {
                f.one()
            } else {
                f.zero()
            }
        });
        Entwining::new(a, c, psi).unwrap()
    }

    #[test]
    fn flip_on_commutative_algebra() {
        let q = Field::Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(q, 2));
        let c = Arc::new(Coalgebra::grouplike(q, 2));
        let e = Entwining::flip(a, c);
        assert!(e.validate().is_valid());
        assert!(e.validate_weak().is_valid());
    }

    #[test]
    fn c2_entwining_and_roundtrip() {
        let e = c2();
        assert!(e.validate().is_valid(), "{}", e.validate());
        let c = coring_from_entwining(&e).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(c.validate().is_valid());
        let back = entwining_from_coring(&c, e.algebra.clone(), e.coalgebra.clone()).unwrap();
        assert_eq!(back.psi, e.psi);
    }

    #[test]
    fn projection_is_identity_for_entwinings() {
        let e = c2();
        assert!(e.projection().is_identity());
        let w = coring_from_weak(&e).unwrap();
        assert_eq!(w.image.dim(), 4);
        assert!(w.coring.validate().is_valid());
    }

    #[test]
    fn free_module_is_entwined() {
        let e = c2();
        let m = EntwinedModule::free(&e);
        assert!(m.validate(&e).is_valid());
        let c = coring_from_entwining(&e).unwrap();
        let cm = to_comodule(&e, &m, Target::Full(&c)).unwrap();
        assert!(cm.validate(&c).is_valid());
        let back = to_entwined(&e, &cm, Target::Full(&c)).unwrap();
        assert_eq!(back.rho, m.rho);
    }

    /// `A = 𝔽₂×𝔽₂`, `C = 𝔽₂C₂`, `ψ(g⊗a) = ae₁⊗g`, `ψ(h⊗a) = ae₂⊗h`.
    fn weak2() -> Entwining {
        let f = Field::prime(2).unwrap();
        let a = Arc::new(Algebra::diagonal(f, 2));
        let c = Arc::new(Coalgebra::grouplike(f, 2));
        let psi = Matrix::from_fn(f, 4, 4, |r, s| if r == s && (r == 0 || r == 3) { f.one() } else { f.zero() });
        Entwining::new(a, c, psi).unwrap()
    }

    #[test]
    fn weak_fixture_routes_agree() {
        let w = weak2();
        assert!(w.validate_weak().is_valid());
        assert!(w.validate().violates("unit"));
        let wc = coring_from_weak(&w).unwrap();
        let p = &wc.projection;
        assert_eq!(&(p * p), p);
        assert_eq!(wc.image.dim(), 2);
        assert!(wc.coring.validate().is_valid(), "{}", wc.coring.validate());
        let pre = w.pre_coring().unwrap();
        assert!(pre.validate().is_valid(), "{}", pre.validate());
        let (image, c2) = coring_from_weak_via_precoring(&w).unwrap();
        assert!(image.same_as(&wc.image));
        assert_eq!(c2.coproduct(), wc.coring.coproduct());
        assert_eq!(c2.counit(), wc.coring.counit());
        assert_eq!(c2.bimodule(), wc.coring.bimodule());
    }

    #[test]
    fn weak_split_recovers_fixture() {
        let w = weak2();
        let f = w.field();
        let a = w.algebra.clone();
        // ρ(a) = ae₁⊗g + ae₂⊗h
        let rho = Matrix::from_fn(f, 4, 2, |r, s| if (r == 0 && s == 0) || (r == 3 && s == 1) { f.one() } else { f.zero() });
        let ca = ComoduleAlgebra::new(a.clone(), w.coalgebra.clone(), rho.clone()).unwrap();
        let (b, cc) = ca.canonical().unwrap();
        assert_eq!(b.dim(), 2);
        let can = ca.can(&cc.tensor).unwrap();
        assert_eq!(can.rank(), 2);
        // σ(e_i⊗f_j) = e_ie_j, lifted as e_i⊗e_i when i = j
        let sigma_full = Matrix::from_fn(f, 4, 4, |r, s| {
            let (i, j) = (s / 2, s % 2);
            if i == j && r == 3 * i {
                f.one()
            } else {
                f.zero()
            }
        });
        let wg = weak_entwining_from_split(&ca, &sigma_full).unwrap();
        assert_eq!(wg.entwining.psi, w.psi);
        let m = EntwinedModule::algebra(&w, rho);
        assert!(m.validate(&w).is_valid(), "{}", m.validate(&w));
        assert!(m.coaction_in_weak_image(&w));
        let wc = coring_from_weak(&w).unwrap();
        let cm = to_comodule(&w, &m, Target::Weak(&wc)).unwrap();
        assert!(cm.validate(&wc.coring).is_valid(), "{}", cm.validate(&wc.coring));
        let back = to_entwined(&w, &cm, Target::Weak(&wc)).unwrap();
        assert_eq!(back.rho, m.rho);
    }

    #[test]
    fn split_with_bijective_can_recovers_c2() {
        let e = c2();
        let f = e.field();
        let rho = Matrix::from_fn(f, 4, 2, |r, s| if r == s * 2 + s { f.one() } else { f.zero() });
        let ca = ComoduleAlgebra::new(e.algebra.clone(), e.coalgebra.clone(), rho).unwrap();
        let (b, cc) = ca.canonical().unwrap();
        assert_eq!(b.dim(), 1);
        let can = ca.can(&cc.tensor).unwrap();
        let inv = can.inverse().unwrap();
        let wg = weak_entwining_from_split(&ca, &(&cc.tensor.section() * &inv)).unwrap();
        assert_eq!(wg.entwining.psi, e.psi);
    }

    #[test]
    fn convolution_matches_dual_ring() {
        let e = c2();
        let f = e.field();
        let c = coring_from_entwining(&e).unwrap();
        let r = crate::coring::dual_ring(&c).unwrap();
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let (ri, rj) = (r.hom.basis[i].clone(), r.hom.basis[j].clone());
                let prod = crate::coring::dual_product(&c, &ri, &rj);
                let conv = psi_convolution(&restrict_to_coalgebra(&e, &ri), &restrict_to_coalgebra(&e, &rj), &e);
                assert_eq!(restrict_to_coalgebra(&e, &prod), conv);
                assert_eq!(extend_to_coring(&e, &conv), prod);
            }
        }
        let eta_eps = &Matrix::column_vector(f, e.algebra.unit()) * &e.coalgebra.counit_row();
        let g = Matrix::from_i64(f, &[&[1, 2], &[0, 1]]);
        assert_eq!(psi_convolution(&eta_eps, &g, &e), g);
        assert_eq!(psi_convolution(&g, &eta_eps, &e), g);
    }
}
