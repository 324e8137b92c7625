//! Rings over a coalgebra: a `(C, C)`-bicomodule `𝒜` with a product on the
//! cotensor square `𝒜 □_C 𝒜` and a unit `C → 𝒜`.
//!
//! Maps out of a cotensor are stored in the coordinates of the cotensor
//! subspace; the full extensions used internally read those coordinates off
//! with [`Subspace::coordinate_map`], so they are only meaningful on members.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::coalgebra::{cotensor, Coalgebra, CoalgebraMorphism, Comodule};
use crate::entwining::Entwining;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, RankWitness, Scalar, Subspace};
use crate::validation::Validation;

pub type Decision<T> = std::result::Result<T, RankWitness>;

/// Corestricts `m` (with rows indexed by `L ⊗ ambient ⊗ R`) into
/// `L ⊗ space ⊗ R`.
fn corestrict_middle(space: &Subspace, left: usize, right: usize, m: &Matrix, what: &str) -> Result<Matrix> {
    let f = space.field();
    let il = Matrix::identity(f, left);
    let ir = Matrix::identity(f, right);
    let coords = &il.kron(&space.coordinate_map()).kron(&ir) * m;
    let back = &il.kron(space.inclusion()).kron(&ir) * &coords;
    if &back != m {
        return Err(Error::Malformed(format!("{what} does not land in the cotensor")));
    }
    Ok(coords)
}

fn member(space: &Subspace, m: &Matrix, what: &str) -> Result<()> {
    if space.contains_columns(m) {
        Ok(())
    } else {
        Err(Error::Malformed(format!("{what} does not land in the cotensor")))
    }
}

/// `X □_C Y □_C Z` inside `X ⊗ Y ⊗ Z`.
fn triple_cotensor(x: &Comodule, y: &Comodule, z: &Comodule) -> Result<Subspace> {
    let f = x.field();
    let (rx, ly, ry, lz) = (
        x.right_coaction().ok_or_else(|| Error::Malformed("missing right coaction".into()))?,
        y.left_coaction().ok_or_else(|| Error::Malformed("missing left coaction".into()))?,
        y.right_coaction().ok_or_else(|| Error::Malformed("missing right coaction".into()))?,
        z.left_coaction().ok_or_else(|| Error::Malformed("missing left coaction".into()))?,
    );
    let (ix, iy, iz) = (Matrix::identity(f, x.dim()), Matrix::identity(f, y.dim()), Matrix::identity(f, z.dim()));
    let first = &rx.kron(&iy).kron(&iz) - &ix.kron(ly).kron(&iz);
    let second = &ix.kron(ry).kron(&iz) - &ix.kron(&iy).kron(lz);
    Ok(first.vstack(&second).kernel())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRing {
    pub coalgebra: Arc<Coalgebra>,
    pub bicomodule: Comodule,
    /// `𝒜 □_C 𝒜 ⊆ 𝒜 ⊗ 𝒜`.
    pub square: Subspace,
    /// `𝒜 □_C 𝒜 → 𝒜`, in coordinates of `square`.
    pub product: Matrix,
    /// `C → 𝒜`.
    pub unit: Matrix,
}

impl CRing {
    pub fn new(bicomodule: Comodule, product: Matrix, unit: Matrix) -> Result<CRing> {
        if bicomodule.left_coaction().is_none() || bicomodule.right_coaction().is_none() {
            return Err(Error::Malformed("a C-ring needs a bicomodule".into()));
        }
        let c = bicomodule.coalgebra.clone();
        let square = cotensor(&bicomodule, &bicomodule)?;
        let n = bicomodule.dim();
        if product.rows() != n || product.cols() != square.dim() {
            return Err(Error::Malformed(format!(
                "product is {}x{}, expected {n}x{}",
                product.rows(),
                product.cols(),
                square.dim()
            )));
        }
        if unit.rows() != n || unit.cols() != c.dim() {
            return Err(Error::Malformed(format!("unit is {}x{}, expected {n}x{}", unit.rows(), unit.cols(), c.dim())));
        }
        product.check_field()?;
        unit.check_field()?;
        Ok(CRing {
            coalgebra: c,
            bicomodule,
            square,
            product,
            unit,
        })
    }

    /// A plain algebra as a ring over the ground coalgebra.
    pub fn from_algebra(a: &Algebra) -> Result<CRing> {
        let f = a.field();
        let k = Arc::new(Coalgebra::ground(f));
        let id = Matrix::identity(f, a.dim());
        let bic = Comodule::new(k, a.dim(), Some(id.clone()), Some(id))?;
        let square = cotensor(&bic, &bic)?;
        let product = &a.mult_matrix() * square.inclusion();
        CRing::new(bic, product, Matrix::column_vector(f, a.unit()))
    }

    pub fn dim(&self) -> usize {
        self.bicomodule.dim()
    }

    pub fn field(&self) -> crate::linalg::Field {
        self.coalgebra.field()
    }

    pub fn left(&self) -> &Matrix {
        self.bicomodule.left_coaction().expect("bicomodule")
    }

    pub fn right(&self) -> &Matrix {
        self.bicomodule.right_coaction().expect("bicomodule")
    }

    /// The product extended to `𝒜 ⊗ 𝒜`; correct on the cotensor only.
    pub fn product_full(&self) -> Matrix {
        &self.product * &self.square.coordinate_map()
    }

    /// `C` as a bicomodule over itself.
    pub fn regular(&self) -> Comodule {
        Comodule::regular(self.coalgebra.clone())
    }

    /// Axioms; a map that leaves a cotensor is a structural error.
    pub fn validate(&self) -> Result<Validation> {
        let f = self.field();
        let n = self.dim();
        let ia = Matrix::identity(f, n);
        let ic = self.coalgebra.identity();
        let mut v = self.bicomodule.validate();
        if !v.is_valid() {
            return Ok(v);
        }
        let reg = self.regular();
        v.check(reg.is_left_colinear(&self.bicomodule, &self.unit), "unit left colinearity", || "η".into());
        v.check(reg.is_right_colinear(&self.bicomodule, &self.unit), "unit right colinearity", || "η".into());

        let mu = self.product_full();
        let incl = self.square.inclusion();
        let sq_left = corestrict_middle(&self.square, self.coalgebra.dim(), 1, &(&self.left().kron(&ia) * incl), "left coaction on the square")?;
        let sq_right = corestrict_middle(&self.square, 1, self.coalgebra.dim(), &(&ia.kron(self.right()) * incl), "right coaction on the square")?;
        let lhs = self.left() * &self.product;
        let rhs = &ic.kron(&self.product) * &sq_left;
        for i in 0..self.square.dim() {
            v.check(lhs.column(i) == rhs.column(i), "product left colinearity", || format!("p{i}"));
        }
        let lhs = self.right() * &self.product;
        let rhs = &self.product.kron(&ic) * &sq_right;
        for i in 0..self.square.dim() {
            v.check(lhs.column(i) == rhs.column(i), "product right colinearity", || format!("p{i}"));
        }
        // Associativity and unit laws are only defined for colinear structure maps.
        if !v.is_valid() {
            return Ok(v);
        }

        let triple = triple_cotensor(&self.bicomodule, &self.bicomodule, &self.bicomodule)?;
        let t = triple.inclusion();
        let left_first = &mu.kron(&ia) * t;
        let right_first = &ia.kron(&mu) * t;
        member(&self.square, &left_first, "μ □ 𝒜")?;
        member(&self.square, &right_first, "𝒜 □ μ")?;
        let lhs = &mu * &left_first;
        let rhs = &mu * &right_first;
        for i in 0..triple.dim() {
            v.check(lhs.column(i) == rhs.column(i), "associativity", || format!("t{i}"));
        }

        let eta_left = &self.unit.kron(&ia) * self.left();
        let eta_right = &ia.kron(&self.unit) * self.right();
        member(&self.square, &eta_left, "(η □ 𝒜)∘λ")?;
        member(&self.square, &eta_right, "(𝒜 □ η)∘ρ")?;
        let l = &mu * &eta_left;
        let r = &mu * &eta_right;
        for i in 0..n {
            v.check(l.column(i) == ia.column(i), "left unit", || format!("a{i}"));
            v.check(r.column(i) == ia.column(i), "right unit", || format!("a{i}"));
        }
        Ok(v)
    }
}

/// A right `C`-comodule with an action `M □_C 𝒜 → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRingModule {
    pub comodule: Comodule,
    pub cotensor: Subspace,
    /// In coordinates of `cotensor`.
    pub action: Matrix,
}

impl CRingModule {
    pub fn new(r: &CRing, comodule: Comodule, action: Matrix) -> Result<CRingModule> {
        if comodule.coalgebra != r.coalgebra {
            return Err(Error::Malformed("module over a different coalgebra".into()));
        }
        let cotensor = cotensor(&comodule, &r.bicomodule)?;
        if action.rows() != comodule.dim() || action.cols() != cotensor.dim() {
            return Err(Error::Malformed(format!(
                "action is {}x{}, expected {}x{}",
                action.rows(),
                action.cols(),
                comodule.dim(),
                cotensor.dim()
            )));
        }
        Ok(CRingModule { comodule, cotensor, action })
    }

    pub fn action_full(&self) -> Matrix {
        &self.action * &self.cotensor.coordinate_map()
    }

    pub fn validate(&self, r: &CRing) -> Result<Validation> {
        let f = r.field();
        let m = self.comodule.dim();
        let im = Matrix::identity(f, m);
        let ia = Matrix::identity(f, r.dim());
        let mut v = self.comodule.validate();
        if !v.is_valid() {
            return Ok(v);
        }
        let rho_m = self
            .comodule
            .right_coaction()
            .ok_or_else(|| Error::Malformed("a module needs a right coaction".into()))?;
        let act = self.action_full();
        let incl = self.cotensor.inclusion();

        let lhs = rho_m * &act * incl;
        let rhs = &(&act.kron(&r.coalgebra.identity()) * &im.kron(r.right())) * incl;
        for i in 0..self.cotensor.dim() {
            v.check(lhs.column(i) == rhs.column(i), "action colinearity", || format!("p{i}"));
        }

        let triple = triple_cotensor(&self.comodule, &r.bicomodule, &r.bicomodule)?;
        let t = triple.inclusion();
        let act_first = &act.kron(&ia) * t;
        let mu_first = &im.kron(&r.product_full()) * t;
        member(&self.cotensor, &act_first, "ρ_M □ 𝒜")?;
        member(&self.cotensor, &mu_first, "M □ μ")?;
        let lhs = &act * &act_first;
        let rhs = &act * &mu_first;
        for i in 0..triple.dim() {
            v.check(lhs.column(i) == rhs.column(i), "action associativity", || format!("t{i}"));
        }

        let eta = &im.kron(&r.unit) * rho_m;
        member(&self.cotensor, &eta, "(M □ η)∘ρ^M")?;
        let u = &act * &eta;
        for i in 0..m {
            v.check(u.column(i) == im.column(i), "action unit", || format!("m{i}"));
        }
        Ok(v)
    }
}

/// `(C⊗ψ⊗A)(Δ⊗A⊗A): C⊗A⊗A → 𝒜 □_C 𝒜` for `𝒜 = C⊗A`, in full coordinates.
fn entwining_square_map(e: &Entwining) -> Matrix {
    let ic = e.coalgebra.identity();
    let ia = Matrix::identity(e.field(), e.algebra.dim());
    &ic.kron(&e.psi).kron(&ia) * &e.coalgebra.delta().kron(&ia).kron(&ia)
}

/// `𝒜 = C⊗A` with left coaction `Δ⊗A`, right coaction `(C⊗ψ)(Δ⊗A)`,
/// product `C⊗μ` and unit `C⊗1`.
pub fn cring_from_entwining(e: &Entwining) -> Result<CRing> {
    e.validate().require("entwining")?;
    let f = e.field();
    let (nc, d) = (e.coalgebra.dim(), e.algebra.dim());
    let ic = e.coalgebra.identity();
    let ia = Matrix::identity(f, d);
    let left = e.coalgebra.delta().kron(&ia);
    let right = &ic.kron(&e.psi) * &left;
    let bic = Comodule::new(e.coalgebra.clone(), nc * d, Some(left), Some(right))?;
    let square = cotensor(&bic, &bic)?;
    let iso = entwining_square_map(e);
    let iso = square
        .corestrict(&iso)
        .ok_or_else(|| Error::Internal("C⊗A⊗A does not map into the cotensor square".into()))?;
    let iso_inv = iso
        .inverse()
        .ok_or_else(|| Error::Internal("C⊗A⊗A → 𝒜 □ 𝒜 is not bijective".into()))?;
    let product = &ic.kron(&e.algebra.mult_matrix()) * &iso_inv;
    let unit = ic.kron(&Matrix::column_vector(f, e.algebra.unit()));
    let r = CRing::new(bic, product, unit)?;
    r.validate()?.require("C-ring from an entwining").map_err(|x| Error::Internal(x.to_string()))?;
    Ok(r)
}

/// `ψ = (ε⊗A⊗C)∘ρ^{C⊗A}`, after checking that `r` has the shape of
/// [`cring_from_entwining`] over `a`.
pub fn entwining_from_cring(r: &CRing, a: Arc<Algebra>) -> Result<Entwining> {
    let f = r.field();
    let (nc, d) = (r.coalgebra.dim(), a.dim());
    if r.dim() != nc * d {
        return Err(Error::Precondition(format!("C-ring has dimension {}, expected {nc}·{d}", r.dim())));
    }
    let ia = Matrix::identity(f, d);
    if *r.left() != r.coalgebra.delta().kron(&ia) {
        return Err(Error::Precondition("left coaction is not Δ⊗A".into()));
    }
    let unit = r.coalgebra.identity().kron(&Matrix::column_vector(f, a.unit()));
    if r.unit != unit {
        return Err(Error::Precondition("unit is not C⊗1".into()));
    }
    let psi = &r.coalgebra.counit_row().kron(&ia).kron(&r.coalgebra.identity()) * r.right();
    let e = Entwining::new(a, r.coalgebra.clone(), psi)?;
    if !e.validate().is_valid() {
        return Err(Error::Precondition(format!("recovered ψ is not an entwining: {}", e.validate())));
    }
    let back = cring_from_entwining(&e)?;
    if back.product != r.product {
        return Err(Error::Precondition("product is not C⊗μ".into()));
    }
    Ok(e)
}

/// `C □_B C ⊆ C ⊗ C` for a coalgebra map `π: C → B`.
pub fn surjection_space(pi: &CoalgebraMorphism) -> Result<Subspace> {
    let c = &pi.source;
    let ic = c.identity();
    let over_b = Comodule::new(
        pi.target.clone(),
        c.dim(),
        Some(&pi.matrix.kron(&ic) * c.delta()),
        Some(&ic.kron(&pi.matrix) * c.delta()),
    )?;
    cotensor(&over_b, &over_b)
}

/// `𝒜 = C □_B C` for a surjective coalgebra map `π: C → B`, with product
/// `C □ ε □ C` and unit `Δ`.
pub fn cring_from_surjection(pi: &CoalgebraMorphism) -> Result<CRing> {
    let v = pi.validate();
    if !v.is_valid() {
        return Err(Error::Precondition(format!("not a coalgebra morphism: {v}")));
    }
    if !pi.is_surjective() {
        return Err(Error::Precondition("π is not surjective".into()));
    }
    let c = &pi.source;
    let n = c.dim();
    let ic = c.identity();
    let space = surjection_space(pi)?;
    let incl = space.inclusion();
    let left = corestrict_middle(&space, n, 1, &(&c.delta().kron(&ic) * incl), "Δ⊗C")
        .map_err(|e| Error::Internal(e.to_string()))?;
    let right = corestrict_middle(&space, 1, n, &(&ic.kron(c.delta()) * incl), "C⊗Δ")
        .map_err(|e| Error::Internal(e.to_string()))?;
    let bic = Comodule::new(c.clone(), space.dim(), Some(left), Some(right))?;
    let square = cotensor(&bic, &bic)?;
    let eps = c.counit_row();
    let collapse = ic.kron(&eps).kron(&eps).kron(&ic);
    let full = &(&collapse * &incl.kron(incl)) * square.inclusion();
    let product = space
        .corestrict(&full)
        .ok_or_else(|| Error::Internal("C □ ε □ C leaves C □_B C".into()))?;
    let unit = space
        .corestrict(c.delta())
        .ok_or_else(|| Error::Internal("Δ leaves C □_B C".into()))?;
    let r = CRing::new(bic, product, unit)?;
    r.validate()?.require("C-ring from a surjection").map_err(|x| Error::Internal(x.to_string()))?;
    Ok(r)
}

/// Solves an affine condition on a `rows × cols` matrix given by its residual.
fn solve_for_map(field: crate::linalg::Field, rows: usize, cols: usize, residual: impl Fn(&Matrix) -> Vec<Scalar>) -> Result<Decision<(Matrix, usize)>> {
    let zero = Matrix::zeros(field, rows, cols);
    let base = residual(&zero);
    let columns: Vec<Vec<Scalar>> = (0..rows * cols)
        .map(|k| {
            let mut e = zero.clone();
            e.set(k / cols, k % cols, field.one());
            vector::sub(&residual(&e), &base)
        })
        .collect();
    let sys = Matrix::from_columns(field, base.len(), &columns);
    let rhs = vector::scale(&base, &-field.one());
    Ok(sys.solve_or_witness(&rhs)?.map(|s| {
        let x = s.particular;
        (Matrix::from_fn(field, rows, cols, |r, c| x[r * cols + c].clone()), s.kernel.len())
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualInduction {
    /// `e: 𝒜 → k` as a row.
    pub e: Matrix,
    pub solution_dim: usize,
}

/// `e: 𝒜 → k` with `(e⊗C)∘ρ = (C⊗e)∘λ` and `e∘η = ε`.
pub fn check_dual_induction_separable(r: &CRing) -> Result<Decision<DualInduction>> {
    let f = r.field();
    let ic = r.coalgebra.identity();
    let eps = r.coalgebra.counit_row();
    let out = solve_for_map(f, 1, r.dim(), |e| {
        let a = &e.kron(&ic) * r.right();
        let b = &ic.kron(e) * r.left();
        let mut res = (&a - &b).entries().to_vec();
        res.extend_from_slice((&(e * &r.unit) - &eps).entries());
        res
    })?;
    Ok(out.map(|(e, solution_dim)| DualInduction { e, solution_dim }))
}

pub fn is_dual_induction_certificate(r: &CRing, e: &Matrix) -> bool {
    let ic = r.coalgebra.identity();
    &e.kron(&ic) * r.right() == &ic.kron(e) * r.left() && e * &r.unit == r.coalgebra.counit_row()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCointegral {
    /// `C → 𝒜 □_C 𝒜`, in coordinates of the square.
    pub gamma: Matrix,
    pub solution_dim: usize,
}

fn dual_gamma_residual(r: &CRing, gamma: &Matrix) -> Vec<Scalar> {
    let f = r.field();
    let ia = Matrix::identity(f, r.dim());
    let ic = r.coalgebra.identity();
    let delta = r.coalgebra.delta();
    let g = r.square.inclusion() * gamma;
    let mu = r.product_full();
    let mut res = Vec::new();
    // bicolinearity in 𝒜 ⊗ 𝒜
    res.extend_from_slice((&(&r.left().kron(&ia) * &g) - &(&ic.kron(&g) * delta)).entries());
    res.extend_from_slice((&(&ia.kron(r.right()) * &g) - &(&g.kron(&ic) * delta)).entries());
    // (μ □ 𝒜)(𝒜 □ γ)ρ = (𝒜 □ μ)(γ □ 𝒜)λ
    let lhs = &(&mu.kron(&ia) * &ia.kron(&g)) * r.right();
    let rhs = &(&ia.kron(&mu) * &g.kron(&ia)) * r.left();
    res.extend_from_slice((&lhs - &rhs).entries());
    res.extend_from_slice((&(&r.product * gamma) - &r.unit).entries());
    res
}

/// Bicolinear `γ: C → 𝒜 □_C 𝒜` with the compatibility identity and `μ∘γ = η`.
pub fn check_dual_forgetful_separable(r: &CRing) -> Result<Decision<DualCointegral>> {
    let out = solve_for_map(r.field(), r.square.dim(), r.coalgebra.dim(), |g| dual_gamma_residual(r, g))?;
    Ok(out.map(|(gamma, solution_dim)| DualCointegral { gamma, solution_dim }))
}

pub fn is_dual_cointegral(r: &CRing, gamma: &Matrix) -> bool {
    gamma.rows() == r.square.dim() && gamma.cols() == r.coalgebra.dim() && vector::is_zero(&dual_gamma_residual(r, gamma))
}

/// The quotient of `C` by a coideal `I` and the projection onto it.
#[derive(Clone, Debug)]
pub struct CoidealQuotient {
    /// `a ↦ κ(a₍₀₎)a₍₁₎`.
    pub action: Matrix,
    /// `C` as a module through `action`.
    pub module: CRingModule,
    pub module_valid: bool,
    pub coideal: Subspace,
    pub quotient: Arc<Coalgebra>,
    pub projection: CoalgebraMorphism,
}

/// `C` as a right module over a character `κ`, the invariants coideal
/// `I = span{κ(a₍₀₎)a₍₁₎ − a₍₋₁₎κ(a₍₀₎)}` and the coalgebra `C/I`.
pub fn invariants_coideal(r: &CRing, kappa: &[Scalar]) -> Result<CoidealQuotient> {
    let f = r.field();
    let c = &r.coalgebra;
    let nc = c.dim();
    if kappa.len() != r.dim() {
        return Err(Error::Malformed(format!("character has length {}, expected {}", kappa.len(), r.dim())));
    }
    let k = Matrix::row_vector(f, kappa);
    let ic = c.identity();
    if &k * &r.unit != c.counit_row() {
        return Err(Error::Precondition("κ∘η ≠ ε".into()));
    }
    let action = &k.kron(&ic) * r.right();
    let other = &ic.kron(&k) * r.left();
    let coideal = (&action - &other).column_space();

    // C □_C 𝒜 ≅ 𝒜 through ε ⊗ 𝒜.
    let reg = Comodule::right(c.clone(), nc, c.delta().clone())?;
    let cot = cotensor(&reg, &r.bicomodule)?;
    let to_a = &c.counit_row().kron(&Matrix::identity(f, r.dim())) * cot.inclusion();
    let module = CRingModule::new(r, reg, &action * &to_a)?;
    let module_valid = module.validate(r)?.is_valid();

    let basis = coideal.inclusion();
    let sums = basis.kron(&ic).hstack(&ic.kron(basis)).column_space();
    if !sums.contains_columns(&(c.delta() * basis)) {
        return Err(Error::Internal("Δ(I) ⊄ I⊗C + C⊗I".into()));
    }
    if !(&c.counit_row() * basis).is_zero() {
        return Err(Error::Internal("ε(I) ≠ 0".into()));
    }
    // Complete a basis of I by unit vectors; the rest spans a complement.
    let mut cols = basis.columns();
    let mut complement = Vec::new();
    for i in 0..nc {
        let u = vector::unit(f, nc, i);
        let mut trial = cols.clone();
        trial.push(u.clone());
        if Matrix::from_columns(f, nc, &trial).rank() == trial.len() {
            cols = trial;
            complement.push(u);
        }
    }
    let q = complement.len();
    let change = Matrix::from_columns(f, nc, &cols)
        .inverse()
        .ok_or_else(|| Error::Internal("basis completion failed".into()))?;
    let proj = change.select_rows(&(coideal.dim()..nc).collect::<Vec<_>>());
    let section = Matrix::from_columns(f, nc, &complement);
    let delta = &(&proj.kron(&proj) * c.delta()) * &section;
    let counit: Vec<Scalar> = (&c.counit_row() * &section).row(0).to_vec();
    let quotient = Arc::new(Coalgebra::from_matrices(delta, counit)?);
    if q > 0 {
        quotient.validate().require("quotient coalgebra").map_err(|e| Error::Internal(e.to_string()))?;
    }
    let projection = CoalgebraMorphism::new(c.clone(), quotient.clone(), proj)?;
    projection.validate().require("quotient map").map_err(|e| Error::Internal(e.to_string()))?;
    Ok(CoidealQuotient {
        action,
        module,
        module_valid,
        coideal,
        quotient,
        projection,
    })
}
