//! Galois corings: the comodule structure a grouplike puts on `A`, its
//! coinvariants `B`, the adjunction between comodules and `B`-modules, and
//! the canonical maps compared with the coring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{hom_space, AlgebraMorphism, BalancedTensor, Bimodule, Flavor, Subalgebra};
use crate::algebra::centralizer;
use crate::coring::{canonical_coring, coinvariants, is_grouplike, CanonicalCoring, Coring, CoringComodule};
use crate::entwining::{coring_from_weak, ComoduleAlgebra, Entwining};
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar, Subspace};
use crate::separability::faithful_flatness_sufficient;

/// `A` as a right comodule via `a ↦ 1 ⊗_A g·a`.
pub fn comodule_from_grouplike(c: &Coring, g: &[Scalar]) -> Result<CoringComodule> {
    if !is_grouplike(c, g) {
        return Err(Error::Precondition("g is not grouplike".into()));
    }
    let a = c.algebra();
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| vector::kron(a.unit(), &c.act_right(&a.basis_vector(i)).mul_vec(g)))
        .collect();
    let lift = Matrix::from_columns(a.field(), a.dim() * c.dim(), &cols);
    let out = CoringComodule::new(c, Bimodule::regular(a.clone()).right_part(), lift)?;
    out.validate(c).require("comodule from a grouplike").map_err(|e| Error::Internal(e.to_string()))?;
    Ok(out)
}

/// `B = {b : b·g = g·b}`, cross-checked against the coinvariants of `A`.
pub fn coinvariant_ring(c: &Coring, g: &[Scalar]) -> Result<Subalgebra> {
    let b = centralizer(c.algebra(), c.bimodule(), g)?;
    let m = comodule_from_grouplike(c, g)?;
    if !coinvariants(&m, g).same_as(&b.space) {
        return Err(Error::Internal("centralizer of g differs from the coinvariants of A".into()));
    }
    Ok(b)
}

/// A coring with a grouplike and the coinvariant ring it determines.
#[derive(Clone, Debug)]
pub struct Descent {
    pub coring: Coring,
    pub g: Vec<Scalar>,
    pub b: Subalgebra,
    /// `A` as a `(B, A)`-bimodule.
    pub a_ba: Bimodule,
}

impl Descent {
    pub fn new(c: &Coring, g: &[Scalar]) -> Result<Descent> {
        let b = coinvariant_ring(c, g)?;
        let a_ba = Bimodule::regular(c.algebra().clone()).restrict_left(&b.inclusion())?;
        Ok(Descent {
            coring: c.clone(),
            g: g.to_vec(),
            b,
            a_ba,
        })
    }

    pub fn extension(&self) -> AlgebraMorphism {
        self.b.inclusion()
    }

    /// `B` as a right module over itself.
    pub fn b_module(&self) -> Bimodule {
        Bimodule::regular(self.b.algebra.clone()).right_part()
    }

    /// `N ⊗_B A` with coaction `n⊗a ↦ n⊗1 ⊗_A g·a`.
    pub fn induce(&self, n: &Bimodule) -> Result<Induced> {
        if *n.right_algebra != *self.b.algebra || n.left_algebra.dim() != 1 {
            return Err(Error::Malformed("expected a right B-module".into()));
        }
        let c = &self.coring;
        let a = c.algebra();
        let f = a.field();
        let t = BalancedTensor::new(n, &self.a_ba)?;
        let d = a.dim();
        let cols: Vec<Vec<Scalar>> = t
            .free_coordinates()
            .iter()
            .map(|&idx| {
                let (nu, j) = (idx / d, idx % d);
                let x = t.element(&n.basis_vector(nu), a.unit());
                let ga = c.act_right(&a.basis_vector(j)).mul_vec(&self.g);
                vector::kron(&x, &ga)
            })
            .collect();
        let lift = Matrix::from_columns(f, t.dim() * c.dim(), &cols);
        let comodule = CoringComodule::new(c, t.module().clone(), lift)?;
        comodule.validate(c).require("induced comodule").map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Induced { tensor: t, comodule })
    }

    /// `M^{co C}` as a right `B`-module.
    pub fn coinvariant_module(&self, m: &CoringComodule) -> Result<Coinvariants> {
        let space = coinvariants(m, &self.g);
        let module = m.module.restrict_right(&self.extension())?.submodule(&space)?;
        Ok(Coinvariants { space, module })
    }

    /// `Ψ_M: M^{co C} ⊗_B A → M`, `m⊗a ↦ m·a`.
    pub fn psi(&self, m: &CoringComodule) -> Result<(Coinvariants, Induced, Matrix)> {
        let co = self.coinvariant_module(m)?;
        let ind = self.induce(&co.module)?;
        let d = self.coring.algebra().dim();
        let incl = co.space.inclusion();
        let full = Matrix::from_fn(m.module.field(), m.dim(), co.space.dim() * d, |r, col| {
            let v = m.module.right_basis(col % d).mul_vec(&incl.column(col / d));
            v[r].clone()
        });
        let psi = ind
            .tensor
            .factor(&full)
            .ok_or_else(|| Error::Internal("the action does not factor through the tensor over B".into()))?;
        Ok((co, ind, psi))
    }

    /// `Φ_N: N → (N ⊗_B A)^{co C}`, `n ↦ n⊗1`, in coinvariant coordinates.
    pub fn phi(&self, n: &Bimodule) -> Result<(Induced, Coinvariants, Matrix)> {
        let ind = self.induce(n)?;
        let co = self.coinvariant_module(&ind.comodule)?;
        let one = self.coring.algebra().unit();
        let cols = (0..n.dim())
            .map(|i| {
                co.space
                    .coords(&ind.tensor.element(&n.basis_vector(i), one))
                    .ok_or_else(|| Error::Internal("n⊗1 is not coinvariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = Matrix::from_columns(n.field(), co.space.dim(), &cols);
        Ok((ind, co, phi))
    }
}

#[derive(Clone, Debug)]
pub struct Induced {
    pub tensor: BalancedTensor,
    pub comodule: CoringComodule,
}

#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub space: Subspace,
    pub module: Bimodule,
}

/// The comparison of `A ⊗_B A` with the coring.
#[derive(Clone, Debug)]
pub struct GaloisData {
    pub descent: Descent,
    pub canonical: CanonicalCoring,
    /// `χ(a⊗_B a') = a·g·a'`.
    pub chi: Matrix,
    pub chi_inverse: Option<Matrix>,
    pub bilinear: bool,
    pub coproduct_compatible: bool,
    pub counit_compatible: bool,
    pub warnings: Vec<String>,
}

impl GaloisData {
    pub fn is_galois(&self) -> bool {
        self.chi_inverse.is_some() && self.bilinear && self.coproduct_compatible && self.counit_compatible
    }
}

pub fn galois_check(c: &Coring, g: &[Scalar]) -> Result<GaloisData> {
    let descent = Descent::new(c, g)?;
    let canonical = canonical_coring(&descent.extension())?;
    let a = c.algebra();
    let d = a.dim();
    let f = a.field();
    let cols: Vec<Vec<Scalar>> = (0..d * d)
        .map(|idx| c.act_left(&a.basis_vector(idx / d)).mul_vec(&c.act_right(&a.basis_vector(idx % d)).mul_vec(g)))
        .collect();
    let full = Matrix::from_columns(f, c.dim(), &cols);
    let chi = canonical
        .tensor
        .factor(&full)
        .ok_or_else(|| Error::Internal("χ is not balanced over the coinvariants".into()))?;
    let cc = &canonical.coring;
    let bilinear = cc.bimodule().is_bilinear(c.bimodule(), &chi);
    let chi_chi = cc.square().map_to(c.square(), &chi, &chi);
    let coproduct_compatible = &c.coproduct() * &chi == &chi_chi * &cc.coproduct();
    let counit_compatible = c.counit() * &chi == *cc.counit();
    let chi_inverse = if chi.is_square() { chi.inverse() } else { None };
    Ok(GaloisData {
        descent,
        canonical,
        chi,
        chi_inverse,
        bilinear,
        coproduct_compatible,
        counit_compatible,
        warnings: Vec::new(),
    })
}

/// Galois check of a canonical coring at `1⊗_B 1`, warning when the
/// recovered coinvariants are larger than `B`.
pub fn galois_check_canonical(cc: &CanonicalCoring) -> Result<GaloisData> {
    let mut gd = galois_check(&cc.coring, &cc.one())?;
    let original = cc.extension.matrix.column_space();
    if !gd.descent.b.space.same_as(&original) {
        gd.warnings.push(format!(
            "recovered coinvariants have dimension {} > {}",
            gd.descent.b.dim(),
            original.dim()
        ));
    }
    Ok(gd)
}

/// `χ = can` on coordinates for the coring of an entwining whose algebra
/// carries the coaction `a ↦ g·a`.
pub fn chi_equals_can(gd: &GaloisData, ca: &ComoduleAlgebra) -> Result<bool> {
    let (b, cc) = ca.canonical()?;
    if !b.space.same_as(&gd.descent.b.space) {
        return Ok(false);
    }
    Ok(ca.can(&cc.tensor)? == gd.chi)
}

/// `Im(can)` against the image of the weak entwining's projection.
pub fn weak_image_matches(ca: &ComoduleAlgebra, w: &Entwining) -> Result<bool> {
    let (_, cc) = ca.canonical()?;
    let can = ca.can(&cc.tensor)?;
    let wc = coring_from_weak(w)?;
    Ok(can.column_space().same_as(&wc.image))
}

/// The maps of the comodule/`B`-module adjunction and its triangle identities.
#[derive(Clone, Debug)]
pub struct AdjunctionReport {
    pub psi: Matrix,
    pub phi: Matrix,
    pub psi_is_comodule_map: bool,
    pub phi_is_linear: bool,
    pub psi_bijective: bool,
    pub phi_bijective: bool,
    /// `Ψ_{N⊗A} ∘ (Φ_N ⊗ A) = id`.
    pub triangle_induced: bool,
    /// `Ψ_M^{co C} ∘ Φ_{M^{co C}} = id`.
    pub triangle_coinvariant: bool,
}

impl AdjunctionReport {
    pub fn triangles_hold(&self) -> bool {
        self.psi_is_comodule_map && self.phi_is_linear && self.triangle_induced && self.triangle_coinvariant
    }
}

fn bijective(m: &Matrix) -> bool {
    m.is_square() && m.is_invertible()
}

pub fn adjunction_check(desc: &Descent, n: &Bimodule, m: &CoringComodule) -> Result<AdjunctionReport> {
    let f = desc.coring.field();
    let (m_co, m_ind, psi) = desc.psi(m)?;
    let psi_is_comodule_map = m_ind.comodule.is_comodule_map(m, &psi);

    let (n_ind, n_co, phi) = desc.phi(n)?;
    let phi_is_linear = n.is_right_linear(&n_co.module, &phi);

    // Ψ_{N⊗A} ∘ (Φ_N ⊗ A) on N ⊗_B A.
    let (_, fn_ind, psi_fn) = desc.psi(&n_ind.comodule)?;
    let id_a = Matrix::identity(f, desc.coring.algebra().dim());
    let phi_a = n_ind.tensor.map_to(&fn_ind.tensor, &phi, &id_a);
    let triangle_induced = (&psi_fn * &phi_a).is_identity();

    // Ψ_M restricted to coinvariants after Φ_{M^{co C}}.
    let (gm_ind, gm_co, phi_gm) = desc.phi(&m_co.module)?;
    let _ = gm_ind;
    let back = &(&(&psi * gm_co.space.inclusion()) * &phi_gm);
    let triangle_coinvariant = back == m_co.space.inclusion();

    Ok(AdjunctionReport {
        psi_bijective: bijective(&psi),
        phi_bijective: bijective(&phi),
        psi,
        phi,
        psi_is_comodule_map,
        phi_is_linear,
        triangle_induced,
        triangle_coinvariant,
    })
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub galois: bool,
    /// Every `Ψ_M` and `Φ_N` in the family is bijective.
    pub family_equivalence: bool,
    /// `A` projective over `B` with a `B`-bilinear retraction.
    pub flat_sufficient: bool,
    pub members: usize,
    pub failures: Vec<String>,
}

impl EquivalenceReport {
    /// Faithful flatness of `A` over `B` is outside what is decided here.
    pub const FAITHFUL_FLATNESS: &'static str = "not decided";
}

/// Right submodule of `n` generated by `v`.
fn right_generated(n: &Bimodule, v: &[Scalar]) -> Subspace {
    let vs: Vec<Vec<Scalar>> = (0..n.right_algebra.dim()).map(|i| n.right_basis(i).mul_vec(v)).collect();
    Subspace::span(n.field(), n.dim(), &vs)
}

/// `B`, `B²` and `size` seeded submodules and quotients of `B²`.
pub fn module_family(desc: &Descent, size: usize, seed: u64) -> Result<Vec<(String, Bimodule)>> {
    let bm = desc.b_module();
    let b2 = bm.direct_sum(&bm)?;
    let f = bm.field();
    let mut out = vec![("B".to_string(), bm), ("B^2".to_string(), b2.clone())];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = f.order().map_or(5, |p| p as i64);
    for k in 0..size {
        let v: Vec<Scalar> = (0..b2.dim()).map(|_| f.from_i64(rng.gen_range(0..range))).collect();
        let sub = right_generated(&b2, &v);
        if k % 2 == 0 {
            out.push((format!("submodule {k}"), b2.submodule(&sub)?));
        } else {
            out.push((format!("quotient {k}"), b2.quotient(&sub)?.0));
        }
    }
    Ok(out)
}

pub fn equivalence_check(c: &Coring, g: &[Scalar], size: usize, seed: u64) -> Result<EquivalenceReport> {
    let gd = galois_check(c, g)?;
    let desc = &gd.descent;
    let mut failures = Vec::new();
    let modules = module_family(desc, size, seed)?;
    let mut comodules = vec![
        ("A".to_string(), comodule_from_grouplike(c, g)?),
        ("C".to_string(), c.regular_comodule()),
    ];
    for (name, n) in &modules {
        comodules.push((format!("{name} ⊗ A"), desc.induce(n)?.comodule));
    }
    for (name, m) in &comodules {
        let (_, _, psi) = desc.psi(m)?;
        if !bijective(&psi) {
            failures.push(format!("Ψ not bijective at {name}"));
        }
    }
    for (name, n) in &modules {
        let (_, _, phi) = desc.phi(n)?;
        if !bijective(&phi) {
            failures.push(format!("Φ not bijective at {name}"));
        }
    }
    Ok(EquivalenceReport {
        galois: gd.is_galois(),
        family_equivalence: failures.is_empty(),
        flat_sufficient: faithful_flatness_sufficient(&desc.extension())?,
        members: comodules.len() + modules.len(),
        failures,
    })
}

/// A `(B, A)`-bimodule that is a right comodule with left `B`-linear coaction.
#[derive(Clone, Debug)]
pub struct BiComodule {
    pub comodule: CoringComodule,
    /// `v ↦ b·v` for the basis of `B`.
    pub left: Vec<Matrix>,
}

impl BiComodule {
    /// `A` itself, via the grouplike.
    pub fn algebra(desc: &Descent) -> Result<BiComodule> {
        let comodule = comodule_from_grouplike(&desc.coring, &desc.g)?;
        let left = (0..desc.b.dim()).map(|i| desc.a_ba.left_basis(i).clone()).collect();
        Ok(BiComodule { comodule, left })
    }

    pub fn bimodule(&self, desc: &Descent) -> Result<Bimodule> {
        let m = &self.comodule.module;
        Bimodule::new(desc.b.algebra.clone(), m.right_algebra.clone(), m.dim(), self.left.clone(), m.right_actions().to_vec())
    }

    pub fn validate(&self, desc: &Descent) -> Result<()> {
        let bm = self.bimodule(desc)?;
        bm.validate().require("(B, A)-bimodule")?;
        let t = self.comodule.tensor();
        let id = Matrix::identity(desc.coring.field(), desc.coring.dim());
        let co = self.comodule.coaction();
        for l in &self.left {
            if &co * l != &t.map_to(t, l, &id) * &co {
                return Err(Error::Precondition("coaction is not left B-linear".into()));
            }
        }
        Ok(())
    }
}

/// Right `A`-linear colinear maps `x → m`.
pub fn comodule_maps(c: &Coring, x: &CoringComodule, m: &CoringComodule) -> Vec<Matrix> {
    let f = c.field();
    let (rows, cols) = (m.dim(), x.dim());
    let id = Matrix::identity(f, c.dim());
    let residual = |h: &Matrix| -> Vec<Scalar> {
        let mut out = Vec::new();
        for i in 0..c.algebra().dim() {
            out.extend_from_slice((&(h * x.module.right_basis(i)) - &(m.module.right_basis(i) * h)).entries());
        }
        let hc = x.tensor().map_to(m.tensor(), h, &id);
        out.extend_from_slice((&(&m.coaction() * h) - &(&hc * &x.coaction())).entries());
        out
    };
    let units: Vec<Vec<Scalar>> = (0..rows * cols)
        .map(|k| residual(&Matrix::from_fn(f, rows, cols, |r, s| if r * cols + s == k { f.one() } else { f.zero() })))
        .collect();
    let len = units.first().map_or(0, Vec::len);
    let sys = Matrix::from_columns(f, len, &units);
    sys.kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_fn(f, rows, cols, |r, s| v[r * cols + s].clone()))
        .collect()
}

#[derive(Clone, Debug)]
pub struct HomTensorReport {
    /// `dim Hom^C(N ⊗_B V, M)`.
    pub lhs_dim: usize,
    /// `dim Hom_B(N, Hom^C(V, M))`.
    pub rhs_dim: usize,
    pub roundtrip: bool,
}

/// Compares `Hom^C(N ⊗_B V, M)` with `Hom_B(N, Hom^C(V, M))` through
/// `f ↦ (n ↦ (v ↦ f(n⊗v)))` and its inverse.
pub fn hom_tensor_check(desc: &Descent, v: &BiComodule, n: &Bimodule, m: &CoringComodule) -> Result<HomTensorReport> {
    v.validate(desc)?;
    if *n.right_algebra != *desc.b.algebra || n.left_algebra.dim() != 1 {
        return Err(Error::Precondition("N must be a right B-module".into()));
    }
    let c = &desc.coring;
    let f = c.field();
    let vb = v.bimodule(desc)?;
    let t = BalancedTensor::new(n, &vb)?;
    let nc = c.dim();
    let vd = v.comodule.dim();
    let lift_cols: Vec<Vec<Scalar>> = t
        .free_coordinates()
        .iter()
        .map(|&idx| {
            let (nu, j) = (idx / vd, idx % vd);
            let mut out = vector::zeros(f, t.dim() * nc);
            let rv = v.comodule.lift().column(j);
            for (pos, coef) in rv.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let (mu, s) = (pos / nc, pos % nc);
                let x = t.element(&n.basis_vector(nu), &vb.basis_vector(mu));
                let y = vector::kron(&x, &vector::unit(f, nc, s));
                vector::axpy(&mut out, coef, &y);
            }
            out
        })
        .collect();
    let nv = CoringComodule::new(c, t.module().clone(), Matrix::from_columns(f, t.dim() * nc, &lift_cols))?;
    nv.validate(c).require("N ⊗_B V").map_err(|e| Error::Internal(e.to_string()))?;

    let lhs = comodule_maps(c, &nv, m);
    let h = comodule_maps(c, &v.comodule, m);
    let hdim = h.len();
    let hcoords = |map: &Matrix| -> Result<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = h.iter().map(|x| x.entries().to_vec()).collect();
        let basis = Matrix::from_columns(f, m.dim() * vd, &cols);
        basis
            .solve_affine(map.entries())?
            .map(|s| s.particular)
            .ok_or_else(|| Error::Internal("map is not a comodule map".into()))
    };
    // Hom^C(V, M) is a right B-module by (h·b)(v) = h(b·v).
    let hact = (0..desc.b.dim())
        .map(|i| {
            let cols = h.iter().map(|x| hcoords(&(x * &v.left[i]))).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, hdim, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let hmod = Bimodule::right_module(desc.b.algebra.clone(), hdim, hact)?;
    let rhs = hom_space(n, &hmod, Flavor::RightLinear)?;

    // f ↦ (n ↦ (v ↦ f(n⊗v))).
    let alpha_cols = lhs
        .iter()
        .map(|fm| {
            let cols = (0..n.dim())
                .map(|nu| {
                    let vcols: Vec<Vec<Scalar>> = (0..vd).map(|j| fm.mul_vec(&t.element(&n.basis_vector(nu), &vb.basis_vector(j)))).collect();
                    hcoords(&Matrix::from_columns(f, m.dim(), &vcols))
                })
                .collect::<Result<Vec<_>>>()?;
            let g = Matrix::from_columns(f, hdim, &cols);
            rhs.coords(&g).ok_or_else(|| Error::Internal("image is not B-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    // g ↦ (n⊗v ↦ g(n)(v)).
    let lhs_cols: Vec<Vec<Scalar>> = lhs.iter().map(|x| x.entries().to_vec()).collect();
    let lhs_basis = Matrix::from_columns(f, m.dim() * t.dim(), &lhs_cols);
    let beta_cols = rhs
        .basis
        .iter()
        .map(|g| {
            let full = Matrix::from_fn(f, m.dim(), n.dim() * vd, |r, col| {
                let (nu, j) = (col / vd, col % vd);
                let mut hv = Matrix::zeros(f, m.dim(), vd);
                for (x, coef) in h.iter().zip(g.column(nu)) {
                    hv = &hv + &x.scale(&coef);
                }
                hv.get(r, j).clone()
            });
            let fm = t.factor(&full).ok_or_else(|| Error::Internal("g(n)(v) is not balanced".into()))?;
            lhs_basis
                .solve_affine(fm.entries())?
                .map(|s| s.particular)
                .ok_or_else(|| Error::Internal("g(n)(v) is not a comodule map".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = Matrix::from_columns(f, rhs.dim(), &alpha_cols);
    let beta = Matrix::from_columns(f, lhs.len(), &beta_cols);
    let roundtrip = (&alpha * &beta).is_identity() && (&beta * &alpha).is_identity();
    Ok(HomTensorReport {
        lhs_dim: lhs.len(),
        rhs_dim: rhs.dim(),
        roundtrip,
    })
}

/// The `B`-coring `{Σ aⁱ⊗āⁱ : Σ aⁱ₍₀₎⊗can⁻¹(1⊗aⁱ₍₁₎)āⁱ = Σ aⁱ⊗āⁱ⊗_B 1}` of a
/// Galois comodule algebra.
#[derive(Clone, Debug)]
pub struct SchneiderCoring {
    pub coinvariants: Subalgebra,
    /// The defining subspace of `A ⊗_k A`.
    pub space: Subspace,
    pub coring: Coring,
}

pub fn schneider_coring(ca: &ComoduleAlgebra) -> Result<SchneiderCoring> {
    let a = &ca.algebra;
    let (d, nc) = (a.dim(), ca.coalgebra.dim());
    let f = a.field();
    let (b, cc) = ca.canonical()?;
    let t = &cc.tensor;
    let q = t.dim();
    let can = ca.can(t)?;
    let can_inv = if can.is_square() { can.inverse() } else { None };
    let can_inv = can_inv.ok_or_else(|| Error::Precondition("can is not bijective".into()))?;
    // τ(c) = can⁻¹(1⊗c) ∈ A⊗_B A, then ·y on the right.
    let tau: Vec<Vec<Scalar>> = (0..nc).map(|s| can_inv.mul_vec(&vector::kron(a.unit(), &vector::unit(f, nc, s)))).collect();
    let tm = t.module();
    // x⊗y ↦ Σ x₍₀₎ ⊗ τ(x₍₁₎)·y in A ⊗_k (A⊗_B A).
    let big = Matrix::from_fn(f, d * q, d * d, |_, _| f.zero());
    let mut big = big;
    for x in 0..d {
        let rx = ca.rho.column(x);
        for y in 0..d {
            let col = x * d + y;
            let ry = tm.right_basis(y);
            for (pos, coef) in rx.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let (x0, s) = (pos / nc, pos % nc);
                let w = ry.mul_vec(&tau[s]);
                for (k, wk) in w.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    big.add_at(x0 * q + k, col, &(coef * wk));
                }
            }
            let y1 = t.element(&a.basis_vector(y), a.unit());
            for (k, v) in y1.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                big.add_at(x * q + k, col, &-v.clone());
            }
        }
    }
    let space = big.kernel();
    let incl = b.inclusion();
    let lb: Vec<Matrix> = (0..b.dim()).map(|i| a.left_mul(&incl.matrix.column(i)).kron(&Matrix::identity(f, d))).collect();
    let rb: Vec<Matrix> = (0..b.dim()).map(|i| Matrix::identity(f, d).kron(&a.right_mul(&incl.matrix.column(i)))).collect();
    let ambient = Bimodule::new(b.algebra.clone(), b.algebra.clone(), d * d, lb, rb)?;
    let module = ambient.submodule(&space)?;
    let n = space.dim();

    // j: 𝒞⊗_B 𝒞 → A⊗(A⊗_B A)⊗A, (x⊗y)⊗(x'⊗y') ↦ x⊗(y⊗x')⊗y'.
    let sq = BalancedTensor::new(&module, &module)?;
    let basis = space.basis_vectors();
    let embed = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vector::zeros(f, d * q * d);
        for (p, up) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let (x, y) = (p / d, p % d);
            for (r, vr) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let (x2, y2) = (r / d, r % d);
                let mid = t.element(&a.basis_vector(y), &a.basis_vector(x2));
                for (k, mk) in mid.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    out[(x * q + k) * d + y2] += &(&(up * vr) * mk);
                }
            }
        }
        out
    };
    let jcols: Vec<Vec<Scalar>> = sq
        .free_coordinates()
        .iter()
        .map(|&idx| embed(&basis[idx / n], &basis[idx % n]))
        .collect();
    let j = Matrix::from_columns(f, d * q * d, &jcols);
    if j.rank() != sq.dim() {
        return Err(Error::Precondition("𝒞 ⊗_B 𝒞 does not embed in A ⊗ A ⊗_B A ⊗ A".into()));
    }
    // Δ(x⊗y) = Σ x₍₀₎ ⊗ τ(x₍₁₎) ⊗ y.
    let mut delta_cols = Vec::with_capacity(n);
    let mut eps_cols = Vec::with_capacity(n);
    for u in &basis {
        let mut out = vector::zeros(f, d * q * d);
        for (p, up) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let (x, y) = (p / d, p % d);
            for (pos, coef) in ca.rho.column(x).iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let (x0, s) = (pos / nc, pos % nc);
                for (k, tk) in tau[s].iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    out[(x0 * q + k) * d + y] += &(&(up * coef) * tk);
                }
            }
        }
        let z = j
            .solve_affine(&out)?
            .ok_or_else(|| Error::Internal("coproduct leaves 𝒞 ⊗_B 𝒞".into()))?
            .particular;
        delta_cols.push(sq.section().mul_vec(&z));
        let prod = a.mult_matrix().mul_vec(u);
        eps_cols.push(b.space.coords(&prod).ok_or_else(|| Error::Internal("counit leaves B".into()))?);
    }
    let lift = Matrix::from_columns(f, n * n, &delta_cols);
    let counit = Matrix::from_columns(f, b.dim(), &eps_cols);
    let coring = Coring::new(module, lift, counit)?;
    coring.validate().require("Schneider coring").map_err(|e| Error::Internal(e.to_string()))?;
    Ok(SchneiderCoring {
        coinvariants: b,
        space,
        coring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::coring_from_entwining;
    use crate::fixtures;

    #[test]
    fn c2_is_galois() {
        let e = fixtures::c2();
        let c = coring_from_entwining(&e).unwrap();
        let g = e.element(e.algebra.unit(), &vector::unit(e.field(), 2, 0));
        let gd = galois_check(&c, &g).unwrap();
        assert_eq!(gd.descent.b.dim(), 1);
        assert!(gd.is_galois());
    }

    #[test]
    fn c2_schneider_dim() {
        let s = schneider_coring(&fixtures::c2_comodule_algebra()).unwrap();
        assert_eq!(s.coring.dim(), 2);
    }
}
