//! Frobenius corings: the search for an invariant `e` whose map
//! `φ(r) = e₍₁₎·r(e₍₂₎)` is bijective, the isomorphism between comodules and
//! modules over the dual ring, and Frobenius systems of extensions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{bimodule_invariants, dual_basis_projectivity, AlgebraMorphism, Bimodule, DualBasis};
use crate::coring::{dual_product, dual_ring, CanonicalCoring, Coring, CoringComodule, DualRing};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, RankWitness, Scalar};
use crate::validation::Validation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusStatus {
    Frobenius,
    NotProjective,
    NoBijectiveE,
}

/// How the candidate invariants were searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    /// Every point of `C^A` over a finite field.
    Exhaustive,
    /// A grid large enough that a nonzero determinant cannot vanish on all of it.
    Grid,
    /// Basis vectors and seeded random points; a miss is only probable.
    Sampled,
    /// No search was needed.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusOptions {
    pub seed: u64,
    pub retries: usize,
    /// Decide small rational cases by the grid instead of sampling.
    pub symbolic_det: bool,
}

impl Default for FrobeniusOptions {
    fn default() -> Self {
        FrobeniusOptions {
            seed: 0,
            retries: 20,
            symbolic_det: false,
        }
    }
}

/// Exhaustive enumeration stops at this many candidates.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
/// Largest invariant dimension decided by the grid.
pub const GRID_MAX_DIM: usize = 4;

#[derive(Clone, Debug)]
pub struct FrobeniusVerdict {
    pub status: FrobeniusStatus,
    pub projective: std::result::Result<DualBasis, RankWitness>,
    pub invariants_dim: usize,
    pub dual: Option<DualRing>,
    pub e: Option<Vec<Scalar>>,
    /// `φ: R → C`, with `R` on the dual ring's basis.
    pub phi: Option<Matrix>,
    pub phi_inverse: Option<Matrix>,
    pub search: Search,
    pub candidates: u64,
}

impl FrobeniusVerdict {
    /// A negative answer that rests on sampling alone.
    pub fn is_probabilistic(&self) -> bool {
        self.status == FrobeniusStatus::NoBijectiveE && self.search == Search::Sampled
    }
}

/// `φ_e: R → C`, `r ↦ e₍₁₎·r(e₍₂₎)`.
pub fn phi_matrix(c: &Coring, dual: &DualRing, e: &[Scalar]) -> Matrix {
    let n = c.dim();
    let f = c.field();
    let de = c.lift().mul_vec(e);
    let cols: Vec<Vec<Scalar>> = dual
        .hom
        .basis
        .iter()
        .map(|r| {
            let mut out = vector::zeros(f, n);
            for (idx, d) in de.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
                let (i, k) = (idx / n, idx % n);
                let a = r.column(k);
                vector::axpy(&mut out, d, &c.act_right(&a).column(i));
            }
            out
        })
        .collect();
    Matrix::from_columns(f, n, &cols)
}

/// Every coefficient vector over `𝔽_p` in lexicographic order.
fn lex_vectors(field: Field, p: u64, t: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let total = p.pow(t as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![field.zero(); t];
        for x in v.iter_mut().rev() {
            *x = field.from_i64((k % p) as i64);
            k /= p;
        }
        v
    })
}

pub fn check_frobenius(c: &Coring, opts: FrobeniusOptions) -> Result<FrobeniusVerdict> {
    let f = c.field();
    let n = c.dim();
    let projective = dual_basis_projectivity(&c.bimodule().left_part());
    let mut verdict = FrobeniusVerdict {
        status: FrobeniusStatus::NotProjective,
        projective,
        invariants_dim: 0,
        dual: None,
        e: None,
        phi: None,
        phi_inverse: None,
        search: Search::None,
        candidates: 0,
    };
    if verdict.projective.is_err() {
        return Ok(verdict);
    }
    let dual = dual_ring(c)?;
    let inv = bimodule_invariants(c.bimodule())?;
    let t = inv.dim();
    verdict.invariants_dim = t;
    verdict.status = FrobeniusStatus::NoBijectiveE;
    if dual.dim() != n || t == 0 {
        verdict.dual = Some(dual);
        return Ok(verdict);
    }
    let basis = inv.basis_vectors();
    let phis: Vec<Matrix> = basis.iter().map(|v| phi_matrix(c, &dual, v)).collect();
    let combine = |coeffs: &[Scalar]| -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for (p, x) in phis.iter().zip(coeffs) {
            if !x.is_zero() {
                m = &m + &p.scale(x);
            }
        }
        m
    };
    let mut tried = 0u64;
    let mut found: Option<Vec<Scalar>> = None;
    let mut try_one = |coeffs: Vec<Scalar>, found: &mut Option<Vec<Scalar>>| -> bool {
        tried += 1;
        if combine(&coeffs).is_invertible() {
            *found = Some(coeffs);
            true
        } else {
            false
        }
    };

    let finite = f.order().filter(|&p| (p as f64).powi(t as i32) <= EXHAUSTIVE_LIMIT as f64);
    if let Some(p) = finite {
        verdict.search = Search::Exhaustive;
        for v in lex_vectors(f, p, t) {
            if try_one(v, &mut found) {
                break;
            }
        }
    } else {
        let units = (0..t).map(|k| vector::unit(f, t, k));
        let mut hit = false;
        for u in units {
            if try_one(u, &mut found) {
                hit = true;
                break;
            }
        }
        if !hit && opts.symbolic_det && t <= GRID_MAX_DIM && f.order().is_none() {
            // det φ_e has degree at most n, so it vanishes on {0..n}^t only if zero.
            verdict.search = Search::Grid;
            for v in lex_vectors(f, n as u64 + 1, t) {
                if try_one(v, &mut found) {
                    break;
                }
            }
        } else if !hit {
            verdict.search = Search::Sampled;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for attempt in 0..opts.retries {
                let bound = 2 + attempt as i64;
                let v: Vec<Scalar> = (0..t).map(|_| f.from_i64(rng.gen_range(-bound..=bound))).collect();
                if try_one(v, &mut found) {
                    break;
                }
            }
        } else {
            verdict.search = Search::Sampled;
        }
    }
    verdict.candidates = tried;
    if let Some(coeffs) = found {
        let e = inv.element(&coeffs);
        let phi = phi_matrix(c, &dual, &e);
        let inverse = phi.inverse().ok_or_else(|| Error::Internal("selected φ is singular".into()))?;
        if !(&phi * &inverse).is_identity() || !(&inverse * &phi).is_identity() {
            return Err(Error::Internal("φ inverse check failed".into()));
        }
        verdict.status = FrobeniusStatus::Frobenius;
        verdict.e = Some(e);
        verdict.phi = Some(phi);
        verdict.phi_inverse = Some(inverse);
    }
    verdict.dual = Some(dual);
    Ok(verdict)
}

/// `c·r = c₍₁₎·r(c₍₂₎)` for each basis element of `R`.
pub fn r_action_on_coring(c: &Coring, dual: &DualRing) -> Vec<Matrix> {
    let n = c.dim();
    let f = c.field();
    dual.hom
        .basis
        .iter()
        .map(|r| {
            let cols: Vec<Vec<Scalar>> = (0..n)
                .map(|col| {
                    let mut out = vector::zeros(f, n);
                    for idx in 0..n * n {
                        let d = c.lift().get(idx, col);
                        if !d.is_zero() {
                            let (i, k) = (idx / n, idx % n);
                            vector::axpy(&mut out, d, &c.act_right(&r.column(k)).column(i));
                        }
                    }
                    out
                })
                .collect();
            Matrix::from_columns(f, n, &cols)
        })
        .collect()
}

/// `θ(e): r ↦ e·r` is an `(A, R)`-bimodule isomorphism `R → C`.
pub fn theta_is_isomorphism(c: &Coring, dual: &DualRing, e: &[Scalar]) -> bool {
    let acts = r_action_on_coring(c, dual);
    let f = c.field();
    let d = dual.dim();
    let cols: Vec<Vec<Scalar>> = acts.iter().map(|m| m.mul_vec(e)).collect();
    let theta = Matrix::from_columns(f, c.dim(), &cols);
    if !theta.is_invertible() {
        return false;
    }
    let ralg = &dual.algebra;
    let right_ok = (0..d).all(|j| &theta * ralg.right_basis(j) == &acts[j] * &theta);
    let a = c.algebra();
    let left_ok = (0..a.dim()).all(|i| {
        let iota = ralg.left_mul(&dual.iota.matrix.column(i));
        &theta * &iota == c.bimodule().left_basis(i) * &theta
    });
    right_ok && left_ok
}

/// A right comodule turned into a right `R`-module, `m·r = m₍₀₎·r(m₍₁₎)`.
pub fn comodule_to_r_module(c: &Coring, dual: &DualRing, m: &CoringComodule) -> Result<Bimodule> {
    let n = c.dim();
    let f = c.field();
    let md = m.dim();
    let right: Vec<Matrix> = dual
        .hom
        .basis
        .iter()
        .map(|r| {
            let cols: Vec<Vec<Scalar>> = (0..md)
                .map(|col| {
                    let mut out = vector::zeros(f, md);
                    for idx in 0..md * n {
                        let d = m.lift().get(idx, col);
                        if !d.is_zero() {
                            let (mu, k) = (idx / n, idx % n);
                            vector::axpy(&mut out, d, &m.module.act_right(&r.column(k)).column(mu));
                        }
                    }
                    out
                })
                .collect();
            Matrix::from_columns(f, md, &cols)
        })
        .collect();
    let out = Bimodule::right_module(dual.algebra.clone(), md, right)?;
    out.validate().require("induced R-module").map_err(|e| Error::Internal(e.to_string()))?;
    Ok(out)
}

/// A right `R`-module turned into a comodule, `ρ(m) = Σᵢ m·rᵢ ⊗_A cⁱ`.
pub fn r_module_to_comodule(c: &Coring, dual: &DualRing, db: &DualBasis, m: &Bimodule) -> Result<CoringComodule> {
    if *m.right_algebra != *dual.algebra {
        return Err(Error::Malformed("module over a different ring".into()));
    }
    let f = c.field();
    let md = m.dim();
    let a = c.algebra();
    let coords: Vec<Vec<Scalar>> = db
        .functionals
        .iter()
        .map(|r| dual.coords(r).ok_or_else(|| Error::Internal("dual basis functional is not in R".into())))
        .collect::<Result<_>>()?;
    let cols: Vec<Vec<Scalar>> = (0..md)
        .map(|col| {
            let mut out = vector::zeros(f, md * c.dim());
            for (r, ci) in coords.iter().zip(&db.generators) {
                let mr = m.act_right(r).column(col);
                vector::axpy(&mut out, &f.one(), &vector::kron(&mr, ci));
            }
            out
        })
        .collect();
    let lift = Matrix::from_columns(f, md * c.dim(), &cols);
    let right: Vec<Matrix> = (0..a.dim()).map(|i| m.act_right(&dual.iota.matrix.column(i))).collect();
    let module = Bimodule::right_module(a.clone(), md, right)?;
    let out = CoringComodule::new(c, module, lift)?;
    out.validate(c).require("induced comodule").map_err(|e| Error::Internal(e.to_string()))?;
    Ok(out)
}

/// Direction of [`transport_r`].
pub enum Transported {
    ToModule(Bimodule),
    ToComodule(CoringComodule),
}

/// Converts in the requested direction and checks that converting back
/// recovers the input.
pub fn transport_r(c: &Coring, dual: &DualRing, db: Option<&DualBasis>, from: Transported) -> Result<Transported> {
    let db = db.ok_or_else(|| Error::Precondition("C is not projective as a left A-module".into()))?;
    match from {
        Transported::ToComodule(m) => {
            let r = comodule_to_r_module(c, dual, &m)?;
            let back = r_module_to_comodule(c, dual, db, &r)?;
            if back.coaction() != m.coaction() || back.module != m.module {
                return Err(Error::Internal("comodule roundtrip through R-modules changed the structure".into()));
            }
            Ok(Transported::ToModule(r))
        }
        Transported::ToModule(m) => {
            let co = r_module_to_comodule(c, dual, db, &m)?;
            let back = comodule_to_r_module(c, dual, &co)?;
            if back != m {
                return Err(Error::Internal("R-module roundtrip through comodules changed the structure".into()));
            }
            Ok(Transported::ToComodule(co))
        }
    }
}

/// `r ↦ (a ↦ r(1⊗a))`, identifying `R` with `B`-linear endomorphisms of `A`.
pub fn endomorphism_of(cc: &CanonicalCoring, r: &Matrix) -> Matrix {
    let a = cc.coring.algebra();
    let cols: Vec<Vec<Scalar>> = (0..a.dim()).map(|j| r.mul_vec(&cc.element(a.unit(), &a.basis_vector(j)))).collect();
    Matrix::from_columns(a.field(), a.dim(), &cols)
}

/// The product on `R` is opposite composition of endomorphisms.
pub fn dual_ring_is_opposite_endomorphisms(cc: &CanonicalCoring, dual: &DualRing) -> bool {
    let ends: Vec<Matrix> = dual.hom.basis.iter().map(|r| endomorphism_of(cc, r)).collect();
    let injective = {
        let f = cc.coring.field();
        let cols: Vec<Vec<Scalar>> = ends.iter().map(|m| m.entries().to_vec()).collect();
        Matrix::from_columns(f, ends.first().map_or(0, |m| m.entries().len()), &cols).rank() == ends.len()
    };
    injective
        && dual.hom.basis.iter().zip(&ends).all(|(r, er)| {
            dual.hom
                .basis
                .iter()
                .zip(&ends)
                .all(|(r2, er2)| endomorphism_of(cc, &dual_product(&cc.coring, r, r2)) == er2 * er)
        })
}

/// `E: A → B` with pairs `(aᵢ, āᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSystem {
    pub e: Matrix,
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

pub fn validate_frobenius_system(ext: &AlgebraMorphism, sys: &FrobeniusSystem) -> Validation {
    let mut v = Validation::new();
    let (b, a) = (&ext.source, &ext.target);
    if sys.e.rows() != b.dim() || sys.e.cols() != a.dim() || sys.pairs.iter().any(|(x, y)| x.len() != a.dim() || y.len() != a.dim()) {
        v.violate("shape", "E or a pair has the wrong dimensions");
        return v;
    }
    for i in 0..b.dim() {
        let img = ext.matrix.column(i);
        v.check(&sys.e * &a.left_mul(&img) == b.left_basis(i) * &sys.e, "left B-linearity", || format!("b{i}"));
        v.check(&sys.e * &a.right_mul(&img) == b.right_basis(i) * &sys.e, "right B-linearity", || format!("b{i}"));
    }
    let ea = &ext.matrix * &sys.e;
    for j in 0..a.dim() {
        let x = a.basis_vector(j);
        let mut left = vector::zeros(a.field(), a.dim());
        let mut right = vector::zeros(a.field(), a.dim());
        for (ai, abar) in &sys.pairs {
            left = vector::add(&left, &a.mul(ai, &ea.mul_vec(&a.mul(abar, &x))));
            right = vector::add(&right, &a.mul(&ea.mul_vec(&a.mul(&x, ai)), abar));
        }
        v.check(left == x, "left dual basis identity", || format!("a{j}"));
        v.check(right == x, "right dual basis identity", || format!("a{j}"));
    }
    v
}

/// The invariant `e = Σ aᵢ⊗_B āᵢ` of a Frobenius system and its `φ`.
#[derive(Clone, Debug)]
pub struct FrobeniusWitness {
    pub e: Vec<Scalar>,
    pub phi: Matrix,
    pub phi_inverse: Matrix,
}

/// Builds `e`, checks it is central, and checks that `φ` is inverted by
/// `a⊗_B a' ↦ (a'' ↦ E(a''a)a')`.
pub fn induced_coring_witness(cc: &CanonicalCoring, sys: &FrobeniusSystem) -> Result<FrobeniusWitness> {
    validate_frobenius_system(&cc.extension, sys).require("Frobenius system")?;
    let c = &cc.coring;
    let a = c.algebra();
    let f = c.field();
    let mut e = vector::zeros(f, c.dim());
    for (ai, abar) in &sys.pairs {
        e = vector::add(&e, &cc.element(ai, abar));
    }
    let bm = c.bimodule();
    if !(0..a.dim()).all(|i| bm.left_basis(i).mul_vec(&e) == bm.right_basis(i).mul_vec(&e)) {
        return Err(Error::Internal("Σ aᵢ⊗āᵢ is not central".into()));
    }
    let dual = dual_ring(c)?;
    let phi = phi_matrix(c, &dual, &e);
    let inverse = frobenius_phi_inverse(cc, &dual, &sys.e)?;
    if !(&phi * &inverse).is_identity() || !(&inverse * &phi).is_identity() {
        return Err(Error::Internal("φ is not inverted by the Frobenius formula".into()));
    }
    Ok(FrobeniusWitness { e, phi, phi_inverse: inverse })
}

/// `a⊗_B a' ↦ r` with `r(x⊗y) = x·E(y·a)·a'`, on the dual ring's basis.
pub fn frobenius_phi_inverse(cc: &CanonicalCoring, dual: &DualRing, e: &Matrix) -> Result<Matrix> {
    let c = &cc.coring;
    let a = c.algebra();
    let d = a.dim();
    let f = c.field();
    let ea = &cc.extension.matrix * e;
    let frees = cc.tensor.free_coordinates();
    let mut cols = Vec::with_capacity(c.dim());
    for &p in frees {
        let (ai, aj) = (a.basis_vector(p / d), a.basis_vector(p % d));
        let rcols: Vec<Vec<Scalar>> = frees
            .iter()
            .map(|&q| {
                let (x, y) = (a.basis_vector(q / d), a.basis_vector(q % d));
                a.mul(&a.mul(&x, &ea.mul_vec(&a.mul(&y, &ai))), &aj)
            })
            .collect();
        let r = Matrix::from_columns(f, d, &rcols);
        cols.push(dual.coords(&r).ok_or_else(|| Error::Internal("formula does not give a left linear map".into()))?);
    }
    Ok(Matrix::from_columns(f, dual.dim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dual_numbers_are_frobenius() {
        let cc = fixtures::x2();
        let v = check_frobenius(&cc.coring, FrobeniusOptions::default()).unwrap();
        assert_eq!(v.status, FrobeniusStatus::Frobenius);
        let a = cc.coring.algebra();
        let (one, x) = (a.basis_vector(0), a.basis_vector(1));
        let expected = vector::add(&cc.element(&one, &x), &cc.element(&x, &one));
        assert_eq!(v.e.unwrap(), expected);
    }

    #[test]
    fn upper_triangular_dual_is_not() {
        let c = Coring::from_coalgebra(&fixtures::t2dual());
        let v = check_frobenius(&c, FrobeniusOptions::default()).unwrap();
        assert_eq!(v.status, FrobeniusStatus::NoBijectiveE);
        assert_eq!(v.search, Search::Exhaustive);
        assert_eq!(v.candidates, 8);
    }
}
