//! Separability of the induction functor `- ⊗_A C` and of the forgetful
//! functor from comodules, with witnesses in both directions.
//!
//! Positive answers return the rref-canonical point of the certificate space
//! together with that space's dimension; negative answers return the rank
//! witness of the inconsistent system.

use crate::algebra::{dual_basis_projectivity, AlgebraMorphism, BalancedTensor, Bimodule};
use crate::coring::{canonical_coring, CanonicalCoring, Coring, CoringComodule};
use crate::error::{Error, Result};
use crate::linalg::{vector, LinearSystem, Matrix, RankWitness, Scalar, Term};
use crate::validation::Validation;

/// A feasible certificate or the rank witness of infeasibility.
pub type Decision<T> = std::result::Result<T, RankWitness>;

/// An invariant `e ∈ C^A` with `ε(e) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionCertificate {
    pub e: Vec<Scalar>,
    /// Dimension of the affine space of all such `e`.
    pub solution_dim: usize,
}

/// A bilinear `γ: C⊗_A C → A` with `γ∘Δ = ε` and
/// `c₍₁₎·γ(c₍₂₎⊗c') = γ(c⊗c'₍₁₎)·c'₍₂₎`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cointegral {
    /// `dim A × dim(C⊗_A C)`.
    pub gamma: Matrix,
    pub solution_dim: usize,
}

/// A bicomodule retraction `π: C⊗_A C → C` of the coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosepIdempotent {
    pub pi: Matrix,
}

/// Nonzero entries of column `col` of a lift into `C ⊗_k C`, as `(i, j, coef)`.
fn lift_terms(c: &Coring, col: usize) -> Vec<(usize, usize, Scalar)> {
    let n = c.dim();
    (0..n * n)
        .filter_map(|r| {
            let x = c.lift().get(r, col);
            (!x.is_zero()).then(|| (r / n, r % n, x.clone()))
        })
        .collect()
}

/// `table[i][j]` is the class of `cᵢ ⊗_A cⱼ`.
fn square_table(c: &Coring) -> Vec<Vec<Vec<Scalar>>> {
    let n = c.dim();
    let sq = c.square();
    (0..n)
        .map(|i| (0..n).map(|j| sq.element(&c.basis_vector(i), &c.basis_vector(j))).collect())
        .collect()
}

pub fn check_induction_separable(c: &Coring) -> Result<Decision<InductionCertificate>> {
    let f = c.field();
    let a = c.algebra();
    let bm = c.bimodule();
    let mut eqs = Matrix::zeros(f, 0, c.dim());
    for i in 0..a.dim() {
        eqs = eqs.vstack(&(bm.left_basis(i) - bm.right_basis(i)));
    }
    eqs = eqs.vstack(c.counit());
    let mut rhs = vector::zeros(f, eqs.rows() - a.dim());
    rhs.extend_from_slice(a.unit());
    let sol = match eqs.solve_or_witness(&rhs)? {
        Ok(s) => s,
        Err(w) => return Ok(Err(w)),
    };
    let cert = InductionCertificate {
        e: sol.particular,
        solution_dim: sol.kernel.len(),
    };
    if !is_induction_certificate(c, &cert.e) {
        return Err(Error::Internal("solved invariant fails its constraints".into()));
    }
    Ok(Ok(cert))
}

/// `a·e = e·a` for every basis `a`, and `ε(e) = 1`.
pub fn is_induction_certificate(c: &Coring, e: &[Scalar]) -> bool {
    let bm = c.bimodule();
    (0..c.algebra().dim()).all(|i| bm.left_basis(i).mul_vec(e) == bm.right_basis(i).mul_vec(e)) && c.epsilon(e) == c.algebra().unit()
}

/// `ν_M(m) = m ⊗_A e` for a right `A`-module `M`, with its tensor.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub tensor: BalancedTensor,
    /// `M → M ⊗_A C`.
    pub nu: Matrix,
    /// `M ⊗_A ε: M ⊗_A C → M`.
    pub psi: Matrix,
}

/// Builds `ν_M` and checks `Ψ_M∘ν_M = id` and right linearity.
pub fn build_nu_from_e(c: &Coring, cert: &InductionCertificate, m: &Bimodule) -> Result<Retraction> {
    if *m.right_algebra != **c.algebra() || m.left_algebra.dim() != 1 {
        return Err(Error::Malformed("expected a right module over the coring's algebra".into()));
    }
    let f = c.field();
    let t = BalancedTensor::new(m, c.bimodule())?;
    let cols: Vec<Vec<Scalar>> = (0..m.dim()).map(|i| t.element(&m.basis_vector(i), &cert.e)).collect();
    let nu = Matrix::from_columns(f, t.dim(), &cols);
    let n = c.dim();
    let acts: Vec<Matrix> = (0..n).map(|s| m.act_right(&c.counit().column(s))).collect();
    let full = Matrix::from_fn(f, m.dim(), m.dim() * n, |r, col| acts[col % n].get(r, col / n).clone());
    let psi = t
        .factor(&full)
        .ok_or_else(|| Error::Internal("M ⊗ ε does not factor through the balanced tensor".into()))?;
    if !(&psi * &nu).is_identity() {
        return Err(Error::Internal("Ψ∘ν is not the identity".into()));
    }
    if !m.is_right_linear(t.module(), &nu) {
        return Err(Error::Internal("ν is not right A-linear".into()));
    }
    Ok(Retraction { tensor: t, nu, psi })
}

/// `ν_N∘f = (f ⊗_A C)∘ν_M` for a right-linear `f: M → N`.
pub fn nu_is_natural(c: &Coring, source: &Retraction, target: &Retraction, f: &Matrix) -> bool {
    let id = Matrix::identity(c.field(), c.dim());
    let fc = source.tensor.map_to(&target.tensor, f, &id);
    &target.nu * f == &fc * &source.nu
}

pub fn check_forgetful_separable(c: &Coring) -> Result<Decision<Cointegral>> {
    let f = c.field();
    let a = c.algebra();
    let (ad, n) = (a.dim(), c.dim());
    let sq = c.square();
    let q = sq.dim();
    let sqm = sq.module();
    let (blocks, vars) = LinearSystem::layout(&[(ad, q)]);
    let g = blocks[0];
    let mut sys = LinearSystem::new(f, vars);
    for i in 0..ad {
        sys.add_matrix_equation(
            &[Term::new(g, None, Some(sqm.left_basis(i))), Term::new(g, Some(a.left_basis(i)), None).negated()],
            None,
        );
        sys.add_matrix_equation(
            &[Term::new(g, None, Some(sqm.right_basis(i))), Term::new(g, Some(a.right_basis(i)), None).negated()],
            None,
        );
    }
    let delta = c.coproduct();
    sys.add_matrix_equation(&[Term::new(g, None, Some(&delta))], Some(c.counit()));

    // c₍₁₎·γ(c₍₂₎⊗c') − γ(c⊗c'₍₁₎)·c'₍₂₎, linear in the entries γ[k][s].
    let table = square_table(c);
    let lifts: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| lift_terms(c, i)).collect();
    let bm = c.bimodule();
    for i0 in 0..n {
        for j0 in 0..n {
            let mut coef = Matrix::zeros(f, n, vars);
            for (i, j, d) in &lifts[i0] {
                let x = &table[*j][j0];
                for (s, xs) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let w = d * xs;
                    for k in 0..ad {
                        let col = bm.right_basis(k).column(*i);
                        for (r, v) in col.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            coef.add_at(r, g.var(k, s), &(&w * v));
                        }
                    }
                }
            }
            for (i, j, d) in &lifts[j0] {
                let x = &table[i0][*i];
                for (s, xs) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let w = -(d * xs);
                    for k in 0..ad {
                        let col = bm.left_basis(k).column(*j);
                        for (r, v) in col.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            coef.add_at(r, g.var(k, s), &(&w * v));
                        }
                    }
                }
            }
            for r in 0..n {
                let row = coef.row(r);
                if row.iter().any(|v| !v.is_zero()) {
                    sys.add_equation(row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(v, x)| (v, x.clone())), f.zero());
                }
            }
        }
    }
    let sol = match sys.solve() {
        Ok(s) => s,
        Err(w) => return Ok(Err(w)),
    };
    let gamma = g.extract(f, &sol.particular);
    let v = validate_cointegral(c, &gamma);
    if !v.is_valid() {
        return Err(Error::Internal(format!("solved cointegral fails its constraints: {v}")));
    }
    Ok(Ok(Cointegral {
        gamma,
        solution_dim: sol.kernel.len(),
    }))
}

/// Checks a candidate `γ` directly, independently of the assembled system.
pub fn validate_cointegral(c: &Coring, gamma: &Matrix) -> Validation {
    let mut v = Validation::new();
    let a = c.algebra();
    let n = c.dim();
    let sq = c.square();
    if gamma.rows() != a.dim() || gamma.cols() != sq.dim() {
        v.violate("shape", format!("{}x{}", gamma.rows(), gamma.cols()));
        return v;
    }
    let sqm = sq.module();
    for i in 0..a.dim() {
        v.check(gamma * sqm.left_basis(i) == a.left_basis(i) * gamma, "left linearity", || format!("a{i}"));
        v.check(gamma * sqm.right_basis(i) == a.right_basis(i) * gamma, "right linearity", || format!("a{i}"));
    }
    let gd = gamma * &c.coproduct();
    for col in 0..n {
        v.check(gd.column(col) == c.counit().column(col), "counit", || format!("c{col}"));
    }
    let table = square_table(c);
    let bm = c.bimodule();
    let f = c.field();
    for i0 in 0..n {
        for j0 in 0..n {
            let mut lhs = vector::zeros(f, n);
            for (i, j, d) in lift_terms(c, i0) {
                let g = gamma.mul_vec(&table[j][j0]);
                vector::axpy(&mut lhs, &d, &bm.act_right(&g).column(i));
            }
            let mut rhs = vector::zeros(f, n);
            for (i, j, d) in lift_terms(c, j0) {
                let g = gamma.mul_vec(&table[i0][i]);
                vector::axpy(&mut rhs, &d, &bm.act_left(&g).column(j));
            }
            v.check(lhs == rhs, "balanced coproduct identity", || format!("(c{i0}, c{j0})"));
        }
    }
    v
}

/// `π(c⊗c') = c₍₁₎·γ(c₍₂₎⊗c')`, verified against the retraction identities.
pub fn cosep_idempotent(c: &Coring, gamma: &Cointegral) -> Result<CosepIdempotent> {
    let f = c.field();
    let n = c.dim();
    let sq = c.square();
    let table = square_table(c);
    let bm = c.bimodule();
    let cols: Vec<Vec<Scalar>> = sq
        .free_coordinates()
        .iter()
        .map(|&fc| {
            let (i0, j0) = (fc / n, fc % n);
            let mut out = vector::zeros(f, n);
            for (i, j, d) in lift_terms(c, i0) {
                let g = gamma.gamma.mul_vec(&table[j][j0]);
                vector::axpy(&mut out, &d, &bm.act_right(&g).column(i));
            }
            out
        })
        .collect();
    let pi = Matrix::from_columns(f, n, &cols);
    let v = validate_cosep(c, &pi);
    if !v.is_valid() {
        return Err(Error::Internal(format!("retraction fails: {v}")));
    }
    Ok(CosepIdempotent { pi })
}

/// `π∘Δ = id`, `Δ∘π = (C⊗π)(Δ⊗C) = (π⊗C)(C⊗Δ)`, and bilinearity.
pub fn validate_cosep(c: &Coring, pi: &Matrix) -> Validation {
    let mut v = Validation::new();
    let f = c.field();
    let n = c.dim();
    let sq = c.square();
    let delta = c.coproduct();
    v.check((pi * &delta).is_identity(), "retraction", || "π∘Δ".into());
    let table = square_table(c);
    let dp = &delta * pi;
    let mut right_cols = Vec::new();
    let mut left_cols = Vec::new();
    for &fc in sq.free_coordinates() {
        let (i0, j0) = (fc / n, fc % n);
        let mut r = vector::zeros(f, sq.dim());
        for (i, j, d) in lift_terms(c, i0) {
            let p = pi.mul_vec(&table[j][j0]);
            vector::axpy(&mut r, &d, &sq.element(&c.basis_vector(i), &p));
        }
        right_cols.push(r);
        let mut l = vector::zeros(f, sq.dim());
        for (i, j, d) in lift_terms(c, j0) {
            let p = pi.mul_vec(&table[i0][i]);
            vector::axpy(&mut l, &d, &sq.element(&p, &c.basis_vector(j)));
        }
        left_cols.push(l);
    }
    let right = Matrix::from_columns(f, sq.dim(), &right_cols);
    let left = Matrix::from_columns(f, sq.dim(), &left_cols);
    v.check(dp == right, "right colinearity", || "Δ∘π vs (C⊗π)(Δ⊗C)".into());
    v.check(dp == left, "left colinearity", || "Δ∘π vs (π⊗C)(C⊗Δ)".into());
    let (sqm, bm) = (sq.module(), c.bimodule());
    for i in 0..c.algebra().dim() {
        v.check(pi * sqm.left_basis(i) == bm.left_basis(i) * pi, "left linearity", || format!("a{i}"));
        v.check(pi * sqm.right_basis(i) == bm.right_basis(i) * pi, "right linearity", || format!("a{i}"));
    }
    v
}

/// A separability idempotent `Σ aᵢ ⊗_B a'ᵢ` of an extension.
#[derive(Clone, Debug)]
pub struct SeparabilityIdempotent {
    pub certificate: InductionCertificate,
    /// Representative terms `(aᵢ, a'ᵢ)` with `Σ aᵢa'ᵢ = 1`.
    pub terms: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

/// A `B`-bilinear retraction `E: A → B` of the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMap {
    /// `dim B × dim A`.
    pub e: Matrix,
    pub solution_dim: usize,
}

#[derive(Clone, Debug)]
pub struct ExtensionAnalysis {
    pub canonical: CanonicalCoring,
    pub separable: Decision<SeparabilityIdempotent>,
    pub split: Decision<SplitMap>,
    pub cointegral: Decision<Cointegral>,
    /// `A` is projective as a left `B`-module and `B` is a left direct
    /// summand, so `A` is faithfully flat and split ⇔ cointegral holds.
    pub flat_sufficient: bool,
}

impl ExtensionAnalysis {
    /// Split and cointegral verdicts agree, with equal solution dimensions.
    pub fn split_matches_cointegral(&self) -> bool {
        match (&self.split, &self.cointegral) {
            (Ok(s), Ok(g)) => s.solution_dim == g.solution_dim,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }
}

pub fn analyze_extension(ext: &AlgebraMorphism) -> Result<ExtensionAnalysis> {
    let canonical = canonical_coring(ext)?;
    let a = &ext.target;
    let separable = match check_induction_separable(&canonical.coring)? {
        Err(w) => Err(w),
        Ok(cert) => {
            let full = canonical.tensor.section().mul_vec(&cert.e);
            if a.mult_matrix().mul_vec(&full) != a.unit() {
                return Err(Error::Internal("separability idempotent does not multiply to 1".into()));
            }
            let d = a.dim();
            let terms = full
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(r, x)| (vector::scale(&a.basis_vector(r / d), x), a.basis_vector(r % d)))
                .collect();
            Ok(SeparabilityIdempotent { certificate: cert, terms })
        }
    };
    let split = solve_split(ext)?;
    let cointegral = check_forgetful_separable(&canonical.coring)?;
    if let Ok(s) = &split {
        let gamma = gamma_from_split(&canonical, &s.e);
        let v = validate_cointegral(&canonical.coring, &gamma);
        if !v.is_valid() {
            return Err(Error::Internal(format!("γ built from E fails: {v}")));
        }
    }
    let flat_sufficient = faithful_flatness_sufficient(ext)?;
    let out = ExtensionAnalysis {
        canonical,
        separable,
        split,
        cointegral,
        flat_sufficient,
    };
    if out.flat_sufficient && !out.split_matches_cointegral() {
        return Err(Error::Internal("split and cointegral verdicts disagree over a faithfully flat extension".into()));
    }
    Ok(out)
}

/// Solves for `E: A → B`, `B`-bilinear with `E(1) = 1`.
pub fn solve_split(ext: &AlgebraMorphism) -> Result<Decision<SplitMap>> {
    let (b, a) = (&ext.source, &ext.target);
    let f = a.field();
    let (blocks, vars) = LinearSystem::layout(&[(b.dim(), a.dim())]);
    let x = blocks[0];
    let mut sys = LinearSystem::new(f, vars);
    let muls: Vec<(Matrix, Matrix)> = (0..b.dim())
        .map(|i| {
            let img = ext.matrix.column(i);
            (a.left_mul(&img), a.right_mul(&img))
        })
        .collect();
    for (i, (l, r)) in muls.iter().enumerate() {
        sys.add_matrix_equation(&[Term::new(x, None, Some(l)), Term::new(x, Some(b.left_basis(i)), None).negated()], None);
        sys.add_matrix_equation(&[Term::new(x, None, Some(r)), Term::new(x, Some(b.right_basis(i)), None).negated()], None);
    }
    let unit = Matrix::column_vector(f, a.unit());
    sys.add_matrix_equation(&[Term::new(x, None, Some(&unit))], Some(&Matrix::column_vector(f, b.unit())));
    let sol = match sys.solve() {
        Ok(s) => s,
        Err(w) => return Ok(Err(w)),
    };
    let e = x.extract(f, &sol.particular);
    if !(&e * &ext.matrix).is_identity() {
        return Err(Error::Internal("E does not retract the extension".into()));
    }
    Ok(Ok(SplitMap {
        e,
        solution_dim: sol.kernel.len(),
    }))
}

/// `γ(a⊗a'⊗a'') = a·E(a')·a''` on `(A⊗_B A)⊗_A(A⊗_B A)`, with `E: A → B`.
pub fn gamma_from_split(cc: &CanonicalCoring, e: &Matrix) -> Matrix {
    let a = cc.coring.algebra();
    let f = a.field();
    let d = a.dim();
    let n = cc.coring.dim();
    let frees = cc.tensor.free_coordinates();
    let ea = &cc.extension.matrix * e;
    let cols: Vec<Vec<Scalar>> = cc
        .coring
        .square()
        .free_coordinates()
        .iter()
        .map(|&fc| {
            let (p, r) = (frees[fc / n], frees[fc % n]);
            let (i, j) = (p / d, p % d);
            let (k, l) = (r / d, r % d);
            let mid = ea.mul_vec(a.product(j, k));
            a.mul(&a.mul(&a.basis_vector(i), &mid), &a.basis_vector(l))
        })
        .collect();
    Matrix::from_columns(f, d, &cols)
}

/// `E(a) = γ(1⊗a⊗1)` read back in `A`.
pub fn split_from_gamma(cc: &CanonicalCoring, gamma: &Matrix) -> Matrix {
    let a = cc.coring.algebra();
    let one = a.unit();
    let sq = cc.coring.square();
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|j| {
            let x = sq.element(&cc.element(one, &a.basis_vector(j)), &cc.one());
            gamma.mul_vec(&x)
        })
        .collect();
    Matrix::from_columns(a.field(), a.dim(), &cols)
}

/// `A` is a projective left `B`-module and `B → A` has a left `B`-linear
/// retraction. Together these make `A` faithfully flat over `B`.
pub fn faithful_flatness_sufficient(ext: &AlgebraMorphism) -> Result<bool> {
    let reg = Bimodule::regular(ext.target.clone());
    let left = reg.restrict_left(ext)?.left_part();
    if dual_basis_projectivity(&left).is_err() {
        return Ok(false);
    }
    Ok(solve_split(ext)?.is_ok())
}

/// Averages a right-linear section `s` of a comodule epimorphism `f: M → N`
/// into a comodule section `ν_M∘(s⊗C)∘ρ^N`.
pub fn maschke_split(c: &Coring, gamma: &Cointegral, m: &CoringComodule, n: &CoringComodule, f: &Matrix, s: &Matrix) -> Result<Matrix> {
    let field = c.field();
    if f.rows() != n.dim() || f.cols() != m.dim() || s.rows() != m.dim() || s.cols() != n.dim() {
        return Err(Error::Malformed("map shapes do not match the comodules".into()));
    }
    let mut problems = Vec::new();
    if !(f * s).is_identity() {
        problems.push("f∘s is not the identity");
    }
    if !m.is_comodule_map(n, f) {
        problems.push("f is not a comodule map");
    }
    if !n.module.is_right_linear(&m.module, s) {
        problems.push("s is not right A-linear");
    }
    if !problems.is_empty() {
        return Err(Error::Precondition(problems.join("; ")));
    }
    let cn = c.dim();
    let table = square_table(c);
    let md = m.dim();
    // ν_M on a lifted m_μ ⊗ c_t.
    let nu = |mu: usize, t: usize| -> Vec<Scalar> {
        let mut out = vector::zeros(field, md);
        for r in 0..md * cn {
            let d = m.lift().get(r, mu);
            if d.is_zero() {
                continue;
            }
            let (mu2, t2) = (r / cn, r % cn);
            let g = gamma.gamma.mul_vec(&table[t2][t]);
            let v = m.module.act_right(&g).column(mu2);
            vector::axpy(&mut out, d, &v);
        }
        out
    };
    let cols: Vec<Vec<Scalar>> = (0..n.dim())
        .map(|col| {
            let mut out = vector::zeros(field, md);
            for r in 0..n.dim() * cn {
                let d = n.lift().get(r, col);
                if d.is_zero() {
                    continue;
                }
                let (nu_i, t) = (r / cn, r % cn);
                let sm = s.column(nu_i);
                for (mu, x) in sm.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    vector::axpy(&mut out, &(d * x), &nu(mu, t));
                }
            }
            out
        })
        .collect();
    let st = Matrix::from_columns(field, md, &cols);
    if !(f * &st).is_identity() {
        return Err(Error::Internal("averaged section is not a section".into()));
    }
    if !n.is_comodule_map(m, &st) {
        return Err(Error::Internal("averaged section is not a comodule map".into()));
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Subalgebra};
    use crate::coalgebra::Coalgebra;
    use crate::linalg::Field;
    use std::sync::Arc;

    fn x2() -> CanonicalCoring {
        let a = Arc::new(Algebra::truncated_polynomial(Field::Rationals, 2));
        canonical_coring(&Subalgebra::scalars(a).inclusion()).unwrap()
    }

    #[test]
    fn trivial_coring() {
        let c = Coring::from_coalgebra(&Coalgebra::ground(Field::Rationals));
        let e = check_induction_separable(&c).unwrap().unwrap();
        assert_eq!(e.e, vec![Field::Rationals.one()]);
        let g = check_forgetful_separable(&c).unwrap().unwrap();
        assert!(g.gamma.is_identity());
        let p = cosep_idempotent(&c, &g).unwrap();
        assert!(p.pi.is_identity());
    }

    #[test]
    fn dual_numbers_not_separable_but_split() {
        let cc = x2();
        let w = check_induction_separable(&cc.coring).unwrap().unwrap_err();
        assert_eq!(w.augmented_rank, w.rank + 1);
        let g = check_forgetful_separable(&cc.coring).unwrap().unwrap();
        let e = split_from_gamma(&cc, &g.gamma);
        let q = Field::Rationals;
        assert_eq!(e, Matrix::from_i64(q, &[&[1, 0], &[0, 0]]));
        let p = cosep_idempotent(&cc.coring, &g).unwrap();
        assert!((&p.pi * &cc.coring.coproduct()).is_identity());
    }

    #[test]
    fn maschke_on_dual_numbers() {
        let cc = x2();
        let c = &cc.coring;
        let g = check_forgetful_separable(c).unwrap().unwrap();
        let n = crate::galois::comodule_from_grouplike(c, &cc.one()).unwrap();
        let m = c.regular_comodule();
        // f(a⊗a') = E(a)a' with E(1) = 1, E(x) = 0; s(a) = 1⊗a.
        let a = c.algebra();
        let q = a.field();
        let ea = Matrix::from_i64(q, &[&[1, 0], &[0, 0]]);
        let fcols: Vec<Vec<Scalar>> = cc
            .tensor
            .free_coordinates()
            .iter()
            .map(|&p| a.mul(&ea.column(p / 2), &a.basis_vector(p % 2)))
            .collect();
        let f = Matrix::from_columns(q, 2, &fcols);
        let scols: Vec<Vec<Scalar>> = (0..2).map(|i| cc.element(a.unit(), &a.basis_vector(i))).collect();
        let s = Matrix::from_columns(q, 4, &scols);
        let st = maschke_split(c, &g, &m, &n, &f, &s).unwrap();
        assert!((&f * &st).is_identity());
    }
}
