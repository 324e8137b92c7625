use std::sync::Arc;

use super::Coring;
use crate::algebra::{hom_space, Algebra, AlgebraMorphism, Bimodule, Flavor, HomSpace};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// `R = ₐHom(C, A)` with unit `ε_C` and product `(rr')(c) = r'(c₍₁₎·r(c₍₂₎))`.
#[derive(Clone, Debug)]
pub struct DualRing {
    pub hom: HomSpace,
    pub algebra: Arc<Algebra>,
    /// `ι(a) = (c ↦ ε_C(c)a)`.
    pub iota: AlgebraMorphism,
}

impl DualRing {
    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    /// The map `C → A` with coordinates `r`.
    pub fn map(&self, r: &[Scalar]) -> Matrix {
        self.hom.combination(r)
    }

    pub fn coords(&self, f: &Matrix) -> Option<Vec<Scalar>> {
        self.hom.coords(f)
    }

    /// `(a·r)(c) = r(c·a)`.
    pub fn act_left(&self, coring: &Coring, a: &[Scalar], r: &[Scalar]) -> Vec<Scalar> {
        let f = &self.map(r) * &coring.act_right(a);
        self.coords(&f).expect("R is a left A-module")
    }
}

/// The product `(rr')(c) = r'(c₍₁₎·r(c₍₂₎))` on maps `C → A`.
pub fn dual_product(coring: &Coring, r: &Matrix, r2: &Matrix) -> Matrix {
    let n = coring.dim();
    let f = coring.field();
    let lift = coring.lift();
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|c| {
            let mut acc = crate::linalg::vector::zeros(f, coring.dim());
            for idx in 0..n * n {
                let coef = lift.get(idx, c);
                if coef.is_zero() {
                    continue;
                }
                let (i, j) = (idx / n, idx % n);
                let a = r.mul_vec(&coring.basis_vector(j));
                let moved = coring.act_right(&a).column(i);
                crate::linalg::vector::axpy(&mut acc, coef, &moved);
            }
            r2.mul_vec(&acc)
        })
        .collect();
    Matrix::from_columns(f, coring.algebra().dim(), &cols)
}

pub fn dual_ring(coring: &Coring) -> Result<DualRing> {
    let a = coring.algebra();
    let reg = Bimodule::regular(a.clone());
    let hom = hom_space(coring.bimodule(), &reg, Flavor::LeftLinear)?;
    let d = hom.dim();
    let mut mult = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let p = dual_product(coring, &hom.basis[i], &hom.basis[j]);
            mult[i][j] = hom
                .coords(&p)
                .ok_or_else(|| Error::Internal("product of left linear maps left the hom space".into()))?;
        }
    }
    let unit = hom
        .coords(coring.counit())
        .ok_or_else(|| Error::Internal("counit is not left linear".into()))?;
    let algebra = Arc::new(Algebra::new(coring.field(), mult, unit)?);
    let iota_cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| {
            let m = a.right_basis(i) * coring.counit();
            hom.coords(&m).ok_or_else(|| Error::Internal("ι(a) is not left linear".into()))
        })
        .collect::<Result<_>>()?;
    let iota = AlgebraMorphism::new(a.clone(), algebra.clone(), Matrix::from_columns(coring.field(), d, &iota_cols))?;
    if !algebra.validate().is_valid() {
        return Err(Error::Internal("dual ring fails the algebra axioms".into()));
    }
    if !iota.validate().is_valid() {
        return Err(Error::Internal("ι is not an algebra map".into()));
    }
    Ok(DualRing { hom, algebra, iota })
}
