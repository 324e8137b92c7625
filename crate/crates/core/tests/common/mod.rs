#![allow(dead_code)]

use std::sync::Arc;

use corings::algebra::{hom_space, Algebra, BalancedTensor, Bimodule, Flavor};
use corings::coring::Coring;
use corings::linalg::{Field, Matrix, Scalar};

pub fn f2() -> Field {
    Field::prime(2).unwrap()
}

/// Every vector over 𝔽₂ of length `n`.
pub fn f2_vectors(n: usize) -> Vec<Vec<Scalar>> {
    let f = f2();
    (0..1u32 << n)
        .map(|bits| (0..n).map(|i| if bits >> i & 1 == 1 { f.one() } else { f.zero() }).collect())
        .collect()
}

/// Every `rows × cols` matrix over 𝔽₂.
pub fn f2_matrices(rows: usize, cols: usize) -> Vec<Matrix> {
    let f = f2();
    f2_vectors(rows * cols)
        .into_iter()
        .map(|v| Matrix::from_fn(f, rows, cols, |r, c| v[r * cols + c].clone()))
        .collect()
}

/// `𝔽₂` and the four algebras `𝔽₂[x]/(x² − αx − β)` on the basis `1, x`.
pub fn f2_algebras() -> Vec<Arc<Algebra>> {
    let f = f2();
    let mut out = vec![Arc::new(Algebra::ground(f))];
    for (alpha, beta) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let a = Algebra::from_products(f, 2, vec![f.one(), f.zero()], |i, j| match (i, j) {
            (0, k) | (k, 0) => (0..2).map(|t| if t == k { f.one() } else { f.zero() }).collect(),
            _ => vec![f.from_i64(beta), f.from_i64(alpha)],
        })
        .unwrap();
        out.push(Arc::new(a));
    }
    out
}

/// All `(A, A)`-bimodules of dimension `n` over an algebra from
/// [`f2_algebras`], by brute force over the action of `x`.
pub fn f2_bimodules(a: &Arc<Algebra>, n: usize) -> Vec<Bimodule> {
    let f = f2();
    let id = Matrix::identity(f, n);
    if a.dim() == 1 {
        return vec![Bimodule::new(a.clone(), a.clone(), n, vec![id.clone()], vec![id]).unwrap()];
    }
    let mats = f2_matrices(n, n);
    let mut out = Vec::new();
    for x in &mats {
        for y in &mats {
            let m = Bimodule::new(a.clone(), a.clone(), n, vec![id.clone(), x.clone()], vec![id.clone(), y.clone()]).unwrap();
            if m.validate().is_valid() {
                out.push(m);
            }
        }
    }
    out
}

/// Every valid coring over 𝔽₂ with `dim A ≤ 2` and `dim C ≤ 2`.
pub fn f2_corings() -> Vec<Coring> {
    let mut out = Vec::new();
    for a in f2_algebras() {
        let reg = Bimodule::regular(a.clone());
        for n in 1..=2 {
            for c in f2_bimodules(&a, n) {
                let sq = BalancedTensor::new(&c, &c).unwrap();
                let eps = hom_space(&c, &reg, Flavor::Bilinear).unwrap();
                let delta = hom_space(&c, sq.module(), Flavor::Bilinear).unwrap();
                let section = sq.section();
                for ec in f2_vectors(eps.dim()) {
                    let e = eps.combination(&ec);
                    if ec.is_empty() {
                        continue;
                    }
                    for dc in f2_vectors(delta.dim()) {
                        if dc.is_empty() {
                            continue;
                        }
                        let d = delta.combination(&dc);
                        let coring = Coring::new(c.clone(), &section * &d, e.clone()).unwrap();
                        if coring.validate().is_valid() {
                            out.push(coring);
                        }
                    }
                }
            }
        }
    }
    out
}
