//! The standard small instances used throughout the tests and shipped with
//! the command-line tool.

use std::sync::Arc;

use crate::algebra::{Algebra, Subalgebra};
use crate::coalgebra::Coalgebra;
use crate::coring::{canonical_coring, CanonicalCoring, Coring};
use crate::entwining::{ComoduleAlgebra, Entwining};
use crate::linalg::{Field, Matrix};

pub const NAMES: [&str; 7] = ["fx_triv", "fx_x2", "fx_mat2", "fx_c2", "fx_taft", "fx_t2dual", "fx_weak2"];

pub fn f2() -> Field {
    Field::prime(2).expect("2 is prime")
}

pub fn f3() -> Field {
    Field::prime(3).expect("3 is prime")
}

/// `C = A = ℚ` with `Δ = ε = id`.
pub fn triv() -> Coring {
    Coring::from_coalgebra(&Coalgebra::ground(Field::Rationals))
}

/// `ℚ[x]/(x²) ⊗_ℚ ℚ[x]/(x²)`.
pub fn x2() -> CanonicalCoring {
    let a = Arc::new(Algebra::truncated_polynomial(Field::Rationals, 2));
    canonical_coring(&Subalgebra::scalars(a).inclusion()).expect("canonical coring")
}

/// `M₂(𝔽₃) ⊗_𝔽₃ M₂(𝔽₃)`.
pub fn mat2() -> CanonicalCoring {
    let a = Arc::new(Algebra::matrix_units(f3(), 2));
    canonical_coring(&Subalgebra::scalars(a).inclusion()).expect("canonical coring")
}

/// `𝔽₃[C₂]` entwined with the grouplike coalgebra on `C₂` by `h⊗u ↦ u⊗hu`.
pub fn c2() -> Entwining {
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
    Entwining::new(a, c, psi).expect("entwining shapes")
}

/// `𝔽₃[C₂]` as a comodule algebra over the grouplike coalgebra, `u ↦ u⊗u`.
pub fn c2_comodule_algebra() -> ComoduleAlgebra {
    let e = c2();
    let f = f3();
    let rho = Matrix::from_fn(f, 4, 2, |r, s| if r == s * 2 + s { f.one() } else { f.zero() });
    ComoduleAlgebra::new(e.algebra.clone(), e.coalgebra.clone(), rho).expect("comodule algebra shapes")
}

/// Basis `g, x` with `g` grouplike and `Δx = x⊗g + g⊗x`.
pub fn taft() -> Coalgebra {
    let q = Field::Rationals;
    let delta = Matrix::from_i64(q, &[&[1, 0], &[0, 1], &[0, 1], &[0, 0]]);
    Coalgebra::from_matrices(delta, vec![q.one(), q.zero()]).expect("coalgebra shapes")
}

/// Upper triangular `2×2` matrices, basis `e₁₁, e₁₂, e₂₂`.
pub fn upper_triangular(f: Field) -> Algebra {
    let unit = vec![f.one(), f.zero(), f.one()];
    // (row, col) of each basis element.
    let pos = [(0, 0), (0, 1), (1, 1)];
    Algebra::from_products(f, 3, unit, |i, j| {
        let (a, b) = pos[i];
        let (c, d) = pos[j];
        let mut v = vec![f.zero(); 3];
        if b == c {
            let k = pos.iter().position(|&p| p == (a, d)).expect("upper triangular");
            v[k] = f.one();
        }
        v
    })
    .expect("upper triangular algebra")
}

pub fn t2dual() -> Coalgebra {
    Coalgebra::dual_of(&upper_triangular(f2()))
}

/// `𝔽₂ × 𝔽₂` with the grouplike coalgebra on two points, entwined by the
/// idempotent that keeps `e₁⊗g` and `e₂⊗h`.
pub fn weak2() -> Entwining {
    let f = f2();
    let a = Arc::new(Algebra::diagonal(f, 2));
    let c = Arc::new(Coalgebra::grouplike(f, 2));
    let psi = Matrix::from_fn(f, 4, 4, |r, s| if r == s && (r == 0 || r == 3) { f.one() } else { f.zero() });
    Entwining::new(a, c, psi).expect("entwining shapes")
}

/// `e_i ↦ e_i ⊗ g_i`, making `weak2`'s algebra a weak comodule algebra.
pub fn weak2_coaction() -> Matrix {
    let f = f2();
    Matrix::from_fn(f, 4, 2, |r, s| if r == s * 3 { f.one() } else { f.zero() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert!(triv().validate().is_valid());
        assert!(x2().coring.validate().is_valid());
        assert!(c2().validate().is_valid());
        assert!(taft().validate().is_valid());
        assert!(upper_triangular(f2()).validate().is_valid());
        assert!(t2dual().validate().is_valid());
        let w = weak2();
        assert!(w.validate_weak().is_valid());
        assert!(w.validate().violates("unit"));
    }
}
