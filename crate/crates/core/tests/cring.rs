mod common;

use std::sync::Arc;

use corings::algebra::{Algebra, Subalgebra};
use corings::coalgebra::{Coalgebra, CoalgebraMorphism};
use corings::coring::canonical_coring;
use corings::cring::*;
use corings::entwining::Entwining;
use corings::error::Error;
use corings::fixtures;
use corings::linalg::{vector, Field, Matrix, Scalar};
use corings::separability::{check_induction_separable, solve_split};

fn flip(c: Arc<Coalgebra>, a: Arc<Algebra>) -> Entwining {
    let f = a.field();
    let (nc, d) = (c.dim(), a.dim());
    // c⊗a ↦ a⊗c
    let psi = Matrix::from_fn(f, d * nc, nc * d, |r, s| if r == (s % d) * nc + s / d { f.one() } else { f.zero() });
    Entwining::new(a, c, psi).unwrap()
}

fn ring_of(a: Algebra) -> CRing {
    CRing::from_algebra(&a).unwrap()
}

#[test]
fn over_the_ground_coalgebra_rings_are_algebras() {
    let f = common::f2();
    let vs = common::f2_vectors(2);
    let mut agree = 0;
    for bits in 0u32..256 {
        let mult: Vec<Vec<Vec<Scalar>>> = (0..2)
            .map(|i| (0..2).map(|j| vs[((bits >> (2 * (i * 2 + j))) & 3) as usize].clone()).collect())
            .collect();
        for unit in &vs {
            let a = Algebra::new(f, mult.clone(), unit.clone()).unwrap();
            let r = ring_of(a.clone());
            assert_eq!(r.validate().unwrap().is_valid(), a.validate().is_valid(), "table {bits} unit {unit:?}");
            agree += 1;
        }
    }
    assert_eq!(agree, 1024);
}

#[test]
fn c2_ring_is_valid_and_roundtrips() {
    let e = fixtures::c2();
    let r = cring_from_entwining(&e).unwrap();
    assert!(r.validate().unwrap().is_valid());
    let back = entwining_from_cring(&r, e.algebra.clone()).unwrap();
    assert_eq!(back.psi, e.psi);
}

#[test]
fn flip_entwining_gives_the_tensor_product() {
    let q = Field::Rationals;
    let c = Arc::new(fixtures::taft());
    let a = Arc::new(Algebra::truncated_polynomial(q, 2));
    let e = flip(c.clone(), a.clone());
    let r = cring_from_entwining(&e).unwrap();
    assert!(r.validate().unwrap().is_valid());
    let (nc, d) = (c.dim(), a.dim());
    // Σ (c₍₁₎⊗a)⊗(c₍₂₎⊗a') ↦ c⊗aa'.
    let mu = r.product_full();
    for k in 0..nc {
        for i in 0..d {
            for j in 0..d {
                let dc = c.comultiply(&vector::unit(q, nc, k));
                let mut x = vector::zeros(q, nc * d * nc * d);
                for (p, coef) in dc.iter().enumerate() {
                    let left = vector::kron(&vector::unit(q, nc, p / nc), &vector::unit(q, d, i));
                    let right = vector::kron(&vector::unit(q, nc, p % nc), &vector::unit(q, d, j));
                    vector::axpy(&mut x, coef, &vector::kron(&left, &right));
                }
                assert!(r.square.contains(&x));
                let expected = vector::kron(&vector::unit(q, nc, k), &a.mul(&a.basis_vector(i), &a.basis_vector(j)));
                assert_eq!(mu.mul_vec(&x), expected);
            }
        }
    }
    let unit = Matrix::identity(q, nc).kron(&Matrix::column_vector(q, a.unit()));
    assert_eq!(r.unit, unit);
}

#[test]
fn doubled_product_breaks_the_unit_law() {
    let q = Field::Rationals;
    let e = flip(Arc::new(fixtures::taft()), Arc::new(Algebra::truncated_polynomial(q, 2)));
    let mut r = cring_from_entwining(&e).unwrap();
    r.product = r.product.scale(&q.from_i64(2));
    let v = r.validate().unwrap();
    assert!(v.violates("left unit"));
    assert!(v.violates("right unit"));
}

#[test]
fn converse_rejects_the_wrong_shape() {
    let c = Arc::new(Coalgebra::grouplike(fixtures::f3(), 2));
    let r = cring_from_surjection(&CoalgebraMorphism::identity(c)).unwrap();
    let a = fixtures::c2().algebra;
    assert!(matches!(entwining_from_cring(&r, a), Err(Error::Precondition(_))));
}

#[test]
fn rings_from_surjections() {
    let f3 = fixtures::f3();
    let c = Arc::new(Coalgebra::grouplike(f3, 2));
    let id = cring_from_surjection(&CoalgebraMorphism::identity(c.clone())).unwrap();
    assert_eq!(id.dim(), 2);
    let eps = cring_from_surjection(&CoalgebraMorphism::counit(c.clone())).unwrap();
    assert_eq!(eps.dim(), 4);
    assert!(eps.validate().unwrap().is_valid());

    let taft = Arc::new(fixtures::taft());
    let r = cring_from_surjection(&CoalgebraMorphism::counit(taft.clone())).unwrap();
    assert_eq!(r.dim(), 4);
    let r = cring_from_surjection(&CoalgebraMorphism::identity(taft)).unwrap();
    assert_eq!(r.dim(), 2);
}

#[test]
fn surjection_preconditions() {
    let f3 = fixtures::f3();
    let c = Arc::new(Coalgebra::grouplike(f3, 2));
    let not_onto = CoalgebraMorphism::new(c.clone(), c.clone(), Matrix::from_i64(f3, &[&[1, 1], &[0, 0]])).unwrap();
    assert!(matches!(cring_from_surjection(&not_onto), Err(Error::Precondition(_))));
    let swap_scaled = CoalgebraMorphism::new(c.clone(), c, Matrix::from_i64(f3, &[&[0, 2], &[2, 0]])).unwrap();
    assert!(matches!(cring_from_surjection(&swap_scaled), Err(Error::Precondition(_))));
}

#[test]
fn dual_induction_separability() {
    let q = Field::Rationals;
    for a in [Algebra::diagonal(q, 2), Algebra::truncated_polynomial(q, 2)] {
        let r = ring_of(a);
        let e = check_dual_induction_separable(&r).unwrap().expect("e(1) = 1 is always solvable");
        assert!(is_dual_induction_certificate(&r, &e.e));
    }
    let c = Arc::new(fixtures::taft());
    let id = CoalgebraMorphism::identity(c.clone());
    let r = cring_from_surjection(&id).unwrap();
    let found = check_dual_induction_separable(&r).unwrap().unwrap();
    assert!(is_dual_induction_certificate(&r, &found.e));
    // ε ⊗ ε on C □_C C.
    let eps = c.counit_row();
    let collapse = &eps.kron(&eps) * surjection_space(&id).unwrap().inclusion();
    assert!(is_dual_induction_certificate(&r, &collapse));
}

#[test]
fn dual_forgetful_separability() {
    let r = ring_of(Algebra::matrix_units(fixtures::f3(), 2));
    let g = check_dual_forgetful_separable(&r).unwrap().unwrap();
    assert!(is_dual_cointegral(&r, &g.gamma));
    let r = ring_of(Algebra::truncated_polynomial(Field::Rationals, 2));
    let w = check_dual_forgetful_separable(&r).unwrap().unwrap_err();
    assert!(w.augmented_rank > w.rank);

    let c = Arc::new(fixtures::taft());
    let r = cring_from_surjection(&CoalgebraMorphism::identity(c.clone())).unwrap();
    // γ = (η ⊗ η)∘Δ.
    let gamma = r.square.corestrict(&(&r.unit.kron(&r.unit) * c.delta())).unwrap();
    assert!(is_dual_cointegral(&r, &gamma));
    assert!(check_dual_forgetful_separable(&r).unwrap().is_ok());
}

#[test]
fn ground_coalgebra_verdicts_match_algebra_separability() {
    let mut algebras: Vec<Arc<Algebra>> = common::f2_algebras();
    algebras.push(Arc::new(Algebra::truncated_polynomial(Field::Rationals, 2)));
    algebras.push(Arc::new(Algebra::matrix_units(fixtures::f3(), 2)));
    algebras.push(Arc::new(fixtures::upper_triangular(fixtures::f2())));
    for a in algebras {
        let r = ring_of((*a).clone());
        let ext = Subalgebra::scalars(a.clone()).inclusion();
        let separable = check_induction_separable(&canonical_coring(&ext).unwrap().coring).unwrap().is_ok();
        let split = solve_split(&ext).unwrap().is_ok();
        assert_eq!(check_dual_forgetful_separable(&r).unwrap().is_ok(), separable);
        assert_eq!(check_dual_induction_separable(&r).unwrap().is_ok(), split);
    }
}

#[test]
fn coideal_of_c2_ring() {
    let e = fixtures::c2();
    let f = e.field();
    let r = cring_from_entwining(&e).unwrap();
    // κ(c⊗a) = ε(c)·(sum of the coefficients of a).
    let kappa: Vec<Scalar> = (0..4).map(|_| f.one()).collect();
    let out = invariants_coideal(&r, &kappa).unwrap();
    // κ(a₍₀₎)a₍₁₎ − a₍₋₁₎κ(a₍₀₎) on h⊗u is hu − h.
    let oracle: Vec<Vec<Scalar>> = (0..4)
        .map(|s| {
            let (h, u) = (s / 2, s % 2);
            vector::sub(&vector::unit(f, 2, (h + u) % 2), &vector::unit(f, 2, h))
        })
        .collect();
    let oracle = corings::linalg::Subspace::span(f, 2, &oracle);
    assert!(out.coideal.same_as(&oracle));
    assert_eq!(out.quotient.dim(), 1);
    assert!(out.quotient.validate().is_valid());
    assert!(out.module_valid);
}

#[test]
fn trivial_coideals() {
    let c = Arc::new(fixtures::taft());
    let id = CoalgebraMorphism::identity(c.clone());
    let r = cring_from_surjection(&id).unwrap();
    let eps = c.counit_row();
    let kappa = (&eps.kron(&eps) * surjection_space(&id).unwrap().inclusion()).row(0).to_vec();
    let out = invariants_coideal(&r, &kappa).unwrap();
    assert_eq!(out.coideal.dim(), 0);
    assert_eq!(out.quotient.dim(), c.dim());
    assert!(out.module_valid);

    let q = Field::Rationals;
    let r = ring_of(Algebra::diagonal(q, 2));
    let out = invariants_coideal(&r, &[q.one(), q.zero()]).unwrap();
    assert_eq!(out.coideal.dim(), 0);
    assert!(out.module_valid);
}

#[test]
fn character_must_be_unital() {
    let q = Field::Rationals;
    let r = ring_of(Algebra::diagonal(q, 2));
    assert!(matches!(invariants_coideal(&r, &[q.zero(), q.zero()]), Err(Error::Precondition(_))));
}
