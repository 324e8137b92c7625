mod common;

use std::sync::Arc;

use corings::algebra::{Algebra, AlgebraMorphism, Subalgebra};
use corings::coalgebra::Coalgebra;
use corings::coring::{dual_ring, Coring};
use corings::fixtures;
use corings::frobenius::*;
use corings::linalg::{vector, Field, Matrix};
use corings::galois::comodule_from_grouplike;

#[test]
fn trivial_coring_over_f2() {
    let c = Coring::from_coalgebra(&Coalgebra::ground(common::f2()));
    let v = check_frobenius(&c, FrobeniusOptions::default()).unwrap();
    assert_eq!(v.status, FrobeniusStatus::Frobenius);
    assert_eq!(v.e.unwrap(), vec![common::f2().one()]);
    assert!(v.phi.unwrap().is_identity());
}

#[test]
fn dual_numbers_inverse_formula() {
    let cc = fixtures::x2();
    let v = check_frobenius(&cc.coring, FrobeniusOptions::default()).unwrap();
    assert_eq!(v.status, FrobeniusStatus::Frobenius);
    let dual = v.dual.as_ref().unwrap();
    // E = coefficient of x.
    let e = Matrix::from_i64(Field::Rationals, &[&[0, 1]]);
    let formula = frobenius_phi_inverse(&cc, dual, &e).unwrap();
    assert_eq!(&formula, v.phi_inverse.as_ref().unwrap());
    assert!(theta_is_isomorphism(&cc.coring, dual, v.e.as_ref().unwrap()));
}

#[test]
fn matrix_coring_is_frobenius() {
    let cc = fixtures::mat2();
    let v = check_frobenius(&cc.coring, FrobeniusOptions::default()).unwrap();
    assert_eq!(v.status, FrobeniusStatus::Frobenius);
    assert_eq!(v.search, Search::Exhaustive);
    assert!(theta_is_isomorphism(&cc.coring, v.dual.as_ref().unwrap(), v.e.as_ref().unwrap()));
}

/// A finite-dimensional algebra is Frobenius iff some functional `λ` makes
/// `(x, y) ↦ λ(xy)` nondegenerate.
fn has_frobenius_form(a: &Algebra) -> bool {
    common::f2_vectors(a.dim()).iter().any(|l| {
        let form = Matrix::from_fn(a.field(), a.dim(), a.dim(), |i, j| vector::dot(l, a.product(i, j)));
        form.is_invertible()
    })
}

#[test]
fn upper_triangular_dual_has_no_bijective_e() {
    let t2 = fixtures::upper_triangular(common::f2());
    assert!(!has_frobenius_form(&t2));
    let c = Coring::from_coalgebra(&fixtures::t2dual());
    let v = check_frobenius(&c, FrobeniusOptions::default()).unwrap();
    assert_eq!(v.status, FrobeniusStatus::NoBijectiveE);
    assert_eq!(v.candidates, 8);
    assert!(!v.is_probabilistic());
}

#[test]
fn rational_upper_triangular_decided_by_grid() {
    let q = Field::Rationals;
    let c = Coring::from_coalgebra(&Coalgebra::dual_of(&fixtures::upper_triangular(q)));
    let opts = FrobeniusOptions {
        symbolic_det: true,
        ..FrobeniusOptions::default()
    };
    let v = check_frobenius(&c, opts).unwrap();
    assert_eq!(v.status, FrobeniusStatus::NoBijectiveE);
    assert_eq!(v.search, Search::Grid);
    assert!(!v.is_probabilistic());
    let sampled = check_frobenius(&c, FrobeniusOptions::default()).unwrap();
    assert!(sampled.is_probabilistic());
}

#[test]
fn seeds_reproduce_verdicts() {
    let c = Coring::from_coalgebra(&fixtures::taft());
    for seed in [0, 7, 12345] {
        let opts = FrobeniusOptions {
            seed,
            ..FrobeniusOptions::default()
        };
        let a = check_frobenius(&c, opts).unwrap();
        let b = check_frobenius(&c, opts).unwrap();
        assert_eq!(a.status, b.status);
        assert_eq!(a.e, b.e);
        assert_eq!(a.candidates, b.candidates);
        assert_eq!(a.status, FrobeniusStatus::Frobenius);
    }
}

#[test]
fn transport_roundtrips_on_dual_numbers() {
    let cc = fixtures::x2();
    let c = &cc.coring;
    let v = check_frobenius(c, FrobeniusOptions::default()).unwrap();
    let dual = v.dual.as_ref().unwrap();
    let db = v.projective.as_ref().ok();

    let reg = c.regular_comodule();
    let Transported::ToModule(rm) = transport_r(c, dual, db, Transported::ToComodule(reg.clone())).unwrap() else {
        panic!("expected a module")
    };
    // The counit is the unit of R and acts trivially.
    let unit = dual.coords(c.counit()).unwrap();
    assert!(rm.act_right(&unit).is_identity());
    let Transported::ToComodule(back) = transport_r(c, dual, db, Transported::ToModule(rm)).unwrap() else {
        panic!("expected a comodule")
    };
    assert_eq!(back.coaction(), reg.coaction());

    let a_com = comodule_from_grouplike(c, &cc.one()).unwrap();
    let am = comodule_to_r_module(c, dual, &a_com).unwrap();
    assert!(am.validate().is_valid());
}

#[test]
fn transport_needs_projectivity() {
    let cc = fixtures::x2();
    let dual = dual_ring(&cc.coring).unwrap();
    let m = cc.coring.regular_comodule();
    assert!(transport_r(&cc.coring, &dual, None, Transported::ToComodule(m)).is_err());
}

#[test]
fn dual_ring_is_opposite_composition() {
    let cc = fixtures::x2();
    let dual = dual_ring(&cc.coring).unwrap();
    assert!(dual_ring_is_opposite_endomorphisms(&cc, &dual));
}

fn x2_ext() -> AlgebraMorphism {
    let a = Arc::new(Algebra::truncated_polynomial(Field::Rationals, 2));
    Subalgebra::scalars(a).inclusion()
}

#[test]
fn frobenius_systems() {
    let q = Field::Rationals;
    let a = Arc::new(Algebra::truncated_polynomial(q, 2));
    let id = AlgebraMorphism::identity(a.clone());
    let trivial = FrobeniusSystem {
        e: Matrix::identity(q, 2),
        pairs: vec![(a.unit().to_vec(), a.unit().to_vec())],
    };
    assert!(validate_frobenius_system(&id, &trivial).is_valid());

    let (one, x) = (a.basis_vector(0), a.basis_vector(1));
    let sys = FrobeniusSystem {
        e: Matrix::from_i64(q, &[&[0, 1]]),
        pairs: vec![(one.clone(), x.clone()), (x.clone(), one.clone())],
    };
    let ext = x2_ext();
    assert!(validate_frobenius_system(&ext, &sys).is_valid());
    let cc = fixtures::x2();
    let w = induced_coring_witness(&cc, &sys).unwrap();
    assert_eq!(w.e, vector::add(&cc.element(&one, &x), &cc.element(&x, &one)));

    let bad = FrobeniusSystem {
        e: sys.e.clone(),
        pairs: vec![(one.clone(), one)],
    };
    let v = validate_frobenius_system(&ext, &bad);
    assert!(!v.is_valid());
    assert!(v.violations.iter().any(|x| x.at == "a1"));
    assert!(induced_coring_witness(&cc, &bad).is_err());
}

/// Frobenius iff some bijection `R → C` is `(A, R)`-bilinear, by brute force
/// over 𝔽₂; and every returned witness satisfies its invariants.
#[test]
fn verdicts_agree_with_bimodule_isomorphism_search() {
    for c in common::f2_corings() {
        let v = check_frobenius(&c, FrobeniusOptions::default()).unwrap();
        if v.status == FrobeniusStatus::NotProjective {
            continue;
        }
        let dual = v.dual.as_ref().unwrap();
        let n = c.dim();
        let iso_exists = dual.dim() == n
            && common::f2_matrices(n, n).iter().filter(|m| m.is_invertible()).any(|theta| {
                let acts = r_action_on_coring(&c, dual);
                let r_ok = (0..n).all(|j| theta * dual.algebra.right_basis(j) == &acts[j] * theta);
                let a = c.algebra();
                let a_ok = (0..a.dim()).all(|i| {
                    theta * &dual.algebra.left_mul(&dual.iota.matrix.column(i)) == c.bimodule().left_basis(i) * theta
                });
                r_ok && a_ok
            });
        assert_eq!(iso_exists, v.status == FrobeniusStatus::Frobenius);
        if let (Some(e), Some(phi), Some(inv)) = (&v.e, &v.phi, &v.phi_inverse) {
            assert!((phi * inv).is_identity() && (inv * phi).is_identity());
            let bm = c.bimodule();
            assert!((0..c.algebra().dim()).all(|i| bm.left_basis(i).mul_vec(e) == bm.right_basis(i).mul_vec(e)));
            assert!(theta_is_isomorphism(&c, dual, e));
        }
    }
}

#[test]
fn regular_comodule_as_dual_ring_module() {
    let cc = fixtures::x2();
    let dual = dual_ring(&cc.coring).unwrap();
    let m = comodule_to_r_module(&cc.coring, &dual, &cc.coring.regular_comodule()).unwrap();
    assert_eq!(m.dim(), 4);
    assert_eq!(*m.right_algebra, *dual.algebra);
}
