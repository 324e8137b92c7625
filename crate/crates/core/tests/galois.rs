mod common;

use std::sync::Arc;

use corings::algebra::{Algebra, Bimodule};
use corings::coalgebra::Coalgebra;
use corings::coring::{is_grouplike, Coring, CoringComodule};
use corings::entwining::{coring_from_entwining, ComoduleAlgebra};
use corings::error::Error;
use corings::fixtures;
use corings::galois::*;
use corings::linalg::{vector, Field, Matrix, Scalar};
use proptest::prelude::*;

fn c2_setup() -> (Coring, Vec<Scalar>) {
    let e = fixtures::c2();
    let c = coring_from_entwining(&e).unwrap();
    let g = e.element(e.algebra.unit(), &vector::unit(e.field(), 2, 0));
    (c, g)
}

fn kc2() -> (Coring, Vec<Scalar>) {
    let q = Field::Rationals;
    (Coring::from_coalgebra(&Coalgebra::grouplike(q, 2)), vector::unit(q, 2, 0))
}

/// Dimension of `{m : ρ(m) = m ⊗ g}` straight from the lift.
fn coinvariant_dim(c: &Coring, m: &CoringComodule, g: &[Scalar]) -> usize {
    let f = c.field();
    let t = m.tensor();
    let cols: Vec<Vec<Scalar>> = (0..m.dim())
        .map(|i| {
            let lhs = t.project_vec(&m.lift().column(i));
            let rhs = t.project_vec(&vector::kron(&vector::unit(f, m.dim(), i), g));
            vector::sub(&lhs, &rhs)
        })
        .collect();
    Matrix::from_columns(f, t.dim(), &cols).kernel().dim()
}

#[test]
fn grouplike_coaction_on_triv_is_identity() {
    let c = fixtures::triv();
    let m = comodule_from_grouplike(&c, &[Field::Rationals.one()]).unwrap();
    assert!(m.coaction().is_identity());
}

#[test]
fn grouplike_coaction_on_canonical_is_one_tensor_a() {
    let cc = fixtures::x2();
    let m = comodule_from_grouplike(&cc.coring, &cc.one()).unwrap();
    let a = cc.coring.algebra();
    for i in 0..a.dim() {
        let expected = vector::kron(a.unit(), &cc.element(a.unit(), &a.basis_vector(i)));
        assert_eq!(m.tensor().project_vec(&m.lift().column(i)), m.tensor().project_vec(&expected));
    }
}

#[test]
fn grouplike_coaction_on_c2_is_group_coproduct() {
    let (c, g) = c2_setup();
    let m = comodule_from_grouplike(&c, &g).unwrap();
    let rho = fixtures::c2_comodule_algebra().rho;
    let a = c.algebra();
    for i in 0..a.dim() {
        let expected = vector::kron(a.unit(), &rho.column(i));
        assert_eq!(m.tensor().project_vec(&m.lift().column(i)), m.tensor().project_vec(&expected));
    }
}

#[test]
fn coinvariant_rings() {
    let b = coinvariant_ring(&fixtures::triv(), &[Field::Rationals.one()]).unwrap();
    assert_eq!(b.dim(), 1);
    let (c, g) = c2_setup();
    let b = coinvariant_ring(&c, &g).unwrap();
    assert_eq!(b.dim(), 1);
    assert!(b.space.contains(c.algebra().unit()));

    // b ⊗ 1 = 1 ⊗ b, solved directly in A ⊗_𝔽₃ A.
    let cc = fixtures::mat2();
    let a = cc.coring.algebra();
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| vector::sub(&cc.element(&a.basis_vector(i), a.unit()), &cc.element(a.unit(), &a.basis_vector(i))))
        .collect();
    let oracle = Matrix::from_columns(a.field(), cc.coring.dim(), &cols).kernel();
    let b = coinvariant_ring(&cc.coring, &cc.one()).unwrap();
    assert!(b.space.same_as(&oracle));
    assert_eq!(b.dim(), 1);
}

#[test]
fn canonical_corings_are_galois_with_identity_chi() {
    for cc in [fixtures::x2(), fixtures::mat2()] {
        let gd = galois_check_canonical(&cc).unwrap();
        assert!(gd.is_galois());
        assert!(gd.chi.is_identity());
        assert!(gd.warnings.is_empty());
    }
}

#[test]
fn c2_chi_is_the_multiplication_permutation() {
    let (c, g) = c2_setup();
    let gd = galois_check(&c, &g).unwrap();
    assert!(gd.is_galois());
    let f = c.field();
    // u⊗v ↦ uv⊗v on the group basis.
    let oracle = Matrix::from_fn(f, 4, 4, |r, s| {
        let (u, v) = (s / 2, s % 2);
        if r == ((u + v) % 2) * 2 + v {
            f.one()
        } else {
            f.zero()
        }
    });
    assert_eq!(gd.chi, oracle);
    assert!((&gd.chi * gd.chi_inverse.as_ref().unwrap()).is_identity());
    assert!(chi_equals_can(&gd, &fixtures::c2_comodule_algebra()).unwrap());
}

#[test]
fn group_coalgebra_over_the_field_is_not_galois() {
    let (c, g) = kc2();
    let gd = galois_check(&c, &g).unwrap();
    assert_eq!((gd.chi.rows(), gd.chi.cols()), (2, 1));
    assert!(gd.chi_inverse.is_none());
    assert!(!gd.is_galois());
}

#[test]
fn adjunction_unit_cases() {
    let (c, g) = c2_setup();
    let desc = Descent::new(&c, &g).unwrap();
    let a = comodule_from_grouplike(&c, &g).unwrap();
    let rep = adjunction_check(&desc, &desc.b_module(), &a).unwrap();
    assert!(rep.triangles_hold());
    assert!(rep.psi_bijective);
    assert!(rep.phi_bijective);
    assert_eq!(rep.phi.rows(), desc.b.dim());

    let rep = adjunction_check(&desc, &desc.b_module(), &c.regular_comodule()).unwrap();
    assert!(rep.psi_bijective);
    assert_eq!(rep.psi.rows(), c.dim());
}

#[test]
fn triangle_identities_on_fixtures() {
    let mut cases: Vec<(Coring, Vec<Scalar>)> = vec![(fixtures::triv(), vec![Field::Rationals.one()]), c2_setup(), kc2()];
    for cc in [fixtures::x2(), fixtures::mat2()] {
        let g = cc.one();
        cases.push((cc.coring, g));
    }
    for (c, g) in cases {
        let desc = Descent::new(&c, &g).unwrap();
        let b = desc.b_module();
        let b2 = b.direct_sum(&b).unwrap();
        for m in [comodule_from_grouplike(&c, &g).unwrap(), c.regular_comodule()] {
            for n in [&b, &b2] {
                let rep = adjunction_check(&desc, n, &m).unwrap();
                assert!(rep.triangles_hold(), "{rep:?}");
            }
        }
    }
}

#[test]
fn triangle_identities_over_small_f2_corings() {
    let mut checked = 0;
    for c in common::f2_corings() {
        for g in common::f2_vectors(c.dim()) {
            if !is_grouplike(&c, &g) {
                continue;
            }
            let desc = Descent::new(&c, &g).unwrap();
            let rep = adjunction_check(&desc, &desc.b_module(), &c.regular_comodule()).unwrap();
            assert!(rep.triangles_hold());
            let gd = galois_check(&c, &g).unwrap();
            // A Galois coring makes Ψ_C an isomorphism.
            if gd.is_galois() {
                assert!(rep.psi_bijective);
            }
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn equivalence_reports() {
    let (c, g) = c2_setup();
    let rep = equivalence_check(&c, &g, 3, 7).unwrap();
    assert!(rep.galois && rep.family_equivalence && rep.flat_sufficient, "{rep:?}");
    // A, C and N ⊗ A for each of B, B² and three seeded modules, then the modules.
    assert_eq!(rep.members, 2 + 5 + 5);

    let rep = equivalence_check(&fixtures::triv(), &[Field::Rationals.one()], 3, 7).unwrap();
    assert!(rep.galois && rep.family_equivalence && rep.flat_sufficient);

    let (c, g) = kc2();
    let rep = equivalence_check(&c, &g, 3, 7).unwrap();
    assert!(!rep.galois);
    assert!(!rep.family_equivalence);
    assert!(rep.failures.iter().any(|s| s == "Ψ not bijective at C"));
    assert_eq!(EquivalenceReport::FAITHFUL_FLATNESS, "not decided");
}

#[test]
fn equivalence_family_is_seeded() {
    let (c, g) = c2_setup();
    let desc = Descent::new(&c, &g).unwrap();
    let a = module_family(&desc, 4, 11).unwrap();
    let b = module_family(&desc, 4, 11).unwrap();
    assert_eq!(a.len(), b.len());
    for ((na, ma), (nb, mb)) in a.iter().zip(&b) {
        assert_eq!(na, nb);
        assert_eq!(ma, mb);
    }
}

#[test]
fn hom_tensor_relation() {
    let (c, g) = c2_setup();
    let desc = Descent::new(&c, &g).unwrap();
    let v = BiComodule::algebra(&desc).unwrap();
    let b = desc.b_module();
    let b2 = b.direct_sum(&b).unwrap();
    let m = c.regular_comodule();
    // Hom^C(A, M) ≅ M^{co C} by f ↦ f(1).
    let co = coinvariant_dim(&c, &m, &g);
    let rep = hom_tensor_check(&desc, &v, &b, &m).unwrap();
    assert_eq!((rep.lhs_dim, rep.rhs_dim), (co, co));
    assert!(rep.roundtrip);
    let rep = hom_tensor_check(&desc, &v, &b2, &m).unwrap();
    assert_eq!((rep.lhs_dim, rep.rhs_dim), (2 * co, 2 * co));
    assert!(rep.roundtrip);

    let a = c.algebra().clone();
    let zero = Bimodule::right_module(a.clone(), 0, vec![Matrix::zeros(c.field(), 0, 0); a.dim()]).unwrap();
    let zero = CoringComodule::new(&c, zero, Matrix::zeros(c.field(), 0, 0)).unwrap();
    let rep = hom_tensor_check(&desc, &v, &b2, &zero).unwrap();
    assert_eq!((rep.lhs_dim, rep.rhs_dim), (0, 0));
    assert!(rep.roundtrip);
}

#[test]
fn hom_tensor_rejects_a_non_b_module() {
    let (c, g) = c2_setup();
    let desc = Descent::new(&c, &g).unwrap();
    let v = BiComodule::algebra(&desc).unwrap();
    let wrong = Bimodule::regular(c.algebra().clone()).right_part();
    let err = hom_tensor_check(&desc, &v, &wrong, &c.regular_comodule()).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn schneider_coring_of_c2() {
    let ca = fixtures::c2_comodule_algebra();
    let s = schneider_coring(&ca).unwrap();
    assert_eq!(s.space.dim(), 2);
    assert!(s.coring.validate().is_valid());
    let a = &ca.algebra;
    let d = a.dim();
    let incl = s.coinvariants.inclusion();
    for (k, u) in s.space.basis_vectors().iter().enumerate() {
        let mut prod = vector::zeros(a.field(), d);
        for (p, coef) in u.iter().enumerate() {
            let xy = a.mul(&a.basis_vector(p / d), &a.basis_vector(p % d));
            vector::axpy(&mut prod, coef, &xy);
        }
        assert_eq!(incl.matrix.mul_vec(&s.coring.counit().column(k)), prod);
    }
}

#[test]
fn schneider_coring_of_trivial_coaction() {
    let q = Field::Rationals;
    let a = Arc::new(Algebra::truncated_polynomial(q, 2));
    let ca = ComoduleAlgebra::new(a.clone(), Arc::new(Coalgebra::ground(q)), Matrix::identity(q, 2)).unwrap();
    let s = schneider_coring(&ca).unwrap();
    assert_eq!(s.coinvariants.dim(), 2);
    assert_eq!(s.space.dim(), 4);
    assert!(s.coring.validate().is_valid());
}

#[test]
fn schneider_coring_needs_bijective_can() {
    let w = fixtures::weak2();
    let ca = ComoduleAlgebra::new(w.algebra.clone(), w.coalgebra.clone(), fixtures::weak2_coaction()).unwrap();
    assert!(matches!(schneider_coring(&ca), Err(Error::Precondition(_))));
}

#[test]
fn weak_galois_image_is_the_weak_coring() {
    let w = fixtures::weak2();
    let ca = ComoduleAlgebra::new(w.algebra.clone(), w.coalgebra.clone(), fixtures::weak2_coaction()).unwrap();
    assert!(weak_image_matches(&ca, &w).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_submodules_satisfy_the_adjunction(seed in any::<u64>(), size in 1usize..4) {
        let (c, g) = c2_setup();
        let desc = Descent::new(&c, &g).unwrap();
        for (_, n) in module_family(&desc, size, seed).unwrap() {
            let rep = adjunction_check(&desc, &n, &c.regular_comodule()).unwrap();
            prop_assert!(rep.triangles_hold());
            prop_assert!(rep.phi_bijective);
        }
    }
}
