mod common;

use std::sync::Arc;

use corings::algebra::{bimodule_invariants, hom_space, Algebra, AlgebraMorphism, Flavor, Subalgebra};
use corings::coring::Coring;
use corings::fixtures;
use corings::galois::comodule_from_grouplike;
use corings::linalg::{vector, Field, Matrix, Scalar};
use corings::separability::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn trivial_coring_certificates() {
    let c = fixtures::triv();
    let e = check_induction_separable(&c).unwrap().unwrap();
    assert_eq!(e.e, vec![Field::Rationals.one()]);
    assert_eq!(e.solution_dim, 0);
    let nu = build_nu_from_e(&c, &e, &c.algebra().clone().into_regular_right()).unwrap();
    assert!(nu.nu.is_identity());
}

trait RegularRight {
    fn into_regular_right(self) -> corings::algebra::Bimodule;
}

impl RegularRight for Arc<Algebra> {
    fn into_regular_right(self) -> corings::algebra::Bimodule {
        corings::algebra::Bimodule::regular(self).right_part()
    }
}

#[test]
fn matrix_algebra_is_separable() {
    let cc = fixtures::mat2();
    let c = &cc.coring;
    let cert = check_induction_separable(c).unwrap().unwrap();
    // Σᵢ e_{i1} ⊗ e_{1i}, checked directly.
    let a = c.algebra();
    let mut e = vector::zeros(a.field(), c.dim());
    for i in 0..2 {
        e = vector::add(&e, &cc.element(&a.basis_vector(i * 2), &a.basis_vector(i)));
    }
    let bm = c.bimodule();
    for k in 0..a.dim() {
        assert_eq!(bm.left_basis(k).mul_vec(&e), bm.right_basis(k).mul_vec(&e));
        assert_eq!(bm.left_basis(k).mul_vec(&cert.e), bm.right_basis(k).mul_vec(&cert.e));
    }
    assert_eq!(c.epsilon(&e), a.unit());
    assert_eq!(c.epsilon(&cert.e), a.unit());
}

#[test]
fn nu_retracts_and_is_natural() {
    let cc = fixtures::mat2();
    let c = &cc.coring;
    let cert = check_induction_separable(c).unwrap().unwrap();
    let m = c.algebra().clone().into_regular_right();
    let nu = build_nu_from_e(c, &cert, &m).unwrap();
    assert!((&nu.psi * &nu.nu).is_identity());
    let homs = hom_space(&m, &m, Flavor::RightLinear).unwrap();
    let f3 = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..3 {
        let coeffs: Vec<Scalar> = (0..homs.dim()).map(|_| f3.from_i64(rng.gen_range(0..3))).collect();
        let g = homs.combination(&coeffs);
        assert!(nu_is_natural(c, &nu, &nu, &g));
    }
}

#[test]
fn dual_numbers_have_no_invariant_certificate() {
    let cc = fixtures::x2();
    let c = &cc.coring;
    let w = check_induction_separable(c).unwrap().unwrap_err();
    assert_eq!(w.augmented_rank, w.rank + 1);
    // ε maps the invariants onto a space that misses 1.
    let inv = bimodule_invariants(c.bimodule()).unwrap();
    assert_eq!(inv.dim(), 2);
    let image = c.counit() * inv.inclusion();
    let with_one = image.hstack(&Matrix::column_vector(c.field(), c.algebra().unit()));
    assert_eq!(image.rank(), 1);
    assert_eq!(with_one.rank(), 2);
}

#[test]
fn dual_numbers_cointegral_matches_split() {
    let cc = fixtures::x2();
    let c = &cc.coring;
    let g = check_forgetful_separable(c).unwrap().unwrap();
    let q = Field::Rationals;
    // E(1) = 1, E(x) = 0 read back through γ(1⊗a⊗1).
    assert_eq!(split_from_gamma(&cc, &g.gamma), Matrix::from_i64(q, &[&[1, 0], &[0, 0]]));
    let from_e = gamma_from_split(&cc, &Matrix::from_i64(q, &[&[1, 0]]));
    assert_eq!(from_e, g.gamma);
    let pi = cosep_idempotent(c, &g).unwrap();
    assert!((&pi.pi * &c.coproduct()).is_identity());
    assert!(validate_cosep(c, &pi.pi).is_valid());
}

#[test]
fn taft_coalgebra_is_not_coseparable() {
    let c = Coring::from_coalgebra(&fixtures::taft());
    assert!(check_forgetful_separable(&c).unwrap().is_err());
    assert!(check_induction_separable(&c).unwrap().is_ok());
}

#[test]
fn trivial_cointegral_and_idempotent() {
    let c = fixtures::triv();
    let g = check_forgetful_separable(&c).unwrap().unwrap();
    assert!(g.gamma.is_identity());
    assert!(cosep_idempotent(&c, &g).unwrap().pi.is_identity());
}

#[test]
fn extension_analyses() {
    let q = Field::Rationals;
    let x2 = Arc::new(Algebra::truncated_polynomial(q, 2));

    let same = analyze_extension(&AlgebraMorphism::identity(x2.clone())).unwrap();
    let sep = same.separable.as_ref().unwrap();
    assert_eq!(sep.terms, vec![(x2.unit().to_vec(), x2.unit().to_vec())]);
    assert!(same.split.as_ref().unwrap().e.is_identity());
    assert!(same.flat_sufficient && same.split_matches_cointegral());

    let dual = analyze_extension(&Subalgebra::scalars(x2.clone()).inclusion()).unwrap();
    assert!(dual.separable.is_err());
    let split = dual.split.as_ref().unwrap();
    assert_eq!(split.e, Matrix::from_i64(q, &[&[1, 0]]));
    assert_eq!(split.solution_dim, 1);
    assert!(dual.flat_sufficient && dual.split_matches_cointegral());

    let m2 = Arc::new(Algebra::matrix_units(fixtures::f3(), 2));
    let mat = analyze_extension(&Subalgebra::scalars(m2).inclusion()).unwrap();
    assert!(mat.separable.is_ok() && mat.split.is_ok());
    assert!(mat.split_matches_cointegral());
}

#[test]
fn separable_verdict_agrees_across_paths() {
    let x2 = Arc::new(Algebra::truncated_polynomial(Field::Rationals, 2));
    for ext in [AlgebraMorphism::identity(x2.clone()), Subalgebra::scalars(x2).inclusion()] {
        let an = analyze_extension(&ext).unwrap();
        let direct = check_induction_separable(&an.canonical.coring).unwrap();
        assert_eq!(an.separable.is_ok(), direct.is_ok());
    }
}

/// Brute force over every candidate `e` and `γ`, for every small 𝔽₂ coring.
#[test]
fn solvers_agree_with_enumeration_over_f2() {
    let corings = common::f2_corings();
    assert!(corings.len() > 10);
    for c in &corings {
        let a = c.algebra();
        let bm = c.bimodule();
        let es = common::f2_vectors(c.dim())
            .into_iter()
            .filter(|e| {
                (0..a.dim()).all(|k| bm.left_basis(k).mul_vec(e) == bm.right_basis(k).mul_vec(e)) && c.counit().mul_vec(e) == a.unit()
            })
            .count();
        match check_induction_separable(c).unwrap() {
            Ok(cert) => assert_eq!(es, 1 << cert.solution_dim),
            Err(_) => assert_eq!(es, 0),
        }
        let gs = common::f2_matrices(a.dim(), c.square().dim())
            .into_iter()
            .filter(|g| validate_cointegral(c, g).is_valid())
            .count();
        match check_forgetful_separable(c).unwrap() {
            Ok(g) => assert_eq!(gs, 1 << g.solution_dim),
            Err(_) => assert_eq!(gs, 0),
        }
    }
}

struct MaschkeSetup {
    cc: corings::coring::CanonicalCoring,
    gamma: Cointegral,
    m: corings::coring::CoringComodule,
    n: corings::coring::CoringComodule,
    f: Matrix,
    s: Matrix,
    kernel_maps: Vec<Matrix>,
}

fn maschke_setup() -> MaschkeSetup {
    let cc = fixtures::x2();
    let c = &cc.coring;
    let gamma = check_forgetful_separable(c).unwrap().unwrap();
    let n = comodule_from_grouplike(c, &cc.one()).unwrap();
    let m = c.regular_comodule();
    let a = c.algebra();
    let q = a.field();
    // f(a⊗a') = E(a)a' with E(1) = 1, E(x) = 0.
    let fcols: Vec<Vec<Scalar>> = cc
        .tensor
        .free_coordinates()
        .iter()
        .map(|&p| if p / 2 == 0 { a.basis_vector(p % 2) } else { vector::zeros(q, 2) })
        .collect();
    let f = Matrix::from_columns(q, 2, &fcols);
    let scols: Vec<Vec<Scalar>> = (0..2).map(|i| cc.element(a.unit(), &a.basis_vector(i))).collect();
    let s = Matrix::from_columns(q, 4, &scols);
    let kernel_maps = hom_space(&n.module, &m.module, Flavor::RightLinear).unwrap().basis;
    MaschkeSetup { cc, gamma, m, n, f, s, kernel_maps }
}

#[test]
fn maschke_identity_section() {
    let c = fixtures::triv();
    let g = check_forgetful_separable(&c).unwrap().unwrap();
    let m = c.regular_comodule();
    let id = Matrix::identity(c.field(), 1);
    assert_eq!(maschke_split(&c, &g, &m, &m, &id, &id).unwrap(), id);
}

#[test]
fn maschke_rejects_bad_section() {
    let st = maschke_setup();
    let bad = st.s.scale(&Field::Rationals.from_i64(2));
    let err = maschke_split(&st.cc.coring, &st.gamma, &st.m, &st.n, &st.f, &bad).unwrap_err();
    assert!(err.to_string().contains("f∘s"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn maschke_split_of_random_sections(coeffs in prop::collection::vec(-3i64..=3, 4)) {
        let st = maschke_setup();
        let q = Field::Rationals;
        let mut h = Matrix::zeros(q, 4, 2);
        for (k, c) in st.kernel_maps.iter().zip(&coeffs) {
            h = &h + &k.scale(&q.from_i64(*c));
        }
        // s + h − s∘f∘h is again a right-linear section.
        let s = &(&st.s + &h) - &(&(&st.s * &st.f) * &h);
        let st2 = maschke_split(&st.cc.coring, &st.gamma, &st.m, &st.n, &st.f, &s).unwrap();
        prop_assert!((&st.f * &st2).is_identity());
        prop_assert!(st.n.is_comodule_map(&st.m, &st2));
        prop_assert!(st.n.module.is_right_linear(&st.m.module, &st2));
    }
}
