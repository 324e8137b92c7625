//! Cross-checks against `fixtures/oracle_facts.json`, produced by brute force
//! in `fixtures/oracle.py` without touching this code.

mod common;

use serde_json::{json, Value};

use common::*;
use corings::entwining::{coring_from_weak, Entwining};
use corings::fixtures;
use corings::frobenius::{check_frobenius, FrobeniusOptions, FrobeniusStatus, Search};
use corings::linalg::Matrix;

fn facts() -> Value {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/oracle_facts.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ints(m: &Matrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(|x| if x.is_zero() { 0 } else { 1 }).collect::<Vec<_>>()).collect::<Vec<_>>())
}

#[test]
fn weak2_enumeration_counts() {
    let facts = &facts()["fx_weak2"];
    let w = fixtures::weak2();
    let f = fixtures::f2();
    let (mut weak, mut strict) = (0u64, 0u64);
    for bits in 0u32..1 << 16 {
        let psi = Matrix::from_fn(f, 4, 4, |r, c| if bits >> (4 * r + c) & 1 == 1 { f.one() } else { f.zero() });
        let e = Entwining::new(w.algebra.clone(), w.coalgebra.clone(), psi).unwrap();
        if e.validate_weak().is_valid() {
            weak += 1;
            if e.validate().is_valid() {
                strict += 1;
            }
        }
    }
    assert_eq!(json!(weak), facts["weak_entwinings"]);
    assert_eq!(json!(strict), facts["entwinings"]);
}

#[test]
fn weak2_fixture_facts() {
    let facts = &facts()["fx_weak2"];
    let w = load("fx_weak2").entwinings["W"].clone();
    assert_eq!(json!(w.validate_weak().is_valid()), facts["fixture_is_weak"]);
    assert_eq!(json!(w.validate().is_valid()), facts["fixture_is_entwining"]);

    let wc = coring_from_weak(&w).unwrap();
    assert_eq!(ints(&wc.projection), facts["projection"]);
    assert_eq!(json!(wc.projection.try_mul(&wc.projection).unwrap() == wc.projection), facts["projection_idempotent"]);
    assert_eq!(json!(wc.projection.rank()), facts["projection_rank"]);

    let f = fixtures::f2();
    let mut flips = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            let mut psi = w.psi.clone();
            let v = if psi.get(r, c).is_zero() { f.one() } else { f.zero() };
            psi.set(r, c, v);
            let e = Entwining::new(w.algebra.clone(), w.coalgebra.clone(), psi).unwrap();
            if e.validate_weak().is_valid() {
                flips.push(json!([r, c]));
            }
        }
    }
    assert_eq!(Value::Array(flips), facts["weak_single_flips"]);
}

#[test]
fn t2dual_frobenius_facts() {
    let facts = &facts()["fx_t2dual"];
    let v = check_frobenius(&load("fx_t2dual").corings["C"], FrobeniusOptions::default()).unwrap();
    assert_eq!(json!(v.invariants_dim), facts["invariants_dim"]);
    assert_eq!(json!(v.candidates), facts["candidates"]);
    assert_eq!(v.search, Search::Exhaustive);
    assert!(facts["bijective_candidates"].as_array().unwrap().is_empty());
    assert_eq!(v.status, FrobeniusStatus::NoBijectiveE);
}
