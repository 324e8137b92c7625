use serde_json::{json, Map, Value};

use corings::algebra::{bimodule_invariants, Algebra};
use corings::coring::{dual_ring, find_grouplikes, Coring, DEFAULT_BUDGET};
use corings::cring::{
    check_dual_forgetful_separable, check_dual_induction_separable, cring_from_entwining, cring_from_surjection, invariants_coideal, CRing,
};
use corings::entwining::{coring_from_entwining, coring_from_weak, coring_from_weak_via_precoring, Entwining};
use corings::frobenius::{check_frobenius, FrobeniusOptions, FrobeniusStatus, FrobeniusVerdict, Search};
use corings::galois::{coinvariant_ring, equivalence_check, galois_check, schneider_coring, EquivalenceReport};
use corings::linalg::{Matrix, Scalar};
use corings::separability::{check_forgetful_separable, check_induction_separable, cosep_idempotent, maschke_split, validate_cosep};

use crate::instance::{Instance, NamedComodule, GROUND};
use crate::report::{matrix, rank_witness, validation, vector, vectors};
use crate::{Build, Check, Command, Done, Failure, Find, Global};

type Outcome = Result<Done, Failure>;

fn coring<'a>(inst: &'a Instance, name: &str) -> Result<&'a Coring, Failure> {
    inst.corings.get(name).ok_or_else(|| Failure::usage(format!("no coring named {name:?}")))
}

fn cring<'a>(inst: &'a Instance, name: &str) -> Result<&'a CRing, Failure> {
    inst.crings.get(name).ok_or_else(|| Failure::usage(format!("no C-ring named {name:?}")))
}

fn entwining<'a>(inst: &'a Instance, name: &str) -> Result<&'a Entwining, Failure> {
    inst.entwinings.get(name).ok_or_else(|| Failure::usage(format!("no entwining named {name:?}")))
}

fn comodule<'a>(inst: &'a Instance, name: &str, coring: &str) -> Result<&'a NamedComodule, Failure> {
    let m = inst.comodules.get(name).ok_or_else(|| Failure::usage(format!("no comodule named {name:?}")))?;
    if m.coring != coring {
        return Err(Failure::usage(format!("comodule {name:?} is over {:?}, not {coring:?}", m.coring)));
    }
    Ok(m)
}

fn map<'a>(inst: &'a Instance, name: &str) -> Result<&'a Matrix, Failure> {
    inst.maps.get(name).ok_or_else(|| Failure::usage(format!("no map named {name:?}")))
}

/// A vector of the table that lives in `owner`.
fn vector_in<'a>(inst: &'a Instance, name: &str, owner: &str) -> Result<&'a [Scalar], Failure> {
    let v = inst.vectors.get(name).ok_or_else(|| Failure::usage(format!("no vector named {name:?}")))?;
    if v.owner != owner {
        return Err(Failure::usage(format!("vector {name:?} lives in {:?}, not {owner:?}", v.owner)));
    }
    Ok(&v.coords)
}

fn fresh(inst: &Instance, requested: Option<&String>, default: String) -> Result<String, Failure> {
    let name = requested.cloned().unwrap_or(default);
    let taken = inst.corings.contains_key(&name) || inst.crings.contains_key(&name) || inst.coalgebras.contains_key(&name) || name == GROUND;
    if taken {
        return Err(Failure::usage(format!("name {name:?} is already used")));
    }
    Ok(name)
}

pub fn dispatch(cmd: &Command, g: &Global, inst: Instance) -> Outcome {
    match cmd {
        Command::Validate => Ok(Done::decided(validate(&inst))),
        Command::Build(b) => build(b, inst),
        Command::Check(c) => check(c, g, &inst),
        Command::Find(f) => find(f, g, &inst),
        Command::SplitEpi {
            coring: c,
            source,
            target,
            map: f,
            section,
        } => split_epi(&inst, c, source, target, f, section),
        Command::Report => Ok(full_report(g, &inst)?),
    }
}

fn names<T>(m: &std::collections::BTreeMap<String, T>) -> Value {
    json!(m.keys().collect::<Vec<_>>())
}

fn validate(inst: &Instance) -> Value {
    let corings: Map<String, Value> = inst
        .corings
        .iter()
        .map(|(n, c)| {
            (
                n.clone(),
                json!({ "dim": c.dim(), "algebra_dim": c.algebra().dim(), "validation": validation(&c.validate()) }),
            )
        })
        .collect();
    json!({
        "valid": true,
        "field": inst.field.to_string(),
        "algebras": names(&inst.algebras),
        "coalgebras": names(&inst.coalgebras),
        "morphisms": names(&inst.algebra_morphisms).as_array().unwrap().iter().chain(names(&inst.coalgebra_morphisms).as_array().unwrap()).cloned().collect::<Vec<_>>(),
        "bimodules": names(&inst.bimodules),
        "entwinings": names(&inst.entwinings),
        "comodule_algebras": names(&inst.comodule_algebras),
        "corings": corings,
        "comodules": names(&inst.comodules),
        "crings": names(&inst.crings),
        "vectors": names(&inst.vectors),
        "maps": names(&inst.maps),
    })
}

fn coring_summary(c: &Coring) -> Value {
    json!({
        "dim": c.dim(),
        "algebra_dim": c.algebra().dim(),
        "lift": matrix(c.lift()),
        "counit": matrix(c.counit()),
        "validation": validation(&c.validate()),
    })
}

fn cring_summary(r: &CRing) -> Result<Value, Failure> {
    Ok(json!({
        "dim": r.dim(),
        "square_dim": r.square.dim(),
        "product": matrix(&r.product_full()),
        "unit": matrix(&r.unit),
        "validation": validation(&r.validate()?),
    }))
}

fn built(mut inst: Instance, name: String, c: Coring, mut extra: Map<String, Value>) -> Outcome {
    extra.insert("name".into(), json!(name));
    extra.insert("coring".into(), coring_summary(&c));
    inst.corings.insert(name, c);
    Ok(Done {
        result: Value::Object(extra),
        undecided: false,
        extended: Some(inst),
    })
}

fn build(b: &Build, mut inst: Instance) -> Outcome {
    match b {
        Build::Canonical { ext, name } => {
            let m = inst
                .algebra_morphisms
                .get(ext)
                .ok_or_else(|| Failure::usage(format!("no algebra morphism named {ext:?}")))?;
            let cc = corings::coring::canonical_coring(m)?;
            let name = fresh(&inst, name.as_ref(), format!("canonical_{ext}"))?;
            built(inst, name, cc.coring, Map::new())
        }
        Build::FromEntwining { entwining: e, name } => {
            let c = coring_from_entwining(entwining(&inst, e)?)?;
            let name = fresh(&inst, name.as_ref(), format!("coring_{e}"))?;
            built(inst, name, c, Map::new())
        }
        Build::FromWeak { entwining: e, name } => {
            let w = coring_from_weak(entwining(&inst, e)?)?;
            let p = &w.projection;
            let mut extra = Map::new();
            extra.insert("projection".into(), matrix(p));
            extra.insert("idempotent".into(), json!(&(p * p) == p));
            extra.insert("rank".into(), json!(w.image.dim()));
            extra.insert("ambient_dim".into(), json!(p.rows()));
            let name = fresh(&inst, name.as_ref(), format!("weak_{e}"))?;
            built(inst, name, w.coring, extra)
        }
        Build::FromPrecoring { entwining: e, name } => {
            let w = entwining(&inst, e)?;
            let (image, c) = coring_from_weak_via_precoring(w)?;
            let direct = coring_from_weak(w)?;
            let same = image.same_as(&direct.image)
                && c.bimodule() == direct.coring.bimodule()
                && c.coproduct() == direct.coring.coproduct()
                && c.counit() == direct.coring.counit();
            let mut extra = Map::new();
            extra.insert("rank".into(), json!(image.dim()));
            extra.insert("matches_direct_route".into(), json!(same));
            let name = fresh(&inst, name.as_ref(), format!("precoring_{e}"))?;
            built(inst, name, c, extra)
        }
        Build::Schneider { comodule_algebra, name } => {
            let ca = inst
                .comodule_algebras
                .get(comodule_algebra)
                .ok_or_else(|| Failure::usage(format!("no comodule algebra named {comodule_algebra:?}")))?;
            let s = schneider_coring(ca)?;
            let name = fresh(&inst, name.as_ref(), format!("schneider_{comodule_algebra}"))?;
            let b = inst.adopt_algebra(&format!("{name}_B"), s.coinvariants.algebra.clone());
            let mut extra = Map::new();
            extra.insert("coinvariants".into(), json!({ "name": b, "basis": vectors(&s.coinvariants.space.basis_vectors()) }));
            extra.insert("space".into(), vectors(&s.space.basis_vectors()));
            built(inst, name, s.coring, extra)
        }
        Build::CringEntwining { entwining: e, name } => {
            let r = cring_from_entwining(entwining(&inst, e)?)?;
            let name = fresh(&inst, name.as_ref(), format!("cring_{e}"))?;
            let result = json!({ "name": name, "cring": cring_summary(&r)? });
            inst.crings.insert(name, r);
            Ok(Done {
                result,
                undecided: false,
                extended: Some(inst),
            })
        }
        Build::CringSurjection { morphism, name } => {
            let pi = inst
                .coalgebra_morphisms
                .get(morphism)
                .ok_or_else(|| Failure::usage(format!("no coalgebra morphism named {morphism:?}")))?;
            let r = cring_from_surjection(pi)?;
            let name = fresh(&inst, name.as_ref(), format!("cring_{morphism}"))?;
            let result = json!({ "name": name, "cring": cring_summary(&r)? });
            inst.crings.insert(name, r);
            Ok(Done {
                result,
                undecided: false,
                extended: Some(inst),
            })
        }
        Build::CringQuotient { cring: rn, character, name } => {
            let r = cring(&inst, rn)?;
            let kappa = vector_in(&inst, character, rn)?;
            let q = invariants_coideal(r, kappa)?;
            let name = fresh(&inst, name.as_ref(), format!("quotient_{rn}_{character}"))?;
            let proj = format!("{name}_projection");
            if inst.coalgebra_morphisms.contains_key(&proj) || inst.algebra_morphisms.contains_key(&proj) {
                return Err(Failure::usage(format!("name {proj:?} is already used")));
            }
            let result = json!({
                "name": name,
                "projection": proj,
                "action": matrix(&q.action),
                "module_valid": q.module_valid,
                "coideal": vectors(&q.coideal.basis_vectors()),
                "quotient_dim": q.quotient.dim(),
                "quotient_validation": validation(&q.quotient.validate()),
                "projection_validation": validation(&q.projection.validate()),
                "comult": matrix(q.quotient.delta()),
                "counit": vector(q.quotient.counit()),
            });
            inst.coalgebras.insert(name, q.quotient.clone());
            inst.coalgebra_morphisms.insert(proj, q.projection);
            Ok(Done {
                result,
                undecided: false,
                extended: Some(inst),
            })
        }
    }
}

fn status_name(v: &FrobeniusVerdict) -> &'static str {
    match v.status {
        FrobeniusStatus::Frobenius => "frobenius",
        FrobeniusStatus::NotProjective => "not projective",
        FrobeniusStatus::NoBijectiveE => "no bijective e",
    }
}

pub fn frobenius_value(v: &FrobeniusVerdict) -> Value {
    let status = status_name(v);
    let search = match v.search {
        Search::Exhaustive => "exhaustive",
        Search::Grid => "grid",
        Search::Sampled => "sampled",
        Search::None => "none",
    };
    let projective = match &v.projective {
        Ok(db) => json!({
            "projective": true,
            "functionals": db.functionals.iter().map(matrix).collect::<Vec<_>>(),
            "generators": vectors(&db.generators),
        }),
        Err(w) => json!({ "projective": false, "rank_witness": rank_witness(w) }),
    };
    json!({
        "verdict": status,
        "projectivity": projective,
        "invariants_dim": v.invariants_dim,
        "dual_ring_dim": v.dual.as_ref().map(|d| d.dim()),
        "e": v.e.as_deref().map(vector),
        "phi": v.phi.as_ref().map(matrix),
        "phi_inverse": v.phi_inverse.as_ref().map(matrix),
        "search": search,
        "candidates": v.candidates,
        "probabilistic": v.is_probabilistic(),
    })
}

fn equivalence_value(r: &EquivalenceReport) -> Value {
    json!({
        "galois": r.galois,
        "family_equivalence": r.family_equivalence,
        "flat_sufficient": r.flat_sufficient,
        "faithful_flatness": EquivalenceReport::FAITHFUL_FLATNESS,
        "members": r.members,
        "failures": r.failures,
    })
}

/// A failure in the family is a decided negative; a positive is decided
/// only when the sufficient condition holds.
pub fn equivalence_undecided(r: &EquivalenceReport) -> bool {
    r.failures.is_empty() && !(r.galois && r.flat_sufficient)
}

fn separable_value(c: &Coring) -> Result<Value, Failure> {
    Ok(match check_induction_separable(c)? {
        Ok(cert) => json!({ "verdict": "separable", "e": vector(&cert.e), "solution_dim": cert.solution_dim }),
        Err(w) => json!({ "verdict": "not separable", "rank_witness": rank_witness(&w) }),
    })
}

fn coseparable_value(c: &Coring) -> Result<Value, Failure> {
    Ok(match check_forgetful_separable(c)? {
        Ok(g) => {
            let pi = cosep_idempotent(c, &g)?;
            json!({
                "verdict": "coseparable",
                "gamma": matrix(&g.gamma),
                "solution_dim": g.solution_dim,
                "pi": matrix(&pi.pi),
                "pi_validation": validation(&validate_cosep(c, &pi.pi)),
            })
        }
        Err(w) => json!({ "verdict": "not coseparable", "rank_witness": rank_witness(&w) }),
    })
}

fn dual_values(r: &CRing) -> Result<(Value, Value), Failure> {
    let ind = match check_dual_induction_separable(r)? {
        Ok(d) => json!({ "verdict": "separable", "e": matrix(&d.e), "solution_dim": d.solution_dim }),
        Err(w) => json!({ "verdict": "not separable", "rank_witness": rank_witness(&w) }),
    };
    let forg = match check_dual_forgetful_separable(r)? {
        Ok(d) => json!({ "verdict": "separable", "gamma": matrix(&d.gamma), "solution_dim": d.solution_dim }),
        Err(w) => json!({ "verdict": "not separable", "rank_witness": rank_witness(&w) }),
    };
    Ok((ind, forg))
}

fn options(g: &Global, symbolic_det: bool) -> FrobeniusOptions {
    FrobeniusOptions {
        seed: g.seed,
        retries: g.retries,
        symbolic_det,
    }
}

fn check(c: &Check, g: &Global, inst: &Instance) -> Outcome {
    match c {
        Check::SeparableInduction { coring: n } => Ok(Done::decided(separable_value(coring(inst, n)?)?)),
        Check::Coseparable { coring: n } => Ok(Done::decided(coseparable_value(coring(inst, n)?)?)),
        Check::Frobenius { coring: n, symbolic_det } => {
            let v = check_frobenius(coring(inst, n)?, options(g, *symbolic_det))?;
            Ok(Done {
                result: frobenius_value(&v),
                undecided: v.is_probabilistic(),
                extended: None,
            })
        }
        Check::Galois { coring: n, grouplike } => {
            let c = coring(inst, n)?;
            let gd = galois_check(c, vector_in(inst, grouplike, n)?)?;
            Ok(Done::decided(json!({
                "verdict": if gd.is_galois() { "galois" } else { "not galois" },
                "coinvariants": vectors(&gd.descent.b.space.basis_vectors()),
                "tensor_dim": gd.chi.cols(),
                "coring_dim": c.dim(),
                "chi": matrix(&gd.chi),
                "chi_inverse": gd.chi_inverse.as_ref().map(matrix),
                "bilinear": gd.bilinear,
                "coproduct_compatible": gd.coproduct_compatible,
                "counit_compatible": gd.counit_compatible,
                "warnings": gd.warnings,
            })))
        }
        Check::Equivalence { coring: n, grouplike, size } => {
            let r = equivalence_check(coring(inst, n)?, vector_in(inst, grouplike, n)?, *size, g.seed)?;
            Ok(Done {
                result: equivalence_value(&r),
                undecided: equivalence_undecided(&r),
                extended: None,
            })
        }
        Check::DualSeparableInduction { cring: n } => Ok(Done::decided(dual_values(cring(inst, n)?)?.0)),
        Check::DualSeparableForgetful { cring: n } => Ok(Done::decided(dual_values(cring(inst, n)?)?.1)),
    }
}

/// Vectors of the table that live in `owner`, in name order.
fn candidates(inst: &Instance, owner: &str) -> Vec<Vec<Scalar>> {
    inst.vectors.values().filter(|v| v.owner == owner).map(|v| v.coords.clone()).collect()
}

fn algebra_table(a: &Algebra) -> Value {
    let d = a.dim();
    json!({
        "dim": d,
        "mult": (0..d).map(|i| (0..d).map(|j| vector(a.product(i, j))).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "unit": vector(a.unit()),
    })
}

fn find(f: &Find, g: &Global, inst: &Instance) -> Outcome {
    match f {
        Find::Grouplikes { coring: n } => {
            let c = coring(inst, n)?;
            let s = find_grouplikes(c, &candidates(inst, n), g.budget.unwrap_or(DEFAULT_BUDGET));
            Ok(Done {
                result: json!({ "grouplikes": vectors(&s.grouplikes), "exhaustive": s.exhaustive, "examined": s.examined }),
                undecided: !s.exhaustive,
                extended: None,
            })
        }
        Find::Invariants { coring: n } => {
            let inv = bimodule_invariants(coring(inst, n)?.bimodule())?;
            Ok(Done::decided(json!({ "dim": inv.dim(), "basis": vectors(&inv.basis_vectors()) })))
        }
        Find::Coinvariants { coring: n, grouplike } => {
            let b = coinvariant_ring(coring(inst, n)?, vector_in(inst, grouplike, n)?)?;
            Ok(Done::decided(json!({
                "dim": b.dim(),
                "basis": vectors(&b.space.basis_vectors()),
                "algebra": algebra_table(&b.algebra),
            })))
        }
        Find::DualRing { coring: n } => {
            let d = dual_ring(coring(inst, n)?)?;
            Ok(Done::decided(json!({
                "dim": d.dim(),
                "basis": d.hom.basis.iter().map(matrix).collect::<Vec<_>>(),
                "algebra": algebra_table(&d.algebra),
                "iota": matrix(&d.iota.matrix),
            })))
        }
    }
}

fn split_epi(inst: &Instance, cn: &str, source: &str, target: &str, f: &str, s: &str) -> Outcome {
    let c = coring(inst, cn)?;
    let m = &comodule(inst, source, cn)?.comodule;
    let n = &comodule(inst, target, cn)?.comodule;
    let (fm, sm) = (map(inst, f)?, map(inst, s)?);
    let gamma = match check_forgetful_separable(c)? {
        Ok(g) => g,
        Err(w) => {
            return Err(Failure::precondition(format!(
                "coring {cn:?} has no cointegral (rank {} < augmented rank {})",
                w.rank, w.augmented_rank
            )))
        }
    };
    let split = maschke_split(c, &gamma, m, n, fm, sm)?;
    Ok(Done::decided(json!({
        "section": matrix(&split),
        "gamma": matrix(&gamma.gamma),
        "retraction": (fm * &split).is_identity(),
        "colinear": n.is_comodule_map(m, &split),
    })))
}

fn full_report(g: &Global, inst: &Instance) -> Outcome {
    let mut undecided = false;
    let mut corings = Map::new();
    for (n, c) in &inst.corings {
        let fv = check_frobenius(c, options(g, false))?;
        undecided |= fv.is_probabilistic();
        let gs = find_grouplikes(c, &candidates(inst, n), g.budget.unwrap_or(DEFAULT_BUDGET));
        undecided |= !gs.exhaustive;
        let verdict = |v: Value| v["verdict"].clone();
        corings.insert(
            n.clone(),
            json!({
                "dim": c.dim(),
                "algebra_dim": c.algebra().dim(),
                "separable_induction": verdict(separable_value(c)?),
                "coseparable": verdict(coseparable_value(c)?),
                "frobenius": { "verdict": status_name(&fv), "search": frobenius_value(&fv)["search"].clone() },
                "grouplikes": { "count": gs.grouplikes.len(), "exhaustive": gs.exhaustive },
            }),
        );
    }
    let mut crings = Map::new();
    for (n, r) in &inst.crings {
        let (ind, forg) = dual_values(r)?;
        crings.insert(
            n.clone(),
            json!({
                "dim": r.dim(),
                "dual_separable_induction": ind["verdict"].clone(),
                "dual_separable_forgetful": forg["verdict"].clone(),
            }),
        );
    }
    Ok(Done {
        result: json!({ "field": inst.field.to_string(), "corings": corings, "crings": crings }),
        undecided,
        extended: None,
    })
}
