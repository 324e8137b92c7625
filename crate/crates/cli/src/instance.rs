//! The JSON instance format: a field and named tables of objects that refer
//! to each other by name.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use corings::algebra::{Algebra, AlgebraMorphism, Bimodule};
use corings::coalgebra::{Coalgebra, CoalgebraMorphism, Comodule};
use corings::coring::{canonical_coring, Coring, CoringComodule};
use corings::cring::CRing;
use corings::entwining::{coring_from_entwining, coring_from_weak, ComoduleAlgebra, Entwining};
use corings::linalg::{Field, Matrix, Scalar};
use corings::validation::Validation;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unresolved reference {name:?} at {at}")]
    Unresolved { name: String, at: String },
    #[error("{at}: {message}")]
    Shape { at: String, message: String },
    #[error("{at} violates its axioms: {report}")]
    Axiom { at: String, report: Validation },
}

type Result<T> = std::result::Result<T, LoadError>;

/// A scalar literal: an integer, or `"n"` / `"n/d"` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawScalar {
    pub num: BigInt,
    pub den: BigInt,
}

impl RawScalar {
    fn parse(s: &str) -> std::result::Result<RawScalar, String> {
        let bad = || format!("bad scalar literal {s:?}");
        let (n, d) = match s.split_once('/') {
            None => (BigInt::from_str(s.trim()).map_err(|_| bad())?, BigInt::one()),
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
        };
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        if d.is_negative() || !n.gcd(&d).is_one() {
            return Err(format!("{s:?} is not in lowest terms"));
        }
        Ok(RawScalar { num: n, den: d })
    }

    pub fn from_scalar(x: &Scalar) -> RawScalar {
        let (num, den) = x.numer_denom();
        RawScalar { num, den }
    }

    pub fn to_scalar(&self, f: Field) -> std::result::Result<Scalar, String> {
        f.from_ratio(&self.num, &self.den).map_err(|e| e.to_string())
    }
}

impl<'de> Deserialize<'de> for RawScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RawScalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string \"n\" or \"n/d\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RawScalar, E> {
                Ok(RawScalar { num: v.into(), den: BigInt::one() })
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RawScalar, E> {
                Ok(RawScalar { num: v.into(), den: BigInt::one() })
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RawScalar, E> {
                RawScalar::parse(v).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for RawScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.den.is_one() {
            if let Some(n) = self.num.to_i64() {
                return s.serialize_i64(n);
            }
            return s.serialize_str(&self.num.to_string());
        }
        s.serialize_str(&format!("{}/{}", self.num, self.den))
    }
}

pub type RawMatrix = Vec<Vec<RawScalar>>;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldSpec {
    Q,
    Fp { p: u32 },
}

impl FieldSpec {
    pub fn field(&self) -> std::result::Result<Field, String> {
        match self {
            FieldSpec::Q => Ok(Field::Rationals),
            FieldSpec::Fp { p } => Field::prime(*p).map_err(|e| e.to_string()),
        }
    }

    pub fn of(f: Field) -> FieldSpec {
        match f {
            Field::Rationals => FieldSpec::Q,
            Field::Prime(p) => FieldSpec::Fp { p },
        }
    }

    /// `Q` or `F<p>`.
    pub fn parse(s: &str) -> std::result::Result<FieldSpec, String> {
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        s.strip_prefix('F')
            .and_then(|p| p.parse().ok())
            .map(|p| FieldSpec::Fp { p })
            .ok_or_else(|| format!("unknown field {s:?}; expected Q or F<p>"))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub mult: Vec<Vec<Vec<RawScalar>>>,
    pub unit: Vec<RawScalar>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraSpec {
    pub dim: usize,
    pub comult: Vec<Vec<Vec<RawScalar>>>,
    pub counit: Vec<RawScalar>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismKind {
    Algebra,
    Coalgebra,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub kind: MorphismKind,
    pub source: String,
    pub target: String,
    pub matrix: RawMatrix,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub left_actions: Vec<RawMatrix>,
    pub right_actions: Vec<RawMatrix>,
}

/// A bimodule by table name, or written out in place.
#[derive(Clone, Debug)]
pub enum BimoduleRef {
    Name(String),
    Inline(BimoduleSpec),
}

// Hand-written so that errors inside an inline bimodule keep their position.
impl<'de> Deserialize<'de> for BimoduleRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = BimoduleRef;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a bimodule name or a bimodule object")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BimoduleRef, E> {
                Ok(BimoduleRef::Name(v.to_string()))
            }
            fn visit_map<M: de::MapAccess<'de>>(self, map: M) -> std::result::Result<BimoduleRef, M::Error> {
                BimoduleSpec::deserialize(de::value::MapAccessDeserializer::new(map)).map(BimoduleRef::Inline)
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for BimoduleRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BimoduleRef::Name(n) => s.serialize_str(n),
            BimoduleRef::Inline(spec) => spec.serialize(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EntwiningSpec {
    pub algebra: String,
    pub coalgebra: String,
    pub psi: RawMatrix,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub weak: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleAlgebraSpec {
    pub algebra: String,
    pub coalgebra: String,
    pub rho: RawMatrix,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum CoringKind {
    /// `bimodule`, `lift` and `counit` given.
    Explicit,
    /// `A ⊗_B A` of the algebra morphism `extension`.
    Canonical,
    /// `coalgebra` over the ground field.
    FromCoalgebra,
    /// `A⊗C` of `entwining`.
    FromEntwining,
    /// `Im p` of the weak `entwining`.
    FromWeak,
}

/// The fields used depend on `kind`; the others must be absent.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CoringSpec {
    pub kind: CoringKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entwining: Option<String>,
}

impl CoringSpec {
    fn fields(&self) -> [(&'static str, bool); 6] {
        [
            ("bimodule", self.bimodule.is_some()),
            ("lift", self.lift.is_some()),
            ("counit", self.counit.is_some()),
            ("extension", self.extension.is_some()),
            ("coalgebra", self.coalgebra.is_some()),
            ("entwining", self.entwining.is_some()),
        ]
    }

    fn check_fields(&self, at: &str) -> Result<()> {
        let wanted: &[&str] = match self.kind {
            CoringKind::Explicit => &["bimodule", "lift", "counit"],
            CoringKind::Canonical => &["extension"],
            CoringKind::FromCoalgebra => &["coalgebra"],
            CoringKind::FromEntwining | CoringKind::FromWeak => &["entwining"],
        };
        for (name, present) in self.fields() {
            match (wanted.contains(&name), present) {
                (true, false) => return Err(shape(at, format!("missing field {name:?} for kind {:?}", self.kind))),
                (false, true) => return Err(shape(at, format!("field {name:?} does not apply to kind {:?}", self.kind))),
                _ => {}
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleSpec {
    pub coring: String,
    pub module: BimoduleRef,
    pub lift: RawMatrix,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CRingSpec {
    pub coalgebra: String,
    pub dim: usize,
    pub left: RawMatrix,
    pub right: RawMatrix,
    /// On all of `𝒜 ⊗ 𝒜`; only its values on the cotensor matter.
    pub product: RawMatrix,
    pub unit: RawMatrix,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSpec {
    /// The coring or C-ring the vector lives in.
    #[serde(rename = "in")]
    pub owner: String,
    pub coords: Vec<RawScalar>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coalgebras: BTreeMap<String, CoalgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub entwinings: BTreeMap<String, EntwiningSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodule_algebras: BTreeMap<String, ComoduleAlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub corings: BTreeMap<String, CoringSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodules: BTreeMap<String, ComoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crings: BTreeMap<String, CRingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, VectorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, RawMatrix>,
}

/// The name every instance may use for the ground field as an algebra.
pub const GROUND: &str = "k";

#[derive(Clone, Debug)]
pub struct NamedComodule {
    pub coring: String,
    pub comodule: CoringComodule,
}

#[derive(Clone, Debug)]
pub struct NamedVector {
    pub owner: String,
    pub coords: Vec<Scalar>,
}

/// Every object of a document, constructed and validated.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: Field,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub coalgebras: BTreeMap<String, Arc<Coalgebra>>,
    pub algebra_morphisms: BTreeMap<String, AlgebraMorphism>,
    pub coalgebra_morphisms: BTreeMap<String, CoalgebraMorphism>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub entwinings: BTreeMap<String, Entwining>,
    pub weak: Vec<String>,
    pub comodule_algebras: BTreeMap<String, ComoduleAlgebra>,
    pub corings: BTreeMap<String, Coring>,
    pub comodules: BTreeMap<String, NamedComodule>,
    pub crings: BTreeMap<String, CRing>,
    pub vectors: BTreeMap<String, NamedVector>,
    pub maps: BTreeMap<String, Matrix>,
}

fn shape(at: &str, message: impl Into<String>) -> LoadError {
    LoadError::Shape {
        at: at.to_string(),
        message: message.into(),
    }
}

fn require(at: &str, v: Validation) -> Result<()> {
    if v.is_valid() {
        Ok(())
    } else {
        Err(LoadError::Axiom { at: at.to_string(), report: v })
    }
}

fn lib(at: &str) -> impl Fn(corings::error::Error) -> LoadError + '_ {
    move |e| shape(at, e.to_string())
}

fn scalars(f: Field, at: &str, v: &[RawScalar]) -> Result<Vec<Scalar>> {
    v.iter().map(|x| x.to_scalar(f).map_err(|m| shape(at, m))).collect()
}

/// Converts with a known shape; an empty list is a matrix with zero rows.
pub fn matrix(f: Field, at: &str, m: &RawMatrix, rows: usize, cols: usize) -> Result<Matrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        let got_cols = m.first().map_or(0, Vec::len);
        return Err(shape(at, format!("matrix is {}x{got_cols}, expected {rows}x{cols}", m.len())));
    }
    let rows_s = m.iter().map(|r| scalars(f, at, r)).collect::<Result<Vec<_>>>()?;
    if rows == 0 {
        return Ok(Matrix::zeros(f, 0, cols));
    }
    Matrix::from_rows(f, rows_s).map_err(|e| shape(at, e.to_string()))
}

fn matrix_any(f: Field, at: &str, m: &RawMatrix) -> Result<Matrix> {
    let cols = m.first().map_or(0, Vec::len);
    matrix(f, at, m, m.len(), cols)
}

pub fn raw_matrix(m: &Matrix) -> RawMatrix {
    (0..m.rows()).map(|r| m.row(r).iter().map(RawScalar::from_scalar).collect()).collect()
}

fn raw_vector(v: &[Scalar]) -> Vec<RawScalar> {
    v.iter().map(RawScalar::from_scalar).collect()
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

impl Instance {
    pub fn load(path: &str, field_override: Option<&FieldSpec>) -> Result<(Instance, Vec<u8>)> {
        let bytes = std::fs::read(path).map_err(|source| LoadError::Io {
            path: path.to_string(),
            source,
        })?;
        let text = String::from_utf8_lossy(&bytes);
        let mut doc = Document::parse(&text)?;
        if let Some(f) = field_override {
            doc.field = f.clone();
        }
        Ok((Instance::build(&doc)?, bytes))
    }

    pub fn algebra(&self, name: &str, at: &str) -> Result<Arc<Algebra>> {
        if name == GROUND {
            return Ok(Arc::new(Algebra::ground(self.field)));
        }
        self.algebras.get(name).cloned().ok_or_else(|| LoadError::Unresolved {
            name: name.to_string(),
            at: at.to_string(),
        })
    }

    fn coalgebra(&self, name: &str, at: &str) -> Result<Arc<Coalgebra>> {
        self.coalgebras.get(name).cloned().ok_or_else(|| LoadError::Unresolved {
            name: name.to_string(),
            at: at.to_string(),
        })
    }

    fn bimodule_from(&self, spec: &BimoduleSpec, at: &str) -> Result<Bimodule> {
        let f = self.field;
        let l = self.algebra(&spec.left, at)?;
        let r = self.algebra(&spec.right, at)?;
        let n = spec.dim;
        let conv = |ms: &[RawMatrix], side: &str| -> Result<Vec<Matrix>> {
            ms.iter()
                .enumerate()
                .map(|(i, m)| matrix(f, &format!("{at}.{side}[{i}]"), m, n, n))
                .collect()
        };
        let b = Bimodule::new(l, r, n, conv(&spec.left_actions, "left_actions")?, conv(&spec.right_actions, "right_actions")?)
            .map_err(lib(at))?;
        require(at, b.validate())?;
        Ok(b)
    }

    fn bimodule_ref(&self, r: &BimoduleRef, at: &str) -> Result<Bimodule> {
        match r {
            BimoduleRef::Name(n) => self.bimodules.get(n).cloned().ok_or_else(|| LoadError::Unresolved {
                name: n.clone(),
                at: at.to_string(),
            }),
            BimoduleRef::Inline(spec) => self.bimodule_from(spec, at),
        }
    }

    pub fn build(doc: &Document) -> Result<Instance> {
        let f = doc.field.field().map_err(|m| shape("field", m))?;
        let mut inst = Instance {
            field: f,
            algebras: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            algebra_morphisms: BTreeMap::new(),
            coalgebra_morphisms: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            entwinings: BTreeMap::new(),
            weak: Vec::new(),
            comodule_algebras: BTreeMap::new(),
            corings: BTreeMap::new(),
            comodules: BTreeMap::new(),
            crings: BTreeMap::new(),
            vectors: BTreeMap::new(),
            maps: BTreeMap::new(),
        };
        for (name, a) in &doc.algebras {
            let at = format!("algebras.{name}");
            if name == GROUND {
                return Err(shape(&at, format!("{GROUND:?} is reserved for the ground field")));
            }
            if a.mult.len() != a.dim || a.mult.iter().any(|r| r.len() != a.dim || r.iter().any(|v| v.len() != a.dim)) {
                return Err(shape(&at, format!("mult must be {0}x{0}x{0}", a.dim)));
            }
            let mult = a
                .mult
                .iter()
                .map(|r| r.iter().map(|v| scalars(f, &at, v)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let unit = scalars(f, &at, &a.unit)?;
            let alg = Algebra::new(f, mult, unit).map_err(lib(&at))?;
            require(&at, alg.validate())?;
            inst.algebras.insert(name.clone(), Arc::new(alg));
        }
        for (name, c) in &doc.coalgebras {
            let at = format!("coalgebras.{name}");
            if c.comult.len() != c.dim || c.comult.iter().any(|r| r.len() != c.dim || r.iter().any(|v| v.len() != c.dim)) {
                return Err(shape(&at, format!("comult must be {0}x{0}x{0}", c.dim)));
            }
            let comult = c
                .comult
                .iter()
                .map(|r| r.iter().map(|v| scalars(f, &at, v)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let co = Coalgebra::new(f, comult, scalars(f, &at, &c.counit)?).map_err(lib(&at))?;
            require(&at, co.validate())?;
            inst.coalgebras.insert(name.clone(), Arc::new(co));
        }
        for (name, m) in &doc.morphisms {
            let at = format!("morphisms.{name}");
            let (source, target, raw) = (&m.source, &m.target, &m.matrix);
            match m.kind {
                MorphismKind::Algebra => {
                    let (s, t) = (inst.algebra(source, &at)?, inst.algebra(target, &at)?);
                    let mat = matrix(f, &at, raw, t.dim(), s.dim())?;
                    let mor = AlgebraMorphism::new(s, t, mat).map_err(lib(&at))?;
                    require(&at, mor.validate())?;
                    inst.algebra_morphisms.insert(name.clone(), mor);
                }
                MorphismKind::Coalgebra => {
                    let (s, t) = (inst.coalgebra(source, &at)?, inst.coalgebra(target, &at)?);
                    let mat = matrix(f, &at, raw, t.dim(), s.dim())?;
                    let mor = CoalgebraMorphism::new(s, t, mat).map_err(lib(&at))?;
                    require(&at, mor.validate())?;
                    inst.coalgebra_morphisms.insert(name.clone(), mor);
                }
            }
        }
        for (name, b) in &doc.bimodules {
            let at = format!("bimodules.{name}");
            let bm = inst.bimodule_from(b, &at)?;
            inst.bimodules.insert(name.clone(), bm);
        }
        for (name, e) in &doc.entwinings {
            let at = format!("entwinings.{name}");
            let (a, c) = (inst.algebra(&e.algebra, &at)?, inst.coalgebra(&e.coalgebra, &at)?);
            let psi = matrix(f, &at, &e.psi, a.dim() * c.dim(), c.dim() * a.dim())?;
            let ent = Entwining::new(a, c, psi).map_err(lib(&at))?;
            if e.weak {
                require(&at, ent.validate_weak())?;
                inst.weak.push(name.clone());
            } else {
                require(&at, ent.validate())?;
            }
            inst.entwinings.insert(name.clone(), ent);
        }
        for (name, r) in &doc.comodule_algebras {
            let at = format!("comodule_algebras.{name}");
            let (a, c) = (inst.algebra(&r.algebra, &at)?, inst.coalgebra(&r.coalgebra, &at)?);
            let rho = matrix(f, &at, &r.rho, a.dim() * c.dim(), a.dim())?;
            let m = Comodule::right(c.clone(), a.dim(), rho.clone()).map_err(lib(&at))?;
            require(&at, m.validate())?;
            let ca = ComoduleAlgebra::new(a, c, rho).map_err(lib(&at))?;
            inst.comodule_algebras.insert(name.clone(), ca);
        }
        for (name, c) in &doc.corings {
            let at = format!("corings.{name}");
            let unresolved = |n: &String| LoadError::Unresolved {
                name: n.clone(),
                at: at.clone(),
            };
            c.check_fields(&at)?;
            let coring = match c.kind {
                CoringKind::Explicit => {
                    let (bimodule, lift, counit) = (c.bimodule.as_ref().unwrap(), c.lift.as_ref().unwrap(), c.counit.as_ref().unwrap());
                    let bm = inst.bimodule_ref(bimodule, &at)?;
                    let n = bm.dim();
                    let d = bm.left_algebra.dim();
                    let l = matrix(f, &format!("{at}.lift"), lift, n * n, n)?;
                    let e = matrix(f, &format!("{at}.counit"), counit, d, n)?;
                    Coring::new(bm, l, e).map_err(lib(&at))?
                }
                CoringKind::Canonical => {
                    let extension = c.extension.as_ref().unwrap();
                    let ext = inst.algebra_morphisms.get(extension).ok_or_else(|| unresolved(extension))?;
                    canonical_coring(ext).map_err(lib(&at))?.coring
                }
                CoringKind::FromCoalgebra => Coring::from_coalgebra(&*inst.coalgebra(c.coalgebra.as_ref().unwrap(), &at)?),
                CoringKind::FromEntwining => {
                    let entwining = c.entwining.as_ref().unwrap();
                    let e = inst.entwinings.get(entwining).ok_or_else(|| unresolved(entwining))?;
                    coring_from_entwining(e).map_err(lib(&at))?
                }
                CoringKind::FromWeak => {
                    let entwining = c.entwining.as_ref().unwrap();
                    let e = inst.entwinings.get(entwining).ok_or_else(|| unresolved(entwining))?;
                    coring_from_weak(e).map_err(lib(&at))?.coring
                }
            };
            require(&at, coring.validate())?;
            inst.corings.insert(name.clone(), coring);
        }
        for (name, m) in &doc.comodules {
            let at = format!("comodules.{name}");
            let c = inst.corings.get(&m.coring).ok_or_else(|| LoadError::Unresolved {
                name: m.coring.clone(),
                at: at.clone(),
            })?;
            let module = inst.bimodule_ref(&m.module, &at)?;
            let lift = matrix(f, &format!("{at}.lift"), &m.lift, module.dim() * c.dim(), module.dim())?;
            let cm = CoringComodule::new(c, module, lift).map_err(lib(&at))?;
            require(&at, cm.validate(c))?;
            inst.comodules.insert(
                name.clone(),
                NamedComodule {
                    coring: m.coring.clone(),
                    comodule: cm,
                },
            );
        }
        for (name, r) in &doc.crings {
            let at = format!("crings.{name}");
            let c = inst.coalgebra(&r.coalgebra, &at)?;
            let (n, nc) = (r.dim, c.dim());
            let left = matrix(f, &format!("{at}.left"), &r.left, nc * n, n)?;
            let right = matrix(f, &format!("{at}.right"), &r.right, n * nc, n)?;
            let full = matrix(f, &format!("{at}.product"), &r.product, n, n * n)?;
            let unit = matrix(f, &format!("{at}.unit"), &r.unit, n, nc)?;
            let bic = Comodule::new(c, n, Some(left), Some(right)).map_err(lib(&at))?;
            let square = corings::coalgebra::cotensor(&bic, &bic).map_err(lib(&at))?;
            let ring = CRing::new(bic, &full * square.inclusion(), unit).map_err(lib(&at))?;
            require(&at, ring.validate().map_err(lib(&at))?)?;
            inst.crings.insert(name.clone(), ring);
        }
        for (name, v) in &doc.vectors {
            let at = format!("vectors.{name}");
            let dim = if let Some(c) = inst.corings.get(&v.owner) {
                c.dim()
            } else if let Some(r) = inst.crings.get(&v.owner) {
                r.dim()
            } else {
                return Err(LoadError::Unresolved {
                    name: v.owner.clone(),
                    at,
                });
            };
            if v.coords.len() != dim {
                return Err(shape(&at, format!("vector has length {}, expected {dim}", v.coords.len())));
            }
            inst.vectors.insert(
                name.clone(),
                NamedVector {
                    owner: v.owner.clone(),
                    coords: scalars(f, &at, &v.coords)?,
                },
            );
        }
        for (name, m) in &doc.maps {
            let at = format!("maps.{name}");
            inst.maps.insert(name.clone(), matrix_any(f, &at, m)?);
        }
        Ok(inst)
    }

    /// The name of an algebra in the table, `k` for the ground field.
    pub fn algebra_name(&self, a: &Algebra) -> Option<String> {
        if a.dim() == 1 && *a == Algebra::ground(self.field) && !self.algebras.values().any(|x| **x == *a) {
            return Some(GROUND.to_string());
        }
        self.algebras.iter().find(|(_, x)| ***x == *a).map(|(n, _)| n.clone())
    }

    pub fn coalgebra_name(&self, c: &Coalgebra) -> Option<String> {
        self.coalgebras.iter().find(|(_, x)| ***x == *c).map(|(n, _)| n.clone())
    }

    /// Registers `a` under `name` unless an equal algebra is already present.
    pub fn adopt_algebra(&mut self, name: &str, a: Arc<Algebra>) -> String {
        if let Some(n) = self.algebra_name(&a) {
            return n;
        }
        self.algebras.insert(name.to_string(), a);
        name.to_string()
    }

    pub fn bimodule_spec(&self, b: &Bimodule) -> Option<BimoduleSpec> {
        Some(BimoduleSpec {
            left: self.algebra_name(&b.left_algebra)?,
            right: self.algebra_name(&b.right_algebra)?,
            dim: b.dim(),
            left_actions: b.left_actions().iter().map(raw_matrix).collect(),
            right_actions: b.right_actions().iter().map(raw_matrix).collect(),
        })
    }

    pub fn coring_spec(&self, c: &Coring) -> Option<CoringSpec> {
        Some(CoringSpec {
            kind: CoringKind::Explicit,
            bimodule: Some(BimoduleRef::Inline(self.bimodule_spec(c.bimodule())?)),
            lift: Some(raw_matrix(c.lift())),
            counit: Some(raw_matrix(c.counit())),
            extension: None,
            coalgebra: None,
            entwining: None,
        })
    }

    pub fn cring_spec(&self, r: &CRing) -> Option<CRingSpec> {
        Some(CRingSpec {
            coalgebra: self.coalgebra_name(&r.coalgebra)?,
            dim: r.dim(),
            left: raw_matrix(r.left()),
            right: raw_matrix(r.right()),
            product: raw_matrix(&r.product_full()),
            unit: raw_matrix(&r.unit),
        })
    }

    /// Every object written out explicitly.
    pub fn to_document(&self) -> Document {
        let algebras = self
            .algebras
            .iter()
            .map(|(n, a)| {
                let d = a.dim();
                let mult = (0..d)
                    .map(|i| (0..d).map(|j| raw_vector(&a.mul(&a.basis_vector(i), &a.basis_vector(j)))).collect())
                    .collect();
                (n.clone(), AlgebraSpec { dim: d, mult, unit: raw_vector(a.unit()) })
            })
            .collect();
        let coalgebras = self
            .coalgebras
            .iter()
            .map(|(n, c)| {
                let d = c.dim();
                let comult = (0..d)
                    .map(|i| {
                        let dc = c.delta().column(i);
                        (0..d).map(|j| raw_vector(&dc[j * d..(j + 1) * d])).collect()
                    })
                    .collect();
                (n.clone(), CoalgebraSpec { dim: d, comult, counit: raw_vector(c.counit()) })
            })
            .collect();
        let mut morphisms = BTreeMap::new();
        for (n, m) in &self.algebra_morphisms {
            morphisms.insert(
                n.clone(),
                MorphismSpec {
                    kind: MorphismKind::Algebra,
                    source: self.algebra_name(&m.source).expect("named source"),
                    target: self.algebra_name(&m.target).expect("named target"),
                    matrix: raw_matrix(&m.matrix),
                },
            );
        }
        for (n, m) in &self.coalgebra_morphisms {
            morphisms.insert(
                n.clone(),
                MorphismSpec {
                    kind: MorphismKind::Coalgebra,
                    source: self.coalgebra_name(&m.source).expect("named source"),
                    target: self.coalgebra_name(&m.target).expect("named target"),
                    matrix: raw_matrix(&m.matrix),
                },
            );
        }
        let entwinings = self
            .entwinings
            .iter()
            .map(|(n, e)| {
                (
                    n.clone(),
                    EntwiningSpec {
                        algebra: self.algebra_name(&e.algebra).expect("named algebra"),
                        coalgebra: self.coalgebra_name(&e.coalgebra).expect("named coalgebra"),
                        psi: raw_matrix(&e.psi),
                        weak: self.weak.contains(n),
                    },
                )
            })
            .collect();
        let comodule_algebras = self
            .comodule_algebras
            .iter()
            .map(|(n, r)| {
                (
                    n.clone(),
                    ComoduleAlgebraSpec {
                        algebra: self.algebra_name(&r.algebra).expect("named algebra"),
                        coalgebra: self.coalgebra_name(&r.coalgebra).expect("named coalgebra"),
                        rho: raw_matrix(&r.rho),
                    },
                )
            })
            .collect();
        Document {
            field: FieldSpec::of(self.field),
            algebras,
            coalgebras,
            morphisms,
            bimodules: self.bimodules.iter().map(|(n, b)| (n.clone(), self.bimodule_spec(b).expect("named algebras"))).collect(),
            entwinings,
            comodule_algebras,
            corings: self.corings.iter().map(|(n, c)| (n.clone(), self.coring_spec(c).expect("named algebra"))).collect(),
            comodules: self
                .comodules
                .iter()
                .map(|(n, m)| {
                    (
                        n.clone(),
                        ComoduleSpec {
                            coring: m.coring.clone(),
                            module: BimoduleRef::Inline(self.bimodule_spec(&m.comodule.module).expect("named algebras")),
                            lift: raw_matrix(m.comodule.lift()),
                        },
                    )
                })
                .collect(),
            crings: self.crings.iter().map(|(n, r)| (n.clone(), self.cring_spec(r).expect("named coalgebra"))).collect(),
            vectors: self
                .vectors
                .iter()
                .map(|(n, v)| {
                    (
                        n.clone(),
                        VectorSpec {
                            owner: v.owner.clone(),
                            coords: raw_vector(&v.coords),
                        },
                    )
                })
                .collect(),
            maps: self.maps.iter().map(|(n, m)| (n.clone(), raw_matrix(m))).collect(),
        }
    }
}
