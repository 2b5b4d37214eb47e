//! JSON model files: named algebras, subspaces, triples, bimodules and deformations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use crate::cbimod::{tensor3, Bimodule3};
use crate::classlim::{DeformedBimodule, DeformedRef, DeformedTriple};
use crate::coiso::{Triple, TripleRef};
use crate::exact_core::scalar::SUPPORTED_PRIMES;
use crate::exact_core::{Field, Mat, Subspace};
use crate::finalg::fixtures::{diagonal, field, kronecker, m2, t2, truncated_poly};
use crate::finalg::{left_ideal_generated, right_ideal_generated, two_sided_ideal_generated, validate_algebra, AlgRef, Algebra, PlainBimodule};
use crate::morita::standard_equivalence;
use crate::report::Report;

/// Ground field of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    Fp(u32),
}

impl FieldChoice {
    /// `"Q"`, `"F7"`, `"Fp:7"` or a bare prime.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Q);
        }
        let digits = s.trim_start_matches("Fp:").trim_start_matches("Fp").trim_start_matches('F');
        let p: u32 = digits.parse().map_err(|_| format!("unknown field `{s}`"))?;
        Self::prime(p)
    }

    pub fn prime(p: u32) -> Result<Self, String> {
        if SUPPORTED_PRIMES.contains(&p) {
            Ok(FieldChoice::Fp(p))
        } else {
            Err(format!("unsupported prime {p}; supported: {SUPPORTED_PRIMES:?}"))
        }
    }

    pub fn name(&self) -> String {
        match self {
            FieldChoice::Q => "Q".into(),
            FieldChoice::Fp(p) => format!("F{p}"),
        }
    }
}

/// Load-time failure, tagged with the offending field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ModelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ModelError {}

fn err(path: impl Into<String>, message: impl Into<String>) -> ModelError {
    ModelError { path: path.into(), message: message.into() }
}

fn invalid(path: impl Into<String>, r: &Report) -> ModelError {
    let first = r.failures().next().map(|c| format!("{} ({})", c.name, c.witness.clone().unwrap_or_default())).unwrap_or_default();
    err(path, format!("validation failed: {first}"))
}

#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(default)]
    field: Option<Value>,
    #[serde(default)]
    algebras: BTreeMap<String, Value>,
    #[serde(default)]
    subspaces: BTreeMap<String, Value>,
    #[serde(default)]
    triples: BTreeMap<String, Value>,
    #[serde(default)]
    bimodules: BTreeMap<String, Value>,
    #[serde(default)]
    deformed: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    dim: usize,
    unit: Vec<RawScalar>,
    structure: Vec<(usize, usize, usize, RawScalar)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBuiltin {
    builtin: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubspace {
    of: String,
    vectors: Vec<Vec<RawScalar>>,
    /// `"left"`, `"right"` or `"two-sided"`: take the generated ideal instead of the span.
    #[serde(default)]
    ideal: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParts {
    tot: String,
    n: String,
    zero: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlain {
    dim: usize,
    lact: Vec<Vec<Vec<RawScalar>>>,
    ract: Vec<Vec<Vec<RawScalar>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExplicit {
    left: String,
    right: String,
    tot: RawPlain,
    n: RawPlain,
    zero: Vec<Vec<RawScalar>>,
    iota: Vec<Vec<RawScalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStandard {
    standard: String,
    n: usize,
    #[serde(default)]
    dual: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDeformed {
    lambda: Vec<RawScalar>,
    order: usize,
}

/// The models shipped in `fixtures/`, by file name.
pub const SHIPPED: &[(&str, &str)] = &[
    ("m2_dirac.json", include_str!("../fixtures/m2_dirac.json")),
    ("cliff.json", include_str!("../fixtures/cliff.json")),
];

/// Every object of a model, validated.
#[derive(Clone, Debug)]
pub struct Workspace<F> {
    pub field: FieldChoice,
    pub algebras: BTreeMap<String, AlgRef<F>>,
    pub subspaces: BTreeMap<String, (String, Subspace<F>)>,
    pub triples: BTreeMap<String, TripleRef<F>>,
    pub bimodules: BTreeMap<String, Bimodule3<F>>,
    /// Keyed by triple name.
    pub deformed: BTreeMap<String, DeformedRef<F>>,
}

/// Reads the field choice without building anything; `default` applies when the model has none.
pub fn model_field(text: &str, default: FieldChoice) -> Result<FieldChoice, ModelError> {
    let raw = parse_raw(text)?;
    match raw.field {
        None => Ok(default),
        Some(v) => field_of(&v),
    }
}

fn parse_raw(text: &str) -> Result<RawModel, ModelError> {
    if text.trim().is_empty() {
        return Err(err("", "syntax error: empty model"));
    }
    serde_json::from_str(text).map_err(|e| err("", format!("syntax error at line {} column {}: {e}", e.line(), e.column())))
}

fn field_of(v: &Value) -> Result<FieldChoice, ModelError> {
    match v {
        Value::String(s) => FieldChoice::parse(s).map_err(|m| err("field", m)),
        Value::Object(m) => match m.get("Fp").and_then(Value::as_u64) {
            Some(p) if m.len() == 1 => FieldChoice::prime(p as u32).map_err(|m| err("field", m)),
            _ => Err(err("field", "expected \"Q\" or {\"Fp\": p}")),
        },
        _ => Err(err("field", "expected \"Q\" or {\"Fp\": p}")),
    }
}

fn scalar<F: Field>(s: &RawScalar, path: &str) -> Result<F, ModelError> {
    match s {
        RawScalar::Int(i) => Ok(F::from_i64(*i)),
        RawScalar::Text(t) => F::parse(t).map_err(|e| err(path, e.to_string())),
    }
}

fn vector<F: Field>(v: &[RawScalar], len: usize, path: &str) -> Result<Vec<F>, ModelError> {
    if v.len() != len {
        return Err(err(path, format!("expected {len} entries, found {}", v.len())));
    }
    v.iter().enumerate().map(|(i, s)| scalar(s, &format!("{path}[{i}]"))).collect()
}

fn matrix<F: Field>(rows: &[Vec<RawScalar>], nrows: usize, ncols: usize, path: &str) -> Result<Mat<F>, ModelError> {
    if rows.len() != nrows {
        return Err(err(path, format!("expected {nrows} rows, found {}", rows.len())));
    }
    let rows = rows.iter().enumerate().map(|(i, r)| vector(r, ncols, &format!("{path}[{i}]"))).collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_rows(&rows, ncols))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, path: &str) -> Result<T, ModelError> {
    T::deserialize(v).map_err(|e| err(path, e.to_string()))
}

/// An algebra in model-file form: `{dim, unit, structure}`.
pub fn algebra_entry<F: Field>(a: &Algebra<F>) -> Value {
    let st: Vec<Value> = a.structure().iter().map(|(i, j, k, c)| serde_json::json!([i, j, k, c.render()])).collect();
    serde_json::json!({ "dim": a.dim, "unit": a.unit.iter().map(F::render).collect::<Vec<_>>(), "structure": st })
}

/// Built-in algebras by name.
pub fn builtin_algebra<F: Field>(name: &str) -> Option<Algebra<F>> {
    let a = match name {
        "k" => field(),
        "T2" => t2(),
        "M2" => m2(),
        "Kron" => kronecker(),
        _ => {
            if let Some(n) = name.strip_prefix("k[x]/x^").and_then(|n| n.parse().ok()) {
                truncated_poly(n)
            } else {
                diagonal(name.strip_prefix("k^")?.parse().ok()?)
            }
        }
    };
    Some(a)
}

fn algebra<F: Field>(name: &str, v: &Value) -> Result<Algebra<F>, ModelError> {
    let path = format!("algebras.{name}");
    if v.get("builtin").is_some() {
        let b: RawBuiltin = from_value(v, &path)?;
        return builtin_algebra(&b.builtin).map(|a| a.with_label(name)).ok_or_else(|| err(&path, format!("unknown builtin `{}`", b.builtin)));
    }
    let raw: RawAlgebra = from_value(v, &path)?;
    let unit = vector(&raw.unit, raw.dim, &format!("{path}.unit"))?;
    let mut entries = Vec::with_capacity(raw.structure.len());
    for (n, (i, j, k, c)) in raw.structure.iter().enumerate() {
        if *i >= raw.dim || *j >= raw.dim || *k >= raw.dim {
            return Err(err(format!("{path}.structure[{n}]"), format!("index out of range for dim {}", raw.dim)));
        }
        entries.push((*i, *j, *k, scalar(c, &format!("{path}.structure[{n}]"))?));
    }
    let a = Algebra::from_sparse(raw.dim, unit, name, &entries);
    let r = validate_algebra(&a);
    if !r.passed() {
        return Err(invalid(path, &r));
    }
    Ok(a)
}

fn lookup<'a, T>(m: &'a BTreeMap<String, T>, name: &str, kind: &str, path: &str) -> Result<&'a T, ModelError> {
    m.get(name).ok_or_else(|| err(path, format!("unresolved {kind} `{name}`")))
}

fn plain<F: Field>(raw: &RawPlain, left: &AlgRef<F>, right: &AlgRef<F>, path: &str) -> Result<PlainBimodule<F>, ModelError> {
    let d = raw.dim;
    let mats = |ms: &[Vec<Vec<RawScalar>>], n: usize, what: &str| -> Result<Vec<Mat<F>>, ModelError> {
        if ms.len() != n {
            return Err(err(format!("{path}.{what}"), format!("expected {n} matrices, found {}", ms.len())));
        }
        ms.iter().enumerate().map(|(i, m)| matrix(m, d, d, &format!("{path}.{what}[{i}]"))).collect()
    };
    Ok(PlainBimodule { left: left.clone(), right: right.clone(), dim: d, lact: mats(&raw.lact, left.dim, "lact")?, ract: mats(&raw.ract, right.dim, "ract")? })
}

impl<F: Field> Workspace<F> {
    pub fn empty(field: FieldChoice) -> Self {
        Workspace {
            field,
            algebras: BTreeMap::new(),
            subspaces: BTreeMap::new(),
            triples: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            deformed: BTreeMap::new(),
        }
    }

    /// All shipped fixtures in one workspace; names are disjoint across files.
    pub fn shipped(field: FieldChoice) -> Result<Self, ModelError> {
        let mut ws = Workspace::empty(field);
        for (file, text) in SHIPPED {
            let w = Workspace::parse(text, field).map_err(|e| err(format!("{file}: {}", e.path), e.message))?;
            ws.algebras.extend(w.algebras);
            ws.subspaces.extend(w.subspaces);
            ws.triples.extend(w.triples);
            ws.bimodules.extend(w.bimodules);
            ws.deformed.extend(w.deformed);
        }
        Ok(ws)
    }

    /// Parses and validates; stops at the first failure.
    pub fn parse(text: &str, field: FieldChoice) -> Result<Self, ModelError> {
        let raw = parse_raw(text)?;
        let mut ws = Workspace::empty(field);
        for (name, v) in &raw.algebras {
            ws.algebras.insert(name.clone(), algebra(name, v)?.into_ref());
        }
        for (name, v) in &raw.subspaces {
            let path = format!("subspaces.{name}");
            let s: RawSubspace = from_value(v, &path)?;
            let a = lookup(&ws.algebras, &s.of, "algebra", &format!("{path}.of"))?;
            let vecs = s.vectors.iter().enumerate().map(|(i, v)| vector(v, a.dim, &format!("{path}.vectors[{i}]"))).collect::<Result<Vec<_>, _>>()?;
            let sub = match s.ideal.as_deref() {
                None => Subspace::span(a.dim, &vecs),
                Some("left") => left_ideal_generated(a, &vecs),
                Some("right") => right_ideal_generated(a, &vecs),
                Some("two-sided") => two_sided_ideal_generated(a, &vecs),
                Some(o) => return Err(err(format!("{path}.ideal"), format!("expected left, right or two-sided, found `{o}`"))),
            };
            ws.subspaces.insert(name.clone(), (s.of.clone(), sub));
        }
        for (name, v) in &raw.triples {
            let t = ws.triple(name, v)?;
            ws.triples.insert(name.clone(), t.into_ref());
        }
        for (name, v) in &raw.deformed {
            let path = format!("deformed.{name}");
            let d: RawDeformed = from_value(v, &path)?;
            let t = lookup(&ws.triples, name, "triple", &path)?.clone();
            let lambda = vector(&d.lambda, t.tot.dim, &format!("{path}.lambda"))?;
            let dt = DeformedTriple { base: t, lambda, order: d.order };
            let r = crate::classlim::validate_deformed(&dt);
            if !r.passed() {
                return Err(invalid(path, &r));
            }
            ws.deformed.insert(name.clone(), Arc::new(dt));
        }
        // bimodules may refer to each other; resolve until no progress
        let mut pending: Vec<&String> = raw.bimodules.keys().collect();
        while !pending.is_empty() {
            let before = pending.len();
            let mut next = Vec::new();
            for name in pending {
                match ws.bimodule(name, &raw.bimodules[name])? {
                    Some(e) => {
                        ws.bimodules.insert(name.clone(), e);
                    }
                    None => next.push(name),
                }
            }
            if next.len() == before {
                return Err(err(format!("bimodules.{}", next[0]), "unresolved or cyclic bimodule reference"));
            }
            pending = next;
        }
        Ok(ws)
    }

    fn sub_of(&self, name: &str, alg: &str, a: &AlgRef<F>, path: &str) -> Result<Subspace<F>, ModelError> {
        match name {
            "full" => return Ok(Subspace::full(a.dim)),
            "zero" => return Ok(Subspace::zero(a.dim)),
            _ => {}
        }
        let (of, s) = lookup(&self.subspaces, name, "subspace", path)?;
        if of != alg {
            return Err(err(path, format!("subspace `{name}` lives in `{of}`, not `{alg}`")));
        }
        Ok(s.clone())
    }

    fn triple(&self, name: &str, v: &Value) -> Result<Triple<F>, ModelError> {
        let path = format!("triples.{name}");
        let key = |k: &str| v.get(k).is_some();
        let t = if key("dirac") {
            let (a, j): (String, String) = from_value(&v["dirac"], &format!("{path}.dirac"))?;
            let alg = lookup(&self.algebras, &a, "algebra", &format!("{path}.dirac"))?;
            let j = self.sub_of(&j, &a, alg, &format!("{path}.dirac"))?;
            Triple::dirac(alg, &j).map_err(|e| err(&path, e.to_string()))?
        } else if key("trivial") || key("unred") {
            let which = if key("trivial") { "trivial" } else { "unred" };
            let a: String = from_value(&v[which], &format!("{path}.{which}"))?;
            let alg = lookup(&self.algebras, &a, "algebra", &format!("{path}.{which}"))?;
            if which == "trivial" {
                Triple::trivial(alg)
            } else {
                Triple::unred(alg)
            }
        } else {
            let p: RawParts = from_value(v, &path)?;
            let alg = lookup(&self.algebras, &p.tot, "algebra", &format!("{path}.tot"))?;
            let n = self.sub_of(&p.n, &p.tot, alg, &format!("{path}.n"))?;
            let z = self.sub_of(&p.zero, &p.tot, alg, &format!("{path}.zero"))?;
            let r = crate::coiso::validate_triple_parts(alg, &n, &z);
            if !r.passed() {
                return Err(invalid(path, &r));
            }
            Triple::new(alg.clone(), n, z, name).map_err(|e| err(&path, e.to_string()))?
        };
        Ok(t.with_label(name))
    }

    /// `None` when it refers to a bimodule not built yet.
    fn bimodule(&self, name: &str, v: &Value) -> Result<Option<Bimodule3<F>>, ModelError> {
        let path = format!("bimodules.{name}");
        let e = if let Some(t) = v.get("identity") {
            let t: String = from_value(t, &format!("{path}.identity"))?;
            Bimodule3::identity(lookup(&self.triples, &t, "triple", &path)?)
        } else if let Some(t) = v.get("tensor") {
            let (f, e): (String, String) = from_value(t, &format!("{path}.tensor"))?;
            let known = |n: &str| self.bimodules.contains_key(n);
            if !known(&f) || !known(&e) {
                return Ok(None);
            }
            tensor3(&self.bimodules[&f], &self.bimodules[&e]).map_err(|x| err(&path, x.to_string()))?.module
        } else if v.get("standard").is_some() {
            let s: RawStandard = from_value(v, &path)?;
            let t = lookup(&self.triples, &s.standard, "triple", &format!("{path}.standard"))?;
            let d = standard_equivalence(t, s.n).map_err(|x| err(&path, x.to_string()))?;
            if s.dual {
                d.e_prime
            } else {
                d.e
            }
        } else {
            let x: RawExplicit = from_value(v, &path)?;
            let b = lookup(&self.triples, &x.left, "triple", &format!("{path}.left"))?;
            let a = lookup(&self.triples, &x.right, "triple", &format!("{path}.right"))?;
            let tot = plain(&x.tot, &b.tot, &a.tot, &format!("{path}.tot"))?;
            let nmod = plain(&x.n, b.n_alg(), a.n_alg(), &format!("{path}.n"))?;
            let zv = x.zero.iter().enumerate().map(|(i, z)| vector(z, nmod.dim, &format!("{path}.zero[{i}]"))).collect::<Result<Vec<_>, _>>()?;
            let iota = matrix(&x.iota, tot.dim, nmod.dim, &format!("{path}.iota"))?;
            Bimodule3 { left: b.clone(), right: a.clone(), zero: Subspace::span(nmod.dim, &zv), tot, nmod, iota, label: name.into() }
        };
        let e = e.with_label(name);
        let r = e.validate();
        if !r.passed() {
            return Err(invalid(&path, &r));
        }
        Ok(Some(e))
    }

    pub fn triple_named(&self, name: &str) -> Result<&TripleRef<F>, ModelError> {
        lookup(&self.triples, name, "triple", "")
    }

    pub fn bimodule_named(&self, name: &str) -> Result<&Bimodule3<F>, ModelError> {
        lookup(&self.bimodules, name, "bimodule", "")
    }

    pub fn deformed_named(&self, name: &str) -> Result<&DeformedRef<F>, ModelError> {
        lookup(&self.deformed, name, "deformed triple", "")
    }

    /// A bimodule between deformed triples, looked up by the names of its sides.
    pub fn deformed_bimodule(&self, name: &str) -> Result<DeformedBimodule<F>, ModelError> {
        let e = self.bimodule_named(name)?.clone();
        let side = |t: &TripleRef<F>| {
            self.deformed
                .values()
                .find(|d| crate::cbimod::same_triple(&d.base, t))
                .cloned()
                .ok_or_else(|| err(format!("bimodules.{name}"), format!("triple `{}` carries no deformation", t.label)))
        };
        let (left, right) = (side(&e.left)?, side(&e.right)?);
        let d = DeformedBimodule { base: e, left, right };
        let r = d.validate();
        if !r.passed() {
            return Err(invalid(format!("bimodules.{name}"), &r));
        }
        Ok(d)
    }
}
