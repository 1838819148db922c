//! JSON documents for algebras, modules, maps, extensions, proto-twilled
//! structures, operator specifications, deformations and cochain pairs.
//!
//! Every rational is a string `"p/q"` (or `"p"`) in lowest terms; tensors are
//! nested arrays `[i][j][k]` with output index last; matrices are row-major.
//! Object keys are written in sorted order, so output is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::algebra::{Bilinear, PoissonAlgebra, Representation};
use crate::cochain::TwoCochain;
use crate::cohomology::CohomologyReport;
use crate::deformation::FormalDeformation;
use crate::error::{Error, Result};
use crate::extension::AbelianExtension;
use crate::matrix::{format_scalar, parse_scalar, Matrix, Scalar};
use crate::operators::{OperatorKind, OperatorSpec};
use crate::prototwilled::{ActionData, StructureMaps};
use crate::report::ValidationReport;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DocKind {
    Algebra,
    Representation,
    Map,
    Extension,
    ProtoTwilled,
    OperatorSpec,
    Deformation,
    CochainPair,
}

impl DocKind {
    pub const ALL: [DocKind; 8] = [
        DocKind::Algebra,
        DocKind::Representation,
        DocKind::Map,
        DocKind::Extension,
        DocKind::ProtoTwilled,
        DocKind::OperatorSpec,
        DocKind::Deformation,
        DocKind::CochainPair,
    ];

    pub fn label(self) -> &'static str {
        match self {
            DocKind::Algebra => "algebra",
            DocKind::Representation => "representation",
            DocKind::Map => "map",
            DocKind::Extension => "extension",
            DocKind::ProtoTwilled => "prototwilled",
            DocKind::OperatorSpec => "operator-spec",
            DocKind::Deformation => "deformation",
            DocKind::CochainPair => "cochain-pair",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.label() == s).ok_or_else(|| Error::Parse(format!("unknown kind {s:?}")))
    }
}

/// Payload of a document. Algebras and structure maps are kept unvalidated
/// so that `check` commands can report on them; extensions and actions
/// inside operator specifications are validated on parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Algebra(PoissonAlgebra),
    Representation(Representation),
    /// Named matrices, e.g. `r`, or `beta` and `alpha` for a pair.
    Map(BTreeMap<String, Matrix>),
    Extension(AbelianExtension),
    ProtoTwilled(StructureMaps),
    OperatorSpec(OperatorSpec),
    Deformation(FormalDeformation),
    CochainPair(TwoCochain),
}

impl Payload {
    pub fn kind(&self) -> DocKind {
        match self {
            Payload::Algebra(_) => DocKind::Algebra,
            Payload::Representation(_) => DocKind::Representation,
            Payload::Map(_) => DocKind::Map,
            Payload::Extension(_) => DocKind::Extension,
            Payload::ProtoTwilled(_) => DocKind::ProtoTwilled,
            Payload::OperatorSpec(_) => DocKind::OperatorSpec,
            Payload::Deformation(_) => DocKind::Deformation,
            Payload::CochainPair(_) => DocKind::CochainPair,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub schema_version: String,
    pub payload: Payload,
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        Document { schema_version: SCHEMA_VERSION.to_string(), payload }
    }

    pub fn kind(&self) -> DocKind {
        self.payload.kind()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Unknown fields produce warnings instead of errors.
    pub lenient: bool,
}

// ---------------------------------------------------------------- writing

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| scalar_json(m.get(i, j))).collect())).collect())
}

/// A matrix together with its shape, for contexts that do not fix it.
pub fn sized_matrix_json(m: &Matrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "entries": matrix_json(m)})
}

pub fn tensor_json(t: &Bilinear) -> Value {
    let (l, r, _) = t.dims();
    Value::Array((0..l).map(|i| Value::Array((0..r).map(|j| vector_json(t.at(i, j))).collect())).collect())
}

fn family_json(f: &[Matrix]) -> Value {
    Value::Array(f.iter().map(matrix_json).collect())
}

fn algebra_json(p: &PoissonAlgebra) -> Value {
    let mut v = json!({"dim": p.dim(), "product": tensor_json(p.mult()), "bracket": tensor_json(p.bracket())});
    if let Some(labels) = p.labels() {
        v["labels"] = json!(labels);
    }
    v
}

fn rep_json(v: &Representation) -> Value {
    json!({"algebraDim": v.mu().len(), "dim": v.dim(), "mu": family_json(v.mu()), "rho": family_json(v.rho())})
}

fn pair_json(c: &TwoCochain) -> Value {
    let (n, _, v) = c.comm.dims();
    json!({"algebraDim": n, "moduleDim": v, "h": tensor_json(&c.comm), "H": tensor_json(&c.lie)})
}

fn action_json(a: &ActionData) -> Value {
    json!({
        "acting": algebra_json(a.acting()),
        "acted": algebra_json(a.acted()),
        "mu": family_json(a.rep().mu()),
        "rho": family_json(a.rep().rho()),
    })
}

fn spec_json(s: &OperatorSpec) -> Value {
    let mut obj = match s {
        OperatorSpec::PoissonHom { source, target } => {
            json!({"source": algebra_json(source), "target": algebra_json(target)})
        }
        OperatorSpec::PoissonDerivation { algebra, rep } | OperatorSpec::RbWeight0 { algebra, rep } => {
            json!({"algebra": algebra_json(algebra), "representation": rep_json(rep)})
        }
        OperatorSpec::RbWeight1(a) | OperatorSpec::CrossedHom(a) => json!({"action": action_json(a)}),
        OperatorSpec::TwistedRb { algebra, rep, cocycle } => json!({
            "algebra": algebra_json(algebra),
            "representation": rep_json(rep),
            "cocycle": pair_json(cocycle),
        }),
        OperatorSpec::Reynolds(p) | OperatorSpec::ModifiedRb(p) => json!({"algebra": algebra_json(p)}),
    };
    obj["kind"] = Value::String(s.kind().label().to_string());
    obj
}

fn maps_json(m: &StructureMaps) -> Value {
    json!({
        "n1": m.n1, "n2": m.n2,
        "dot1": tensor_json(&m.dot1), "dot2": tensor_json(&m.dot2),
        "mu": family_json(&m.mu), "nu": family_json(&m.nu),
        "h": tensor_json(&m.h), "theta": tensor_json(&m.theta),
        "br1": tensor_json(&m.br1), "br2": tensor_json(&m.br2),
        "rho": family_json(&m.rho), "psi": family_json(&m.psi),
        "H": tensor_json(&m.big_h), "Theta": tensor_json(&m.big_theta),
    })
}

fn payload_json(p: &Payload) -> Value {
    match p {
        Payload::Algebra(a) => algebra_json(a),
        Payload::Representation(v) => rep_json(v),
        Payload::Map(maps) => {
            let m: Map<String, Value> = maps.iter().map(|(k, v)| (k.clone(), sized_matrix_json(v))).collect();
            json!({"maps": m})
        }
        Payload::Extension(e) => json!({
            "total": algebra_json(e.total()),
            "base": algebra_json(e.base()),
            "module": rep_json(e.module()),
            "inclusion": matrix_json(e.inclusion()),
            "projection": matrix_json(e.projection()),
        }),
        Payload::ProtoTwilled(m) => maps_json(m),
        Payload::OperatorSpec(s) => spec_json(s),
        Payload::Deformation(d) => json!({
            "rows": d.base().rows(),
            "cols": d.base().cols(),
            "order": d.order(),
            "terms": Value::Array(d.terms().iter().map(matrix_json).collect()),
        }),
        Payload::CochainPair(c) => pair_json(c),
    }
}

pub fn document_json(doc: &Document) -> Value {
    json!({"schemaVersion": doc.schema_version, "kind": doc.kind().label(), "payload": payload_json(&doc.payload)})
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn serialize(doc: &Document) -> String {
    to_pretty(&document_json(doc))
}

// ---------------------------------------------------------------- reading

struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
    seen: BTreeSet<&'static str>,
}

impl<'a> Obj<'a> {
    fn new(v: &'a Value, path: &str) -> Result<Self> {
        let map = v.as_object().ok_or_else(|| Error::Parse(format!("{path}: expected an object")))?;
        Ok(Obj { map, path: path.to_string(), seen: BTreeSet::new() })
    }

    fn at(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn req(&mut self, key: &'static str) -> Result<&'a Value> {
        self.seen.insert(key);
        self.map.get(key).ok_or_else(|| Error::Parse(format!("{}: missing field {key:?}", self.path)))
    }

    fn usize(&mut self, key: &'static str) -> Result<usize> {
        let p = self.at(key);
        let v = self.req(key)?;
        v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("{p}: expected a non-negative integer")))
    }

    fn str(&mut self, key: &'static str) -> Result<&'a str> {
        let p = self.at(key);
        self.req(key)?.as_str().ok_or_else(|| Error::Parse(format!("{p}: expected a string")))
    }

    fn finish(self, opts: ParseOptions, warnings: &mut Vec<String>) -> Result<()> {
        for k in self.map.keys() {
            if !self.seen.contains(k.as_str()) {
                let msg = format!("{}: unknown field {k:?}", self.path);
                if opts.lenient {
                    warnings.push(msg);
                } else {
                    return Err(Error::Parse(msg));
                }
            }
        }
        Ok(())
    }
}

fn array<'a>(v: &'a Value, len: usize, path: &str) -> Result<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| Error::Parse(format!("{path}: expected an array")))?;
    if a.len() != len {
        return Err(Error::Shape(format!("{path}: expected {len} entries, found {}", a.len())));
    }
    Ok(a)
}

/// Accepts rational strings and, for convenience, JSON integers.
pub fn scalar_from(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_scalar(&n.to_string()),
        _ => Err(Error::Parse(format!("{path}: expected a rational string \"p/q\""))),
    }
}

pub fn vector_from(v: &Value, len: usize, path: &str) -> Result<Vec<Scalar>> {
    array(v, len, path)?.iter().enumerate().map(|(i, x)| scalar_from(x, &format!("{path}[{i}]"))).collect()
}

pub fn matrix_from(v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in array(v, rows, path)?.iter().enumerate() {
        data.extend(vector_from(row, cols, &format!("{path}[{i}]"))?);
    }
    Matrix::from_vec(rows, cols, data)
}

pub fn tensor_from(v: &Value, (l, r, o): (usize, usize, usize), path: &str) -> Result<Bilinear> {
    let mut data = Vec::with_capacity(l * r * o);
    for (i, a) in array(v, l, path)?.iter().enumerate() {
        for (j, b) in array(a, r, &format!("{path}[{i}]"))?.iter().enumerate() {
            data.extend(vector_from(b, o, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Bilinear::from_vec(l, r, o, data)
}

fn family_from(v: &Value, count: usize, rows: usize, cols: usize, path: &str) -> Result<Vec<Matrix>> {
    array(v, count, path)?
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from(m, rows, cols, &format!("{path}[{i}]")))
        .collect()
}

struct Reader {
    opts: ParseOptions,
    warnings: Vec<String>,
}

impl Reader {
    fn algebra(&mut self, v: &Value, path: &str) -> Result<PoissonAlgebra> {
        let mut o = Obj::new(v, path)?;
        let n = o.usize("dim")?;
        let mult = tensor_from(o.req("product")?, (n, n, n), &o.at("product"))?;
        let br = tensor_from(o.req("bracket")?, (n, n, n), &o.at("bracket"))?;
        let labels = match o.map.get("labels") {
            None => None,
            Some(l) => {
                o.seen.insert("labels");
                let arr = array(l, n, &o.at("labels"))?;
                let names: Option<Vec<String>> = arr.iter().map(|x| x.as_str().map(str::to_string)).collect();
                Some(names.ok_or_else(|| Error::Parse(format!("{}: labels must be strings", o.path)))?)
            }
        };
        o.finish(self.opts, &mut self.warnings)?;
        let p = PoissonAlgebra::unchecked(mult, br)?;
        match labels {
            Some(l) => p.with_labels(l),
            None => Ok(p),
        }
    }

    fn rep(&mut self, v: &Value, path: &str) -> Result<Representation> {
        let mut o = Obj::new(v, path)?;
        let n = o.usize("algebraDim")?;
        let d = o.usize("dim")?;
        let mu = family_from(o.req("mu")?, n, d, d, &o.at("mu"))?;
        let rho = family_from(o.req("rho")?, n, d, d, &o.at("rho"))?;
        o.finish(self.opts, &mut self.warnings)?;
        let rep = Representation::unchecked(&PoissonAlgebra::abelian(n), mu, rho)?;
        if rep.dim() != d {
            // Only possible when the algebra is zero-dimensional.
            return Ok(Representation::trivial(&PoissonAlgebra::abelian(n), d));
        }
        Ok(rep)
    }

    fn pair(&mut self, v: &Value, path: &str) -> Result<TwoCochain> {
        let mut o = Obj::new(v, path)?;
        let n = o.usize("algebraDim")?;
        let d = o.usize("moduleDim")?;
        let h = tensor_from(o.req("h")?, (n, n, d), &o.at("h"))?;
        let hh = tensor_from(o.req("H")?, (n, n, d), &o.at("H"))?;
        o.finish(self.opts, &mut self.warnings)?;
        TwoCochain::new(h, hh)
    }

    fn action(&mut self, v: &Value, path: &str) -> Result<ActionData> {
        let mut o = Obj::new(v, path)?;
        let acting = self.algebra(o.req("acting")?, &o.at("acting"))?;
        let acted = self.algebra(o.req("acted")?, &o.at("acted"))?;
        let (n, d) = (acting.dim(), acted.dim());
        let mu = family_from(o.req("mu")?, n, d, d, &o.at("mu"))?;
        let rho = family_from(o.req("rho")?, n, d, d, &o.at("rho"))?;
        o.finish(self.opts, &mut self.warnings)?;
        ActionData::new(acting, acted, mu, rho)
    }

    fn spec(&mut self, v: &Value, path: &str) -> Result<OperatorSpec> {
        let mut o = Obj::new(v, path)?;
        let kind = OperatorKind::parse(o.str("kind")?)?;
        let spec = match kind {
            OperatorKind::PoissonHom => OperatorSpec::PoissonHom {
                source: self.algebra(o.req("source")?, &o.at("source"))?,
                target: self.algebra(o.req("target")?, &o.at("target"))?,
            },
            OperatorKind::PoissonDerivation | OperatorKind::RbWeight0 => {
                let algebra = self.algebra(o.req("algebra")?, &o.at("algebra"))?;
                let rep = self.rep(o.req("representation")?, &o.at("representation"))?;
                if kind == OperatorKind::PoissonDerivation {
                    OperatorSpec::PoissonDerivation { algebra, rep }
                } else {
                    OperatorSpec::RbWeight0 { algebra, rep }
                }
            }
            OperatorKind::RbWeight1 => OperatorSpec::RbWeight1(self.action(o.req("action")?, &o.at("action"))?),
            OperatorKind::CrossedHom => OperatorSpec::CrossedHom(self.action(o.req("action")?, &o.at("action"))?),
            OperatorKind::TwistedRb => OperatorSpec::TwistedRb {
                algebra: self.algebra(o.req("algebra")?, &o.at("algebra"))?,
                rep: self.rep(o.req("representation")?, &o.at("representation"))?,
                cocycle: self.pair(o.req("cocycle")?, &o.at("cocycle"))?,
            },
            OperatorKind::Reynolds => OperatorSpec::Reynolds(self.algebra(o.req("algebra")?, &o.at("algebra"))?),
            OperatorKind::ModifiedRb => OperatorSpec::ModifiedRb(self.algebra(o.req("algebra")?, &o.at("algebra"))?),
        };
        o.finish(self.opts, &mut self.warnings)?;
        Ok(spec)
    }

    fn maps(&mut self, v: &Value, path: &str) -> Result<StructureMaps> {
        let mut o = Obj::new(v, path)?;
        let n1 = o.usize("n1")?;
        let n2 = o.usize("n2")?;
        let t = |o: &mut Obj<'_>, key: &'static str, dims| -> Result<Bilinear> {
            let p = o.at(key);
            tensor_from(o.req(key)?, dims, &p)
        };
        let dot1 = t(&mut o, "dot1", (n1, n1, n1))?;
        let dot2 = t(&mut o, "dot2", (n2, n2, n2))?;
        let h = t(&mut o, "h", (n1, n1, n2))?;
        let theta = t(&mut o, "theta", (n2, n2, n1))?;
        let br1 = t(&mut o, "br1", (n1, n1, n1))?;
        let br2 = t(&mut o, "br2", (n2, n2, n2))?;
        let big_h = t(&mut o, "H", (n1, n1, n2))?;
        let big_theta = t(&mut o, "Theta", (n2, n2, n1))?;
        let mu = family_from(o.req("mu")?, n1, n2, n2, &o.at("mu"))?;
        let nu = family_from(o.req("nu")?, n2, n1, n1, &o.at("nu"))?;
        let rho = family_from(o.req("rho")?, n1, n2, n2, &o.at("rho"))?;
        let psi = family_from(o.req("psi")?, n2, n1, n1, &o.at("psi"))?;
        o.finish(self.opts, &mut self.warnings)?;
        let maps = StructureMaps { n1, n2, dot1, dot2, mu, nu, h, theta, br1, br2, rho, psi, big_h, big_theta };
        maps.check_shapes()?;
        Ok(maps)
    }

    fn payload(&mut self, kind: DocKind, v: &Value) -> Result<Payload> {
        let path = "payload";
        Ok(match kind {
            DocKind::Algebra => Payload::Algebra(self.algebra(v, path)?),
            DocKind::Representation => Payload::Representation(self.rep(v, path)?),
            DocKind::Map => {
                let mut o = Obj::new(v, path)?;
                let inner = o.req("maps")?.as_object().ok_or_else(|| Error::Parse("payload.maps: expected an object".into()))?;
                let mut out = BTreeMap::new();
                for (name, m) in inner {
                    let p = format!("payload.maps.{name}");
                    let mut mo = Obj::new(m, &p)?;
                    let rows = mo.usize("rows")?;
                    let cols = mo.usize("cols")?;
                    let mat = matrix_from(mo.req("entries")?, rows, cols, &mo.at("entries"))?;
                    mo.finish(self.opts, &mut self.warnings)?;
                    out.insert(name.clone(), mat);
                }
                o.finish(self.opts, &mut self.warnings)?;
                Payload::Map(out)
            }
            DocKind::Extension => {
                let mut o = Obj::new(v, path)?;
                let total = self.algebra(o.req("total")?, &o.at("total"))?;
                let base = self.algebra(o.req("base")?, &o.at("base"))?;
                let module = self.rep(o.req("module")?, &o.at("module"))?;
                let (e, n, d) = (total.dim(), base.dim(), module.dim());
                let inclusion = matrix_from(o.req("inclusion")?, e, d, &o.at("inclusion"))?;
                let projection = matrix_from(o.req("projection")?, n, e, &o.at("projection"))?;
                o.finish(self.opts, &mut self.warnings)?;
                Payload::Extension(AbelianExtension::new(total, inclusion, projection, base, module)?)
            }
            DocKind::ProtoTwilled => Payload::ProtoTwilled(self.maps(v, path)?),
            DocKind::OperatorSpec => Payload::OperatorSpec(self.spec(v, path)?),
            DocKind::Deformation => {
                let mut o = Obj::new(v, path)?;
                let rows = o.usize("rows")?;
                let cols = o.usize("cols")?;
                let order = o.usize("order")?;
                let terms = family_from(o.req("terms")?, order + 1, rows, cols, &o.at("terms"))?;
                o.finish(self.opts, &mut self.warnings)?;
                Payload::Deformation(FormalDeformation::new(terms)?)
            }
            DocKind::CochainPair => Payload::CochainPair(self.pair(v, path)?),
        })
    }
}

/// Parses a document, returning warnings about ignored fields in lenient mode.
pub fn parse_with(bytes: &[u8], opts: ParseOptions) -> Result<(Document, Vec<String>)> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))?;
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let mut reader = Reader { opts, warnings: Vec::new() };
    let mut o = Obj::new(&v, "document")?;
    let version = o.str("schemaVersion")?;
    if version != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schemaVersion {version:?}")));
    }
    let kind = DocKind::parse(o.str("kind")?)?;
    let payload = reader.payload(kind, o.req("payload")?)?;
    o.finish(opts, &mut reader.warnings)?;
    Ok((Document { schema_version: version.to_string(), payload }, reader.warnings))
}

pub fn parse(bytes: &[u8]) -> Result<Document> {
    parse_with(bytes, ParseOptions::default()).map(|(d, _)| d)
}

pub fn read_document(path: &Path, opts: ParseOptions) -> Result<(Document, Vec<String>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_with(&bytes, opts).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

// ---------------------------------------------------------------- reports

pub fn report_json(r: &ValidationReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({"identity": v.identity, "indices": v.indices, "residual": vector_json(&v.residual)}))
        .collect();
    json!({"ok": r.ok(), "violations": violations})
}

pub fn cohomology_json(r: &CohomologyReport) -> Value {
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.k,
                "cochainDim": d.cochain_dim,
                "cocycleDim": d.cocycle_dim,
                "coboundaryDim": d.coboundary_dim,
                "betti": d.betti,
                "representatives": d.representatives.iter().map(|c| vector_json(&c.coords)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"degrees": degrees})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_rep, validate_poisson};
    use crate::catalog;
    use crate::matrix::frac;

    fn roundtrip(doc: &Document) {
        let text = serialize(doc);
        let back = parse(text.as_bytes()).unwrap();
        assert_eq!(&back, doc);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn rationals_are_normalized() {
        let v = json!(["3/6", "-4/2", "0/5", 7]);
        let parsed = vector_from(&v, 4, "x").unwrap();
        assert_eq!(vector_json(&parsed), json!(["1/2", "-2", "0", "7"]));
    }

    #[test]
    fn malformed_rationals_are_rejected() {
        for bad in ["-1/-2", "1/0", "1.5", "", "+1", "1/", " 1", "a"] {
            assert!(scalar_from(&json!(bad), "x").is_err(), "{bad}");
        }
        assert!(scalar_from(&json!(1.5), "x").is_err());
    }

    #[test]
    fn algebra_roundtrip_and_validation() {
        for (_, p) in catalog::named_algebras() {
            roundtrip(&Document::new(Payload::Algebra(p.clone())));
        }
        let doc = Document::new(Payload::Algebra(catalog::sl2_zero()));
        let Payload::Algebra(p) = parse(serialize(&doc).as_bytes()).unwrap().payload else { panic!() };
        assert!(validate_poisson(&p).ok());
    }

    #[test]
    fn every_kind_roundtrips() {
        let p = catalog::fix_b();
        let v = adjoint_rep(&p);
        roundtrip(&Document::new(Payload::Representation(v.clone())));
        let mut maps = BTreeMap::new();
        maps.insert("r".to_string(), Matrix::from_vec(1, 1, vec![frac(-1, 3)]).unwrap());
        roundtrip(&Document::new(Payload::Map(maps)));
        let (ext, _) = crate::extension::build_split_extension(&p, &v).unwrap();
        roundtrip(&Document::new(Payload::Extension(ext)));
        let pt = crate::prototwilled::modified_semidirect(&p).unwrap();
        roundtrip(&Document::new(Payload::ProtoTwilled(pt.maps().clone())));
        for spec in [
            OperatorSpec::Reynolds(p.clone()),
            OperatorSpec::RbWeight1(ActionData::adjoint(&p)),
            OperatorSpec::PoissonDerivation { algebra: p.clone(), rep: v.clone() },
            OperatorSpec::PoissonHom { source: p.clone(), target: catalog::lie2() },
            OperatorSpec::TwistedRb { algebra: p.clone(), rep: v.clone(), cocycle: TwoCochain::zero(1, 1) },
        ] {
            roundtrip(&Document::new(Payload::OperatorSpec(spec)));
        }
        let d = FormalDeformation::new(vec![Matrix::identity(2), Matrix::zeros(2, 2)]).unwrap();
        roundtrip(&Document::new(Payload::Deformation(d)));
        roundtrip(&Document::new(Payload::CochainPair(TwoCochain::zero(2, 1))));
    }

    #[test]
    fn strictness() {
        let doc = Document::new(Payload::Algebra(catalog::fix_b()));
        let mut v = document_json(&doc);
        v["payload"]["extra"] = json!(1);
        let text = to_pretty(&v);
        assert!(matches!(parse(text.as_bytes()), Err(Error::Parse(_))));
        let (back, warnings) = parse_with(text.as_bytes(), ParseOptions { lenient: true }).unwrap();
        assert_eq!(back, doc);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn structural_errors() {
        let bad_kind = r#"{"schemaVersion":"1","kind":"lattice","payload":{}}"#;
        assert!(matches!(parse(bad_kind.as_bytes()), Err(Error::Parse(_))));
        let bad_shape = r#"{"schemaVersion":"1","kind":"algebra","payload":{"dim":1,"product":[[["1","0"]]],"bracket":[[["0"]]]}}"#;
        assert!(matches!(parse(bad_shape.as_bytes()), Err(Error::Shape(_))));
        let bad_version = r#"{"schemaVersion":"9","kind":"algebra","payload":{}}"#;
        assert!(parse(bad_version.as_bytes()).is_err());
    }
}
