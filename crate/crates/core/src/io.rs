//! Document formats. Every document is JSON with sorted keys, scalars as
//! `"n"` or `"p/q"` strings, matrices as dense row-major arrays and sparse
//! vectors as `[index, scalar]` pairs.
//!
//! - `.alg`: an algebra.
//! - `.ext`: a datum `(φ, ρ)` over two algebras, given inline or as paths
//!   relative to the document.
//! - `.seq`: a sequence `h → e → g` with its maps and an optional section.
//! - `.coch`: a cochain.
//! - `.mat`: a single matrix.

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::algebra::{BasisElement, ColorHomLieAlgebra, GradedVector};
use crate::cochains::GradedCochain;
use crate::error::{Error, Result};
use crate::extensions::{ExtensionData, ExtensionSequence};
use crate::grading::{CommutationFactor, Degree, GradingGroup};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, parse_scalar, Q};

pub const FORMAT_VERSION: &str = "1";

// ---------------------------------------------------------------------------
// Canonical text

/// Sorted keys, two-space indent, arrays of plain values kept on one line.
pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn is_compact(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_flat),
        _ => is_flat(v),
    }
}

fn write_inline(out: &mut String, v: &Value) {
    match v {
        Value::Array(items) => {
            out.push('[');
            for (t, i) in items.iter().enumerate() {
                if t > 0 {
                    out.push_str(", ");
                }
                write_inline(out, i);
            }
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        other => out.push_str(&serde_json::to_string(other).expect("json value")),
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            let keys: Vec<&String> = {
                let mut k: Vec<&String> = m.keys().collect();
                k.sort();
                k
            };
            for (t, k) in keys.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("json key"));
                out.push_str(": ");
                write_value(out, &m[k.as_str()], indent + 1);
                if t + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !is_compact(v) => {
            out.push_str("[\n");
            for (t, i) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, i, indent + 1);
                if t + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        other => write_inline(out, other),
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

// ---------------------------------------------------------------------------
// Field access

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| Error::parse(key, "missing field"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

fn int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::parse(path, "expected an integer"))
}

fn scalar(v: &Value, path: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| e.at(path)),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::parse(path, "expected a scalar string \"n\" or \"p/q\"")),
    }
}

fn check_version(m: &Map<String, Value>) -> Result<()> {
    match m.get("format_version") {
        Some(Value::String(s)) if s == FORMAT_VERSION => Ok(()),
        Some(other) => Err(Error::parse("format_version", format!("unsupported version {other}"))),
        None => Err(Error::parse("format_version", "missing field")),
    }
}

fn s(v: &Q) -> Value {
    Value::String(format_scalar(v))
}

// ---------------------------------------------------------------------------
// Pieces

pub fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(s).collect())).collect())
}

/// Dense rows of the expected shape.
pub fn matrix_from_value(v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    let rs = arr(v, path)?;
    if rs.len() != rows {
        return Err(Error::parse(path, format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (r, row) in rs.iter().enumerate() {
        let p = format!("{path}[{r}]");
        let cs = arr(row, &p)?;
        if cs.len() != cols {
            return Err(Error::parse(&p, format!("expected {cols} entries, found {}", cs.len())));
        }
        out.push(cs.iter().enumerate().map(|(c, x)| scalar(x, &format!("{p}[{c}]"))).collect::<Result<Vec<_>>>()?);
    }
    Ok(if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(out) })
}

pub fn vector_to_value(v: &GradedVector) -> Value {
    Value::Array(v.iter().map(|(i, c)| Value::Array(vec![Value::from(i as u64), s(c)])).collect())
}

/// `[[index, scalar], …]`, indices below `dim`, no repeated index.
pub fn vector_from_value(v: &Value, dim: usize, path: &str) -> Result<GradedVector> {
    let mut out = GradedVector::new();
    let mut seen = std::collections::BTreeSet::new();
    for (t, pair) in arr(v, path)?.iter().enumerate() {
        let p = format!("{path}[{t}]");
        let pr = arr(pair, &p)?;
        if pr.len() != 2 {
            return Err(Error::parse(&p, "expected [index, scalar]"));
        }
        let i = uint(&pr[0], &format!("{p}[0]"))?;
        if i >= dim {
            return Err(Error::parse(&p, format!("index {i} out of range for dimension {dim}")));
        }
        if !seen.insert(i) {
            return Err(Error::parse(&p, format!("index {i} repeated")));
        }
        out.add_term(i, &scalar(&pr[1], &format!("{p}[1]"))?);
    }
    Ok(out)
}

fn degree_to_value(d: &Degree) -> Value {
    Value::Array(d.coords().iter().map(|&c| Value::from(c)).collect())
}

fn degree_from_value(group: &GradingGroup, v: &Value, path: &str) -> Result<Degree> {
    let coords = arr(v, path)?
        .iter()
        .enumerate()
        .map(|(t, c)| int(c, &format!("{path}[{t}]")))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != group.rank() {
        return Err(Error::parse(path, format!("degree has {} coordinates, group rank is {}", coords.len(), group.rank())));
    }
    group.degree(&coords).map_err(|e| Error::parse(path, e.to_string()))
}

fn grading_to_value(g: &GradingGroup) -> Value {
    let mut m = Map::new();
    m.insert("free_rank".into(), Value::from(g.free_rank() as u64));
    m.insert("torsion".into(), Value::Array(g.torsion().iter().map(|&t| Value::from(t)).collect()));
    Value::Object(m)
}

fn grading_from_value(v: &Value) -> Result<GradingGroup> {
    let m = obj(v, "grading")?;
    let r = uint(field(m, "free_rank").map_err(|e| e.at("grading"))?, "grading.free_rank")?;
    let t = arr(field(m, "torsion").map_err(|e| e.at("grading"))?, "grading.torsion")?
        .iter()
        .enumerate()
        .map(|(i, x)| uint(x, &format!("grading.torsion[{i}]")).map(|x| x as u64))
        .collect::<Result<Vec<_>>>()?;
    GradingGroup::new(r, t).map_err(|e| Error::parse("grading", e.to_string()))
}

// ---------------------------------------------------------------------------
// Algebras

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraDocument {
    pub algebra: ColorHomLieAlgebra,
    pub metadata: Map<String, Value>,
}

impl AlgebraDocument {
    pub fn new(algebra: ColorHomLieAlgebra) -> Self {
        AlgebraDocument {
            algebra,
            metadata: Map::new(),
        }
    }
}

pub fn algebra_to_value(doc: &AlgebraDocument) -> Value {
    let a = &doc.algebra;
    let mut m = Map::new();
    m.insert("format_version".into(), Value::from(FORMAT_VERSION));
    m.insert("grading".into(), grading_to_value(a.group()));
    m.insert(
        "epsilon".into(),
        Value::Array(a.eps().table().iter().map(|r| Value::Array(r.iter().map(s).collect())).collect()),
    );
    m.insert(
        "basis".into(),
        Value::Array(
            a.basis()
                .iter()
                .map(|b| {
                    let mut e = Map::new();
                    e.insert("name".into(), Value::from(b.name.clone()));
                    e.insert("degree".into(), degree_to_value(&b.degree));
                    Value::Object(e)
                })
                .collect(),
        ),
    );
    m.insert("alpha".into(), matrix_to_value(a.alpha()));
    m.insert(
        "brackets".into(),
        Value::Array(
            a.canonical_brackets()
                .iter()
                .map(|(i, j, v)| {
                    let mut e = Map::new();
                    e.insert("i".into(), Value::from(*i as u64));
                    e.insert("j".into(), Value::from(*j as u64));
                    e.insert("value".into(), vector_to_value(v));
                    Value::Object(e)
                })
                .collect(),
        ),
    );
    m.insert("metadata".into(), Value::Object(doc.metadata.clone()));
    Value::Object(m)
}

pub fn algebra_from_value(v: &Value) -> Result<AlgebraDocument> {
    let m = obj(v, "")?;
    check_version(m)?;
    let group = grading_from_value(field(m, "grading")?)?;
    let n = group.rank();
    let table = matrix_from_value(field(m, "epsilon")?, n, n, "epsilon")?;
    let eps = CommutationFactor::validated(group.clone(), table.to_rows())?;
    let mut basis = Vec::new();
    for (t, b) in arr(field(m, "basis")?, "basis")?.iter().enumerate() {
        let p = format!("basis[{t}]");
        let bm = obj(b, &p)?;
        let name = field(bm, "name")
            .map_err(|e| e.at(&p))?
            .as_str()
            .ok_or_else(|| Error::parse(format!("{p}.name"), "expected a string"))?;
        let degree = degree_from_value(&group, field(bm, "degree").map_err(|e| e.at(&p))?, &format!("{p}.degree"))?;
        basis.push(BasisElement::new(name, degree));
    }
    let dim = basis.len();
    let alpha = match m.get("alpha") {
        Some(a) => matrix_from_value(a, dim, dim, "alpha")?,
        None => Matrix::identity(dim),
    };
    let mut brackets = Vec::new();
    for (t, b) in arr(field(m, "brackets")?, "brackets")?.iter().enumerate() {
        let p = format!("brackets[{t}]");
        let bm = obj(b, &p)?;
        let i = uint(field(bm, "i").map_err(|e| e.at(&p))?, &format!("{p}.i"))?;
        let j = uint(field(bm, "j").map_err(|e| e.at(&p))?, &format!("{p}.j"))?;
        if i >= dim || j >= dim {
            return Err(Error::parse(&p, format!("pair ({i},{j}) out of range for dimension {dim}")));
        }
        let value = vector_from_value(field(bm, "value").map_err(|e| e.at(&p))?, dim, &format!("{p}.value"))?;
        brackets.push((i, j, value));
    }
    let metadata = match m.get("metadata") {
        Some(Value::Object(md)) => md.clone(),
        Some(_) => return Err(Error::parse("metadata", "expected an object")),
        None => Map::new(),
    };
    let algebra = ColorHomLieAlgebra::from_brackets(eps, basis, &brackets, alpha)?;
    Ok(AlgebraDocument { algebra, metadata })
}

pub fn parse_algebra_document(text: &str) -> Result<AlgebraDocument> {
    algebra_from_value(&parse_json(text)?)
}

pub fn parse_algebra(text: &str) -> Result<ColorHomLieAlgebra> {
    Ok(parse_algebra_document(text)?.algebra)
}

pub fn serialize_algebra_document(doc: &AlgebraDocument) -> String {
    to_canonical_string(&algebra_to_value(doc))
}

pub fn serialize_algebra(a: &ColorHomLieAlgebra) -> String {
    serialize_algebra_document(&AlgebraDocument::new(a.clone()))
}

// ---------------------------------------------------------------------------
// Matrices and cochains

pub fn serialize_matrix(m: &Matrix) -> String {
    let mut o = Map::new();
    o.insert("format_version".into(), Value::from(FORMAT_VERSION));
    o.insert("rows".into(), Value::from(m.rows() as u64));
    o.insert("cols".into(), Value::from(m.cols() as u64));
    o.insert("data".into(), matrix_to_value(m));
    to_canonical_string(&Value::Object(o))
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let v = parse_json(text)?;
    let m = obj(&v, "")?;
    check_version(m)?;
    let rows = uint(field(m, "rows")?, "rows")?;
    let cols = uint(field(m, "cols")?, "cols")?;
    matrix_from_value(field(m, "data")?, rows, cols, "data")
}

pub fn cochain_to_value(psi: &GradedCochain) -> Value {
    let mut o = Map::new();
    o.insert("p".into(), Value::from(psi.p as u64));
    o.insert("w".into(), degree_to_value(&psi.weight));
    o.insert("target_dim".into(), Value::from(psi.target_dim as u64));
    o.insert(
        "entries".into(),
        Value::Array(
            psi.entries()
                .map(|(t, v)| {
                    Value::Array(vec![
                        Value::Array(t.iter().map(|&i| Value::from(i as u64)).collect()),
                        vector_to_value(v),
                    ])
                })
                .collect(),
        ),
    );
    Value::Object(o)
}

/// Stored tuples only: weakly increasing, with repeats on odd elements.
pub fn cochain_from_value(g: &ColorHomLieAlgebra, v: &Value, path: &str) -> Result<GradedCochain> {
    let m = obj(v, path)?;
    let at = |k: &str| format!("{path}{}{k}", if path.is_empty() { "" } else { "." });
    let p = uint(field(m, "p").map_err(|e| e.at(path))?, &at("p"))?;
    let w = degree_from_value(g.group(), field(m, "w").map_err(|e| e.at(path))?, &at("w"))?;
    let target_dim = uint(field(m, "target_dim").map_err(|e| e.at(path))?, &at("target_dim"))?;
    let mut psi = GradedCochain::zero(p, w, target_dim);
    let mut seen = std::collections::BTreeSet::new();
    for (t, e) in arr(field(m, "entries").map_err(|e| e.at(path))?, &at("entries"))?.iter().enumerate() {
        let ep = format!("{}[{t}]", at("entries"));
        let pair = arr(e, &ep)?;
        if pair.len() != 2 {
            return Err(Error::parse(&ep, "expected [indices, value]"));
        }
        let tuple = arr(&pair[0], &ep)?
            .iter()
            .map(|x| uint(x, &ep))
            .collect::<Result<Vec<_>>>()?;
        if tuple.len() != p || tuple.iter().any(|&i| i >= g.dim()) {
            return Err(Error::parse(&ep, format!("tuple {tuple:?} does not fit arity {p} and dimension {}", g.dim())));
        }
        for w in tuple.windows(2) {
            if w[0] > w[1] || (w[0] == w[1] && !g.is_odd(w[0])) {
                return Err(Error::parse(&ep, format!("tuple {tuple:?} is not a stored tuple")));
            }
        }
        if !seen.insert(tuple.clone()) {
            return Err(Error::parse(&ep, format!("tuple {tuple:?} repeated")));
        }
        let value = vector_from_value(&pair[1], target_dim, &format!("{ep}[1]"))?;
        psi.set(tuple, value);
    }
    Ok(psi)
}

pub fn serialize_cochain(psi: &GradedCochain) -> String {
    let mut v = cochain_to_value(psi);
    v.as_object_mut().unwrap().insert("format_version".into(), Value::from(FORMAT_VERSION));
    to_canonical_string(&v)
}

pub fn parse_cochain(g: &ColorHomLieAlgebra, text: &str) -> Result<GradedCochain> {
    let v = parse_json(text)?;
    check_version(obj(&v, "")?)?;
    cochain_from_value(g, &v, "")
}

// ---------------------------------------------------------------------------
// References to algebra files

/// An algebra given inline or by a path relative to the referring document.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraDocument),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub reference: AlgebraRef,
    pub doc: AlgebraDocument,
    /// Raw bytes of the referenced file, for input digests.
    pub bytes: Option<Vec<u8>>,
}

fn resolve(v: &Value, key: &str, base: Option<&Path>) -> Result<Resolved> {
    match v {
        Value::String(p) => {
            let path = match base {
                Some(b) => b.join(p),
                None => PathBuf::from(p),
            };
            let bytes = std::fs::read(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let text = String::from_utf8(bytes.clone()).map_err(|_| Error::parse(key, "file is not UTF-8"))?;
            let doc = parse_algebra_document(&text).map_err(|e| e.at(key))?;
            Ok(Resolved {
                reference: AlgebraRef::Path(p.clone()),
                doc,
                bytes: Some(bytes),
            })
        }
        Value::Object(_) => {
            let doc = algebra_from_value(v).map_err(|e| e.at(key))?;
            Ok(Resolved {
                reference: AlgebraRef::Inline(doc.clone()),
                doc,
                bytes: None,
            })
        }
        _ => Err(Error::parse(key, "expected a path string or an inline algebra")),
    }
}

fn ref_to_value(r: &AlgebraRef) -> Value {
    match r {
        AlgebraRef::Path(p) => Value::from(p.clone()),
        AlgebraRef::Inline(d) => algebra_to_value(d),
    }
}

// ---------------------------------------------------------------------------
// Extension data

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionDocument {
    pub g: AlgebraRef,
    pub h: AlgebraRef,
    pub data: ExtensionData,
    /// Bytes of referenced files in the order `g`, `h`.
    pub referenced_bytes: Vec<Vec<u8>>,
}

impl ExtensionDocument {
    pub fn inline(data: ExtensionData) -> Self {
        ExtensionDocument {
            g: AlgebraRef::Inline(AlgebraDocument::new(data.g.clone())),
            h: AlgebraRef::Inline(AlgebraDocument::new(data.h.clone())),
            data,
            referenced_bytes: Vec::new(),
        }
    }
}

/// `base` is the directory that relative algebra paths resolve against.
pub fn parse_extension(text: &str, base: Option<&Path>) -> Result<ExtensionDocument> {
    let v = parse_json(text)?;
    let m = obj(&v, "")?;
    check_version(m)?;
    let g = resolve(field(m, "g")?, "g", base)?;
    let h = resolve(field(m, "h")?, "h", base)?;
    let k = match m.get("k") {
        Some(x) => int(x, "k")?,
        None => 1,
    };
    let (ga, ha) = (&g.doc.algebra, &h.doc.algebra);
    let phis = arr(field(m, "phi")?, "phi")?;
    if phis.len() != ga.dim() {
        return Err(Error::parse("phi", format!("expected {} matrices, found {}", ga.dim(), phis.len())));
    }
    let phi = phis
        .iter()
        .enumerate()
        .map(|(t, x)| matrix_from_value(x, ha.dim(), ha.dim(), &format!("phi[{t}]")))
        .collect::<Result<Vec<_>>>()?;
    let rho = cochain_from_value(ga, field(m, "rho")?, "rho")?;
    let data = ExtensionData::new(ga.clone(), ha.clone(), k, phi, rho)?;
    let referenced_bytes = [g.bytes, h.bytes].into_iter().flatten().collect();
    Ok(ExtensionDocument {
        g: g.reference,
        h: h.reference,
        data,
        referenced_bytes,
    })
}

pub fn serialize_extension(doc: &ExtensionDocument) -> String {
    let d = &doc.data;
    let mut m = Map::new();
    m.insert("format_version".into(), Value::from(FORMAT_VERSION));
    m.insert("g".into(), ref_to_value(&doc.g));
    m.insert("h".into(), ref_to_value(&doc.h));
    m.insert("k".into(), Value::from(d.k));
    m.insert("phi".into(), Value::Array(d.phi.iter().map(matrix_to_value).collect()));
    m.insert("rho".into(), cochain_to_value(&d.rho));
    to_canonical_string(&Value::Object(m))
}

// ---------------------------------------------------------------------------
// Sequences

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceDocument {
    pub h: AlgebraRef,
    pub e: AlgebraRef,
    pub g: AlgebraRef,
    pub sequence: ExtensionSequence,
    pub referenced_bytes: Vec<Vec<u8>>,
}

impl SequenceDocument {
    pub fn inline(sequence: ExtensionSequence) -> Self {
        SequenceDocument {
            h: AlgebraRef::Inline(AlgebraDocument::new(sequence.h.clone())),
            e: AlgebraRef::Inline(AlgebraDocument::new(sequence.e.clone())),
            g: AlgebraRef::Inline(AlgebraDocument::new(sequence.g.clone())),
            sequence,
            referenced_bytes: Vec::new(),
        }
    }
}

pub fn parse_sequence(text: &str, base: Option<&Path>) -> Result<SequenceDocument> {
    let v = parse_json(text)?;
    let m = obj(&v, "")?;
    check_version(m)?;
    let h = resolve(field(m, "h")?, "h", base)?;
    let e = resolve(field(m, "e")?, "e", base)?;
    let g = resolve(field(m, "g")?, "g", base)?;
    let (hd, ed, gd) = (h.doc.algebra.dim(), e.doc.algebra.dim(), g.doc.algebra.dim());
    let i = matrix_from_value(field(m, "i")?, ed, hd, "i")?;
    let p = matrix_from_value(field(m, "p")?, gd, ed, "p")?;
    let s = match m.get("section") {
        Some(x) => Some(matrix_from_value(x, ed, gd, "section")?),
        None => None,
    };
    let sequence = ExtensionSequence {
        h: h.doc.algebra.clone(),
        e: e.doc.algebra.clone(),
        g: g.doc.algebra.clone(),
        i,
        p,
        s,
    };
    let referenced_bytes = [h.bytes, e.bytes, g.bytes].into_iter().flatten().collect();
    Ok(SequenceDocument {
        h: h.reference,
        e: e.reference,
        g: g.reference,
        sequence,
        referenced_bytes,
    })
}

pub fn serialize_sequence(doc: &SequenceDocument) -> String {
    let q = &doc.sequence;
    let mut m = Map::new();
    m.insert("format_version".into(), Value::from(FORMAT_VERSION));
    m.insert("h".into(), ref_to_value(&doc.h));
    m.insert("e".into(), ref_to_value(&doc.e));
    m.insert("g".into(), ref_to_value(&doc.g));
    m.insert("i".into(), matrix_to_value(&q.i));
    m.insert("p".into(), matrix_to_value(&q.p));
    if let Some(s) = &q.s {
        m.insert("section".into(), matrix_to_value(s));
    }
    to_canonical_string(&Value::Object(m))
}

/// Parses `"[1,0]"`, `"1,0"` or `"1 0"` as a degree of `group`.
pub fn parse_degree(group: &GradingGroup, text: &str) -> Result<Degree> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let coords = t
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::parse("degree", format!("malformed coordinate {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != group.rank() {
        return Err(Error::parse("degree", format!("expected {} coordinates, found {}", group.rank(), coords.len())));
    }
    group.degree(&coords).map_err(|e| Error::parse("degree", e.to_string()))
}

/// Document kind by extension, for re-serialization of arbitrary files.
pub fn canonicalize_file(path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent();
    match path.extension().and_then(|e| e.to_str()) {
        Some("alg") => Ok(serialize_algebra_document(&parse_algebra_document(&text)?)),
        Some("ext") => Ok(serialize_extension(&parse_extension(&text, base)?)),
        Some("seq") => Ok(serialize_sequence(&parse_sequence(&text, base)?)),
        Some("mat") => Ok(serialize_matrix(&parse_matrix(&text)?)),
        Some("coch") => {
            let v = parse_json(&text)?;
            let m = obj(&v, "")?;
            let alg = resolve(field(m, "algebra")?, "algebra", base)?;
            let psi = parse_cochain(&alg.doc.algebra, &text)?;
            let mut out = cochain_to_value(&psi);
            let om = out.as_object_mut().unwrap();
            om.insert("format_version".into(), Value::from(FORMAT_VERSION));
            om.insert("algebra".into(), ref_to_value(&alg.reference));
            Ok(to_canonical_string(&out))
        }
        _ => Err(Error::parse("", format!("unknown document kind for {}", path.display()))),
    }
}
