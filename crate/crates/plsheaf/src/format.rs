//! JSON documents. Exact values are strings `"p/q"`; only `pw` output uses
//! decimal floats.
//!
//! ```json
//! {"dim": 2, "cells": [[{"coeffs": ["1", "0"], "rel": "<=", "rhs": "1/2"}]]}
//! ```
//!
//! A set is a union of cells, a cell a conjunction of constraints; `[]` is the
//! empty set and `[[]]` the whole space. An object lists terms
//! `{"cells": …, "shift": d, "rank": r}` (shift 0 and rank 1 by default),
//! each contributing `r` in degree `−d`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use plsheaf_core::cohomology::GradedDims;
use plsheaf_core::pw::GrowthCertificate;
use plsheaf_core::sheaf::{Kernel, ShiftedTerm};
use plsheaf_core::transforms::Counterexample;
use plsheaf_core::verify::Report;
use plsheaf_core::{AffineConstraint, ConstructibleObject, PLSet, Pairing, Rational, Relation};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}:{line}:{column}: at `{field}`: {message}")]
    Syntax { origin: String, line: usize, column: usize, field: String, message: String },
    #[error("{origin}: at `{field}`: {message}")]
    Value { origin: String, field: String, message: String },
}

type Result<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub coeffs: Vec<String>,
    pub rel: String,
    pub rhs: String,
}

pub type CellsDoc = Vec<Vec<ConstraintDoc>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDoc {
    pub dim: usize,
    pub cells: CellsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub cells: CellsDoc,
    #[serde(default)]
    pub shift: i64,
    #[serde(default = "one")]
    pub rank: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub dim: usize,
    pub terms: Vec<TermDoc>,
}

/// An object on `Q^{n1} × Q^{n2}`, the first factor being integrated out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDoc {
    pub n1: usize,
    pub n2: usize,
    pub terms: Vec<TermDoc>,
}

/// `⟨x, y⟩ = xᵀ B y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingDoc {
    pub matrix: Vec<Vec<String>>,
}

struct Ctx<'a> {
    origin: &'a str,
}

impl Ctx<'_> {
    fn err(&self, field: impl Into<String>, message: impl fmt::Display) -> FormatError {
        FormatError::Value { origin: self.origin.into(), field: field.into(), message: message.to_string() }
    }

    fn rational(&self, field: &str, s: &str) -> Result<Rational> {
        s.parse().map_err(|e| self.err(field, e))
    }

    fn constraint(&self, field: &str, dim: usize, c: &ConstraintDoc) -> Result<AffineConstraint> {
        if c.coeffs.len() != dim {
            return Err(self.err(format!("{field}.coeffs"), format!("expected {dim} coefficients, got {}", c.coeffs.len())));
        }
        let coeffs = c
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| self.rational(&format!("{field}.coeffs[{i}]"), s))
            .collect::<Result<Vec<_>>>()?;
        let rhs = self.rational(&format!("{field}.rhs"), &c.rhs)?;
        Ok(match c.rel.as_str() {
            "<=" => AffineConstraint::le(coeffs, rhs),
            "<" => AffineConstraint::lt(coeffs, rhs),
            "=" | "==" => AffineConstraint::eq(coeffs, rhs),
            ">=" => AffineConstraint::ge(coeffs, rhs),
            ">" => AffineConstraint::gt(coeffs, rhs),
            other => return Err(self.err(format!("{field}.rel"), format!("unknown relation `{other}` (use <=, <, =, >=, >)"))),
        })
    }

    fn cells(&self, field: &str, dim: usize, cells: &CellsDoc) -> Result<PLSet> {
        let mut out = Vec::with_capacity(cells.len());
        for (i, cell) in cells.iter().enumerate() {
            let cs = cell
                .iter()
                .enumerate()
                .map(|(j, c)| self.constraint(&format!("{field}[{i}][{j}]"), dim, c))
                .collect::<Result<Vec<_>>>()?;
            out.push(cs);
        }
        PLSet::from_conjunctions(dim, out).map_err(|e| self.err(field, e))
    }

    fn terms(&self, dim: usize, terms: &[TermDoc]) -> Result<ConstructibleObject> {
        let mut out = Vec::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            let set = self.cells(&format!("terms[{i}].cells"), dim, &t.cells)?;
            out.push(ShiftedTerm::new(set, t.shift, t.rank));
        }
        ConstructibleObject::new(dim, out).map_err(|e| self.err("terms", e))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(origin: &str, text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        FormatError::Syntax { origin: origin.into(), line: inner.line(), column: inner.column(), field, message: inner.to_string() }
    })
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn parse_set(origin: &str, text: &str) -> Result<PLSet> {
    set_from_doc(origin, &parse_json(origin, text)?)
}

pub fn set_from_doc(origin: &str, doc: &SetDoc) -> Result<PLSet> {
    Ctx { origin }.cells("cells", doc.dim, &doc.cells)
}

pub fn parse_object(origin: &str, text: &str) -> Result<ConstructibleObject> {
    object_from_doc(origin, &parse_json(origin, text)?)
}

pub fn object_from_doc(origin: &str, doc: &ObjectDoc) -> Result<ConstructibleObject> {
    Ctx { origin }.terms(doc.dim, &doc.terms)
}

pub fn parse_kernel(origin: &str, text: &str) -> Result<Kernel> {
    let doc: KernelDoc = parse_json(origin, text)?;
    let ctx = Ctx { origin };
    let object = ctx.terms(doc.n1 + doc.n2, &doc.terms)?;
    Kernel::from_object(&object, doc.n1, doc.n2).map_err(|e| ctx.err("terms", e))
}

pub fn parse_pairing(origin: &str, text: &str) -> Result<Pairing> {
    let doc: PairingDoc = parse_json(origin, text)?;
    let ctx = Ctx { origin };
    let mut rows = Vec::with_capacity(doc.matrix.len());
    for (i, row) in doc.matrix.iter().enumerate() {
        if row.len() != doc.matrix.len() {
            return Err(ctx.err(format!("matrix[{i}]"), "pairing matrix must be square"));
        }
        rows.push(row.iter().enumerate().map(|(j, s)| ctx.rational(&format!("matrix[{i}][{j}]"), s)).collect::<Result<Vec<_>>>()?);
    }
    Pairing::new(rows).map_err(|e| ctx.err("matrix", e))
}

/// A point written `"a/b,c,…"`.
pub fn parse_point(origin: &str, text: &str) -> Result<Vec<Rational>> {
    let ctx = Ctx { origin };
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').enumerate().map(|(i, s)| ctx.rational(&format!("[{i}]"), s.trim())).collect()
}

fn rel_str(r: Relation) -> &'static str {
    match r {
        Relation::Eq => "=",
        Relation::Le => "<=",
        Relation::Lt => "<",
    }
}

fn cells_to_doc(s: &PLSet) -> CellsDoc {
    s.cells()
        .iter()
        .map(|c| {
            c.constraints()
                .iter()
                .map(|k| ConstraintDoc {
                    coeffs: k.coeffs.iter().map(Rational::to_string).collect(),
                    rel: rel_str(k.rel).into(),
                    rhs: k.rhs.to_string(),
                })
                .collect()
        })
        .collect()
}

pub fn set_to_doc(s: &PLSet) -> SetDoc {
    SetDoc { dim: s.dim(), cells: cells_to_doc(s) }
}

pub fn object_to_doc(f: &ConstructibleObject) -> ObjectDoc {
    ObjectDoc {
        dim: f.dim(),
        terms: f.terms().iter().map(|t| TermDoc { cells: cells_to_doc(&t.set), shift: t.shift, rank: t.rank }).collect(),
    }
}

pub fn dims_json(g: &GradedDims) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = g.iter().map(|(k, v)| (k.to_string(), v.into())).collect();
    serde_json::Value::Object(map)
}

pub fn parse_dims(v: &serde_json::Value) -> Option<GradedDims> {
    let mut g = GradedDims::new();
    for (k, v) in v.as_object()? {
        g.add(k.parse().ok()?, usize::try_from(v.as_u64()?).ok()?);
    }
    Some(g)
}

fn point_json(p: &[Rational]) -> serde_json::Value {
    p.iter().map(|x| serde_json::Value::String(x.to_string())).collect()
}

fn counterexample_json(c: &Counterexample) -> serde_json::Value {
    serde_json::json!({
        "point": point_json(&c.point),
        "expected": dims_json(&c.expected),
        "actual": dims_json(&c.actual),
    })
}

/// One report; `wall_time_ms` is included only when given, so default output
/// is reproducible byte for byte.
pub fn report_json(r: &Report, wall_time_ms: Option<f64>) -> serde_json::Value {
    let mut m = serde_json::Map::new();
    m.insert("scenario".into(), r.scenario.clone().into());
    m.insert("evaluator".into(), r.evaluator.map(|e| e.as_str()).into());
    m.insert("status".into(), r.status.as_str().into());
    m.insert("samples".into(), r.samples.into());
    m.insert("seed".into(), r.seed.into());
    m.insert("negative_control".into(), r.negative_control.into());
    m.insert("counterexample".into(), r.counterexample.as_ref().map(counterexample_json).into());
    m.insert("error".into(), r.error.clone().into());
    if let Some(t) = wall_time_ms {
        m.insert("wall_time_ms".into(), t.into());
    }
    serde_json::Value::Object(m)
}

pub fn certificate_json(g: &GrowthCertificate) -> serde_json::Value {
    serde_json::json!({
        "order": g.order,
        "constant": g.constant,
        "inner": g.inner,
        "verdict": g.verdict.as_str(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// `{"dims": …}`.
pub fn dims_document(g: &GradedDims) -> serde_json::Value {
    let mut m = BTreeMap::new();
    m.insert("dims", dims_json(g));
    serde_json::to_value(m).expect("map of values")
}

#[cfg(test)]
mod tests {
    use super::*;
    use plsheaf_core::{q, qi};

    #[test]
    fn set_roundtrip_and_diagnostics() {
        let text = r#"{"dim": 1, "cells": [[{"coeffs": ["1"], "rel": ">=", "rhs": "0"},
                                            {"coeffs": ["1"], "rel": "<", "rhs": "1"}]]}"#;
        let s = parse_set("halfopen.json", text).unwrap();
        assert!(s.member(&[qi(0)]) && !s.member(&[qi(1)]) && s.member(&[q(1, 2)]));
        let again = parse_set("x", &serde_json::to_string(&set_to_doc(&s)).unwrap()).unwrap();
        assert!(again.set_eq(&s).unwrap());

        let bad = r#"{"dim": 1, "cells": [[{"coeffs": ["1"], "rel": "<~", "rhs": "0"}]]}"#;
        let e = parse_set("bad.json", bad).unwrap_err().to_string();
        assert!(e.contains("cells[0][0].rel"), "{e}");
        let bad = r#"{"dim": 1, "cells": [[{"coeffs": ["x"], "rel": "<", "rhs": "0"}]]}"#;
        assert!(parse_set("bad.json", bad).unwrap_err().to_string().contains("cells[0][0].coeffs[0]"));
        let bad = "{\"dim\": 1,\n \"cells\": 3}";
        let e = parse_set("bad.json", bad).unwrap_err().to_string();
        assert!(e.starts_with("bad.json:2:") && e.contains("`cells`"), "{e}");
        let bad = r#"{"dim": 1, "cells": [], "extra": 1}"#;
        assert!(parse_set("bad.json", bad).is_err());
    }

    #[test]
    fn dims_use_string_keys() {
        let g = GradedDims::from_pairs(&[(-1, 2), (0, 1)]);
        assert_eq!(serde_json::to_string(&dims_document(&g)).unwrap(), r#"{"dims":{"-1":2,"0":1}}"#);
        assert_eq!(parse_dims(&dims_json(&g)), Some(g));
        assert_eq!(serde_json::to_string(&dims_document(&GradedDims::new())).unwrap(), r#"{"dims":{}}"#);
    }

    #[test]
    fn points_and_pairings() {
        assert_eq!(parse_point("p", "1/2, -3").unwrap(), vec![q(1, 2), qi(-3)]);
        assert!(parse_point("p", "1/0").is_err());
        let b = parse_pairing("b", r#"{"matrix": [["2", "1"], ["0", "1"]]}"#).unwrap();
        assert_eq!(b.pair(&[qi(1), qi(0)], &[qi(0), qi(1)]), qi(1));
        assert!(parse_pairing("b", r#"{"matrix": [["2", "1"]]}"#).is_err());
    }
}
