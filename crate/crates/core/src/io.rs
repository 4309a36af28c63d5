//! JSON documents for fields, codes, and rank tables.
//!
//! Canonical output is stable byte-for-byte: keys in fixed order, one
//! generator or table entry per line.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::code::MatrixCode;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::qpm::{QPolymatroid, Rational};
use crate::subspace::Subspace;
use crate::tower::Tower;
use crate::vector_code::VectorCode;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldDoc {
    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.e, self.modulus.clone())
    }

    pub fn of(field: &Field) -> Self {
        FieldDoc { p: field.characteristic(), e: field.degree(), modulus: Some(field.modulus().to_vec()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub base: FieldDoc,
    pub extension: FieldDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixCodeDoc {
    #[serde(default)]
    kind: Option<String>,
    field: FieldDoc,
    n: usize,
    m: usize,
    generators: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorCodeDoc {
    #[serde(default)]
    kind: Option<String>,
    tower: TowerDoc,
    n: usize,
    generators: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RankTableDoc {
    field: FieldDoc,
    ground_dim: usize,
    entries: Vec<(Vec<Vec<u32>>, i64, i64)>,
}

/// A parsed code file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeDocument {
    Matrix(MatrixCode),
    Vector(VectorCode),
}

/// A parsed value with non-fatal remarks (e.g. dropped generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub notices: Vec<String>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// Parses a matrix-code or vector-code document. The kind is taken from the
/// `kind` key, or inferred from the presence of `tower`.
pub fn parse_code(text: &str) -> Result<Parsed<CodeDocument>> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    let kind = value.get("kind").and_then(Value::as_str).map(str::to_owned);
    let is_vector = match kind.as_deref() {
        Some("vector") => true,
        Some("matrix") => false,
        Some(other) => return Err(Error::Parse(format!("unknown code kind {other:?}"))),
        None => value.get("tower").is_some(),
    };
    if is_vector {
        let doc: VectorCodeDoc = serde_json::from_value(value).map_err(parse_err)?;
        let p = vector_from_doc(&doc)?;
        Ok(Parsed { value: CodeDocument::Vector(p.value), notices: p.notices })
    } else {
        let doc: MatrixCodeDoc = serde_json::from_value(value).map_err(parse_err)?;
        let p = matrix_from_doc(&doc)?;
        Ok(Parsed { value: CodeDocument::Matrix(p.value), notices: p.notices })
    }
}

pub fn parse_matrix_code(text: &str) -> Result<Parsed<MatrixCode>> {
    match parse_code(text)? {
        Parsed { value: CodeDocument::Matrix(c), notices } => Ok(Parsed { value: c, notices }),
        _ => Err(Error::Parse("expected a matrix code, found a vector code".into())),
    }
}

pub fn parse_vector_code(text: &str) -> Result<Parsed<VectorCode>> {
    match parse_code(text)? {
        Parsed { value: CodeDocument::Vector(c), notices } => Ok(Parsed { value: c, notices }),
        _ => Err(Error::Parse("expected a vector code, found a matrix code".into())),
    }
}

fn dropped_notice(given: usize, dim: usize) -> Vec<String> {
    if given > dim {
        vec![format!("warning: {} dependent generator(s) dropped ({given} given, dimension {dim})", given - dim)]
    } else {
        Vec::new()
    }
}

fn matrix_from_doc(doc: &MatrixCodeDoc) -> Result<Parsed<MatrixCode>> {
    let field = doc.field.build()?;
    let mut mats = Vec::with_capacity(doc.generators.len());
    for (g, rows) in doc.generators.iter().enumerate() {
        if rows.len() != doc.n || rows.iter().any(|r| r.len() != doc.m) {
            return Err(Error::Parse(format!("generator {g} is not a {}x{} matrix", doc.n, doc.m)));
        }
        let mat = Matrix::from_rows(&field, rows).map_err(|e| match e {
            Error::EntryOutOfRange { row, col, value, order } => Error::Parse(format!(
                "generator {g}: entry {value} at row {row}, column {col} is not below the field order {order}"
            )),
            other => other,
        })?;
        mats.push(mat);
    }
    let mut code = MatrixCode::from_generators(&field, doc.n, doc.m, &mats)?;
    let mut notices = dropped_notice(mats.len(), code.dim());
    if doc.n > doc.m {
        code = code.transpose();
        notices.push(format!("notice: {}x{} code transposed to {}x{}", doc.n, doc.m, doc.m, doc.n));
    }
    Ok(Parsed { value: code, notices })
}

fn vector_from_doc(doc: &VectorCodeDoc) -> Result<Parsed<VectorCode>> {
    let tower = Tower::new(doc.tower.base.build()?, doc.tower.extension.build()?)?;
    let order = tower.ext().order();
    for (g, v) in doc.generators.iter().enumerate() {
        if v.len() != doc.n {
            return Err(Error::Parse(format!("generator {g} has length {}, expected {}", v.len(), doc.n)));
        }
        if let Some((col, &value)) = v.iter().enumerate().find(|(_, &x)| x >= order) {
            return Err(Error::Parse(format!(
                "generator {g}: entry {value} at position {col} is not below the field order {order}"
            )));
        }
    }
    let code = VectorCode::new(&tower, doc.n, &doc.generators)?;
    let notices = dropped_notice(doc.generators.len(), code.dim());
    Ok(Parsed { value: code, notices })
}

/// Canonical document for a matrix code: its RREF basis.
pub fn matrix_code_value(code: &MatrixCode) -> Value {
    let doc = MatrixCodeDoc {
        kind: Some("matrix".into()),
        field: FieldDoc::of(code.field()),
        n: code.n(),
        m: code.m(),
        generators: code.basis_matrices().iter().map(Matrix::to_rows).collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn write_matrix_code(code: &MatrixCode) -> String {
    layout(&matrix_code_value(code))
}

pub fn vector_code_value(code: &VectorCode) -> Value {
    let doc = VectorCodeDoc {
        kind: Some("vector".into()),
        tower: TowerDoc { base: FieldDoc::of(code.tower().base()), extension: FieldDoc::of(code.tower().ext()) },
        n: code.len(),
        generators: code.basis().to_vec(),
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn write_vector_code(code: &VectorCode) -> String {
    layout(&vector_code_value(code))
}

pub fn write_code(doc: &CodeDocument) -> String {
    match doc {
        CodeDocument::Matrix(c) => write_matrix_code(c),
        CodeDocument::Vector(c) => write_vector_code(c),
    }
}

pub fn rank_table_value(p: &QPolymatroid) -> Value {
    let doc = RankTableDoc {
        field: FieldDoc::of(p.field()),
        ground_dim: p.ground_dim(),
        entries: p.entries().map(|(s, v)| (s.basis().to_vec(), *v.numer(), *v.denom())).collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn write_rank_table(p: &QPolymatroid) -> String {
    layout(&rank_table_value(p))
}

/// Parses a rank table; entries may appear in any order but must cover every
/// subspace exactly once.
pub fn parse_rank_table(text: &str, limits: &Limits) -> Result<QPolymatroid> {
    let doc: RankTableDoc = serde_json::from_str(text).map_err(parse_err)?;
    let field = doc.field.build()?;
    let n = doc.ground_dim;
    let entries = doc
        .entries
        .iter()
        .enumerate()
        .map(|(i, (rows, num, den))| {
            if *den <= 0 {
                return Err(Error::Parse(format!("entry {i}: denominator must be positive")));
            }
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("entry {i}: basis vectors must have length {n}")));
            }
            let s = Subspace::span(&field, n, rows).map_err(|e| Error::Parse(format!("entry {i}: {e}")))?;
            if s.dim() != rows.len() {
                return Err(Error::Parse(format!("entry {i}: basis rows are dependent")));
            }
            Ok((s, Rational::new(*num, *den)))
        })
        .collect::<Result<Vec<_>>>()?;
    QPolymatroid::from_entries(&field, n, entries, limits)
}

/// Renders a JSON value with top-level keys and top-level array items on
/// their own lines, everything deeper compact.
pub fn layout(value: &Value) -> String {
    let compact = |v: &Value| serde_json::to_string(v).expect("serializable");
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            out.push_str("{\n");
            let len = map.len();
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&format!("  {}: ", compact(&Value::String(k.clone()))));
                match v {
                    Value::Array(items) if !items.is_empty() => {
                        out.push_str("[\n");
                        for (j, item) in items.iter().enumerate() {
                            out.push_str("    ");
                            out.push_str(&compact(item));
                            out.push_str(if j + 1 < items.len() { ",\n" } else { "\n" });
                        }
                        out.push_str("  ]");
                    }
                    _ => out.push_str(&compact(v)),
                }
                out.push_str(if i + 1 < len { ",\n" } else { "\n" });
            }
            out.push_str("}\n");
        }
        other => {
            out.push_str(&compact(other));
            out.push('\n');
        }
    }
    out
}
