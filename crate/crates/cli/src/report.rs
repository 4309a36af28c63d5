use anyhow::Result;
use rankmetric::io::{self, CodeDocument, FieldDoc};
use rankmetric::qpm::AxiomReport;
use rankmetric::weights::{gen_weights_anticode, gen_weights_qpm, support_weights};
use rankmetric::{Error, Limits, MatrixCode, QPolymatroid, Side, Subspace};
use serde::Serialize;
use serde_json::Value;

pub struct ReportOptions {
    pub weights: bool,
    pub tables: bool,
    pub duality: bool,
    pub axioms: bool,
}

#[derive(Serialize)]
pub struct VectorSummary {
    pub length: usize,
    pub dim: usize,
    pub extension_degree: usize,
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub kind: &'static str,
    pub field: FieldDoc,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub d: Option<usize>,
    pub mrd: bool,
    pub maxrk: usize,
    pub optimal_anticode: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<VectorSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<TablesDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<Vec<DualityDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<Vec<AxiomDoc>>,
    pub notices: Vec<String>,
}

#[derive(Serialize, Default)]
pub struct WeightsDoc {
    pub a: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anticode: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_function: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
    pub cs: Vec<usize>,
}

#[derive(Serialize)]
pub struct TablesDoc {
    pub column: Value,
    pub row: Value,
}

#[derive(Serialize)]
pub struct DualityDoc {
    pub statement: String,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct AxiomDoc {
    pub table: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<u32>>>,
}

impl WeightsDoc {
    pub fn finish(&mut self) {
        self.a = self.rank_function.clone().or_else(|| self.anticode.clone()).unwrap_or_default();
        if let (Some(x), Some(y)) = (&self.anticode, &self.rank_function) {
            self.methods_agree = Some(x == y);
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(a) = &self.anticode {
            out.push_str(&format!("a (anticode): {}\n", list(a)));
        }
        if let Some(a) = &self.rank_function {
            out.push_str(&format!("a (rank-function): {}\n", list(a)));
        }
        if let Some(eq) = self.methods_agree {
            out.push_str(&format!("methods agree: {}\n", if eq { "yes" } else { "NO" }));
        }
        out.push_str(&format!("cs: {}\n", list(&self.cs)));
        out
    }
}

impl AxiomDoc {
    pub fn render(&self) -> String {
        if self.pass {
            return format!("{}: P1 P2 P3 pass", self.table);
        }
        let mut out = format!("{}: violates {}", self.table, self.axiom.as_deref().unwrap_or("?"));
        if let Some(a) = &self.a {
            out.push_str(&format!(" at A = {}", rows(a)));
        }
        if let Some(b) = &self.b {
            out.push_str(&format!(", B = {}", rows(b)));
        }
        out
    }
}

pub fn axiom_doc(table: &str, report: &AxiomReport) -> AxiomDoc {
    match report {
        AxiomReport::Pass => AxiomDoc { table: table.into(), pass: true, axiom: None, a: None, b: None },
        AxiomReport::Violation { axiom, a, b } => AxiomDoc {
            table: table.into(),
            pass: false,
            axiom: Some(axiom.to_string()),
            a: Some(a.basis().to_vec()),
            b: b.as_ref().map(|b| b.basis().to_vec()),
        },
    }
}

pub fn basis_value(s: &Subspace) -> String {
    rows(s.basis())
}

fn rows(r: &[Vec<u32>]) -> String {
    serde_json::to_string(r).expect("serializable")
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn tag(side: Side) -> &'static str {
    match side {
        Side::Column => "c",
        Side::Row => "r",
    }
}

/// Turns a parsed document into an `n ≤ m` matrix code, expanding vector
/// codes over the power basis.
pub fn as_matrix_code(doc: CodeDocument, notices: &mut Vec<String>) -> Result<MatrixCode> {
    let code = match doc {
        CodeDocument::Matrix(c) => c,
        CodeDocument::Vector(v) => {
            notices.push("notice: vector code expanded over the power basis".into());
            v.expand(&v.tower().power_basis())?
        }
    };
    if code.n() > code.m() {
        notices.push(format!("notice: {}x{} code transposed to {}x{}", code.n(), code.m(), code.m(), code.n()));
        return Ok(code.transpose());
    }
    Ok(code)
}

pub fn run_report(
    doc: CodeDocument,
    mut notices: Vec<String>,
    opts: &ReportOptions,
    limits: &Limits,
) -> Result<ReportDoc> {
    let vector = match &doc {
        CodeDocument::Vector(v) => {
            Some(VectorSummary { length: v.len(), dim: v.dim(), extension_degree: v.tower().degree() })
        }
        CodeDocument::Matrix(_) => None,
    };
    let kind = if vector.is_some() { "vector" } else { "matrix" };
    let code = as_matrix_code(doc, &mut notices)?;
    let zero = code.is_zero();
    let d = if zero { None } else { Some(code.min_distance(limits)?) };
    let mrd = !zero && code.is_mrd(limits)?;
    let weights = if opts.weights {
        if zero {
            return Err(Error::ZeroCode.into());
        }
        let mut w = WeightsDoc {
            anticode: Some(gen_weights_anticode(&code, limits)?.a),
            rank_function: Some(gen_weights_qpm(&code, limits)?.a),
            cs: support_weights(&code, limits)?,
            ..WeightsDoc::default()
        };
        w.finish();
        Some(w)
    } else {
        None
    };
    let need_tables = opts.tables || opts.duality || opts.axioms;
    let tables = if need_tables {
        Some((
            QPolymatroid::from_code(&code, Side::Column, limits)?,
            QPolymatroid::from_code(&code, Side::Row, limits)?,
        ))
    } else {
        None
    };
    let by_side = |side: Side| {
        let (c, r) = tables.as_ref().expect("tables computed");
        if side == Side::Column {
            c
        } else {
            r
        }
    };
    let duality = if opts.duality {
        let dual = code.dual();
        let mut out = Vec::new();
        for side in [Side::Column, Side::Row] {
            let expected = QPolymatroid::from_code(&dual, side, limits)?;
            let s = tag(side);
            out.push(DualityDoc {
                statement: format!("P(C,{s})* = P(C^⊥,{s})"),
                verified: by_side(side).dual() == expected,
            });
        }
        Some(out)
    } else {
        None
    };
    let axioms = opts.axioms.then(|| {
        [Side::Column, Side::Row]
            .into_iter()
            .map(|side| axiom_doc(&format!("P(C,{})", tag(side)), &by_side(side).check_axioms()))
            .collect()
    });
    let tables_doc = opts.tables.then(|| TablesDoc {
        column: io::rank_table_value(by_side(Side::Column)),
        row: io::rank_table_value(by_side(Side::Row)),
    });
    Ok(ReportDoc {
        kind,
        field: FieldDoc::of(code.field()),
        n: code.n(),
        m: code.m(),
        dim: code.dim(),
        d,
        mrd,
        maxrk: code.maxrk(limits)?,
        optimal_anticode: code.is_optimal_anticode(limits)?,
        vector,
        weights,
        tables: tables_doc,
        duality,
        axioms,
        notices,
    })
}

impl ReportDoc {
    pub fn render(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let field = FieldDoc::build(&self.field).map(|f| f.to_string()).unwrap_or_default();
        let mut out = format!("code: {}x{} {} code over {field}, dimension {}\n", self.n, self.m, self.kind, self.dim);
        if let Some(v) = &self.vector {
            out.push_str(&format!(
                "vector code: length {}, dimension {}, extension degree {}\n",
                v.length, v.dim, v.extension_degree
            ));
        }
        match self.d {
            Some(d) => out.push_str(&format!("d: {d}\n")),
            None => out.push_str("d: undefined (zero code)\n"),
        }
        out.push_str(&format!("maxrk: {}\n", self.maxrk));
        out.push_str(&format!("MRD: {}\n", yes(self.mrd)));
        out.push_str(&format!("optimal anticode: {}\n", yes(self.optimal_anticode)));
        if let Some(w) = &self.weights {
            out.push_str(&w.render());
        }
        if let Some(t) = &self.tables {
            for (name, table) in [("P(C,c)", &t.column), ("P(C,r)", &t.row)] {
                out.push_str(&format!("{name}:\n"));
                for e in table["entries"].as_array().into_iter().flatten() {
                    let (num, den) = (&e[1], &e[2]);
                    let value = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
                    out.push_str(&format!("  {}  {value}\n", e[0]));
                }
            }
        }
        for c in self.duality.iter().flatten() {
            out.push_str(&format!("{}: {}\n", c.statement, if c.verified { "verified" } else { "FAILED" }));
        }
        for a in self.axioms.iter().flatten() {
            out.push_str(&a.render());
            out.push('\n');
        }
        out
    }
}
