mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rankmetric::equivalence::is_equivalent;
use rankmetric::io::{self, CodeDocument};
use rankmetric::weights::{gen_weights_anticode, gen_weights_qpm, support_weights};
use rankmetric::{ExtensionBasis, Field, Limits, Matrix, MatrixCode, QPolymatroid, Side, Tower, VectorCode};
use serde_json::{json, Value};

use report::{axiom_doc, basis_value, ReportOptions, WeightsDoc};

#[derive(Parser)]
#[command(name = "rankmetric", version, about = "Rank-metric codes, q-polymatroids and generalized weights")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Bound every exhaustive scan by N items.
    #[arg(long, global = true, value_name = "N")]
    guard: Option<u128>,
    /// Disable all scan bounds.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(alias = "column")]
    Col,
    Row,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Col => Side::Column,
            SideArg::Row => Side::Row,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Anticode,
    RankFunction,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a code, optionally with weights, tables and checks.
    Report {
        file: PathBuf,
        #[arg(long)]
        weights: bool,
        #[arg(long)]
        tables: bool,
        #[arg(long)]
        duality: bool,
        #[arg(long)]
        axioms: bool,
        #[arg(long)]
        all: bool,
    },
    /// Write the dual code.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generalized weights.
    Weights {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Rank table of a matrix code.
    Qpm {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_name = "TABLE_OUT")]
        dump: Option<PathBuf>,
    },
    /// Check the q-polymatroid axioms on a rank table.
    QpmCheck { table: PathBuf },
    /// Write the dual rank table.
    QpmDual {
        table: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an isometry between two matrix codes.
    Equiv { file1: PathBuf, file2: PathBuf },
    /// Search for a lattice automorphism between two rank tables.
    PmEquiv { table1: PathBuf, table2: PathBuf },
    /// Expand a vector code over a basis of the extension field.
    Expand {
        file: PathBuf,
        /// `power`, `dual-power`, or comma-separated extension elements.
        #[arg(long)]
        basis: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Gabidulin code of length n and dimension k.
    Gabidulin {
        /// Base field as `P,E` (order P^E).
        #[arg(long, value_name = "P,E")]
        q: String,
        /// Extension degree (defaults to n).
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated evaluation points.
        #[arg(long)]
        points: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Covering radius of a matrix code.
    CoveringRadius { file: PathBuf },
}

struct Ctx {
    json: bool,
    limits: Limits,
}

impl Ctx {
    fn emit(&self, human: String, machine: Value) {
        if self.json {
            print!("{}", io::layout(&machine));
        } else {
            print!("{human}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<rankmetric::Error>() {
                Some(rankmetric::Error::GuardExceeded { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let limits = if cli.force {
        Limits::unbounded()
    } else if let Some(g) = cli.guard {
        Limits { subspaces: g, codewords: g, pairs: g, covering: g }
    } else {
        Limits::default()
    };
    let ctx = Ctx { json: cli.json, limits };
    match cli.command {
        Command::Report { file, weights, tables, duality, axioms, all } => {
            let opts = ReportOptions {
                weights: weights || all,
                tables: tables || all,
                duality: duality || all,
                axioms: axioms || all,
            };
            let parsed = io::parse_code(&read(&file)?)?;
            let doc = report::run_report(parsed.value, parsed.notices, &opts, &ctx.limits)?;
            if !ctx.json {
                for n in &doc.notices {
                    eprintln!("{n}");
                }
            }
            ctx.emit(doc.render(), serde_json::to_value(&doc)?);
        }
        Command::Dual { file, output } => {
            let parsed = io::parse_code(&read(&file)?)?;
            notices(&parsed.notices);
            let dual = match parsed.value {
                CodeDocument::Matrix(c) => CodeDocument::Matrix(c.dual()),
                CodeDocument::Vector(c) => CodeDocument::Vector(c.dual()),
            };
            write_out(output.as_deref(), &io::write_code(&dual))?;
        }
        Command::Weights { file, method } => {
            let code = matrix_code(&file)?;
            let mut doc = WeightsDoc::default();
            if method != MethodArg::RankFunction {
                doc.anticode = Some(gen_weights_anticode(&code, &ctx.limits)?.a);
            }
            if method != MethodArg::Anticode {
                doc.rank_function = Some(gen_weights_qpm(&code, &ctx.limits)?.a);
            }
            doc.cs = support_weights(&code, &ctx.limits)?;
            doc.finish();
            ctx.emit(doc.render(), serde_json::to_value(&doc)?);
        }
        Command::Qpm { file, side, dump } => {
            let code = matrix_code(&file)?;
            let p = QPolymatroid::from_code(&code, side.into(), &ctx.limits)?;
            if let Some(path) = dump {
                write_out(Some(&path), &io::write_rank_table(&p))?;
            }
            let mut human = String::new();
            for (s, v) in p.entries() {
                human.push_str(&format!("{}  {v}\n", basis_value(s)));
            }
            ctx.emit(human, io::rank_table_value(&p));
        }
        Command::QpmCheck { table } => {
            let p = io::parse_rank_table(&read(&table)?, &ctx.limits)?;
            let report = p.check_axioms();
            let doc = axiom_doc("table", &report);
            let qmatroid = report.is_pass() && p.is_qmatroid();
            let human = format!("{}\nq-matroid: {}\n", doc.render(), yes_no(qmatroid));
            ctx.emit(human, json!({"axioms": doc, "qmatroid": qmatroid}));
            if !report.is_pass() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::QpmDual { table, output } => {
            let p = io::parse_rank_table(&read(&table)?, &ctx.limits)?;
            write_out(output.as_deref(), &io::write_rank_table(&p.dual()))?;
        }
        Command::Equiv { file1, file2 } => {
            let c1 = matrix_code(&file1)?;
            let c2 = matrix_code(&file2)?;
            match is_equivalent(&c1, &c2, &ctx.limits)? {
                Some(w) => {
                    let src = if w.transposed { "A C1^t B" } else { "A C1 B" };
                    let human = format!(
                        "equivalent: C2 = {src}\nA = {}\nB = {}\n",
                        matrix_value(&w.a),
                        matrix_value(&w.b)
                    );
                    let machine = json!({
                        "equivalent": true,
                        "witness": {"a": w.a.to_rows(), "b": w.b.to_rows(), "transposed": w.transposed}
                    });
                    ctx.emit(human, machine);
                }
                None => ctx.emit("not equivalent\n".into(), json!({"equivalent": false, "witness": null})),
            }
        }
        Command::PmEquiv { table1, table2 } => {
            let p1 = io::parse_rank_table(&read(&table1)?, &ctx.limits)?;
            let p2 = io::parse_rank_table(&read(&table2)?, &ctx.limits)?;
            match p1.equivalent(&p2, &ctx.limits)? {
                Some(g) => ctx.emit(
                    format!("equivalent: rho2(A G) = rho1(A)\nG = {}\n", matrix_value(&g)),
                    json!({"equivalent": true, "g": g.to_rows()}),
                ),
                None => ctx.emit("not equivalent\n".into(), json!({"equivalent": false, "g": null})),
            }
        }
        Command::Expand { file, basis, output } => {
            let parsed = io::parse_vector_code(&read(&file)?)?;
            notices(&parsed.notices);
            let code = parsed.value;
            let gamma = parse_basis(code.tower(), &basis)?;
            let expanded = code.expand(&gamma)?;
            write_out(output.as_deref(), &io::write_matrix_code(&expanded))?;
        }
        Command::Gabidulin { q, m, n, k, points, output } => {
            let (p, e) = parse_pair(&q)?;
            let base = Field::new(p, e, None)?;
            let m = m.unwrap_or(n as u32);
            let tower = Tower::new(base, Field::new(p, e * m, None)?)?;
            let points = points.map(|s| parse_list(&s)).transpose()?;
            let code = VectorCode::gabidulin(&tower, n, k, points.as_deref())?;
            write_out(output.as_deref(), &io::write_vector_code(&code))?;
        }
        Command::CoveringRadius { file } => {
            let code = matrix_code(&file)?;
            let r = code.covering_radius(&ctx.limits)?;
            ctx.emit(format!("covering radius: {r}\n"), json!({"covering_radius": r}));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn notices(list: &[String]) {
    for n in list {
        eprintln!("{n}");
    }
}

/// Reads a matrix code; vector codes are expanded over the power basis.
fn matrix_code(path: &Path) -> Result<MatrixCode> {
    let parsed = io::parse_code(&read(path)?)?;
    let mut list = parsed.notices;
    let code = report::as_matrix_code(parsed.value, &mut list)?;
    notices(&list);
    Ok(code)
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().with_context(|| format!("invalid integer {t:?}")))
        .collect()
}

fn parse_pair(s: &str) -> Result<(u32, u32)> {
    match *parse_list(s)?.as_slice() {
        [p, e] => Ok((p, e)),
        [p] => Ok((p, 1)),
        _ => bail!("expected P,E, got {s:?}"),
    }
}

fn parse_basis(tower: &Tower, spec: &str) -> Result<ExtensionBasis> {
    Ok(match spec {
        "power" => tower.power_basis(),
        "dual-power" => tower.power_basis().dual(),
        list => ExtensionBasis::new(tower, parse_list(list)?)?,
    })
}

fn matrix_value(m: &Matrix) -> String {
    serde_json::to_string(&m.to_rows()).expect("serializable")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
