//! `wsuper`: batch front end for wsuper-core.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use wsuper::gl::LieSuperElement;
use wsuper::modules1d::eigen::{eigenvalues_to_json, reduced_from_json};
use wsuper::modules1d::{
    classify, eigenvalues_of, solve_with, symbolic_module_check, Solved, Tableau, TableauJson,
};
use wsuper::pyramid::{Pyramid, PyramidJson, ShiftMatrix};
use wsuper::scalar::{parse_rational, render_rational, Rational};
use wsuper::wgen::relations::{run_suite, select, LevelBound};
use wsuper::wgen::WGen;
use wsuper::Error;

#[derive(Parser)]
#[command(name = "wsuper", version, about = "Finite W-superalgebras of gl(M|N) and their one-dimensional modules")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Derived data of the pyramid given by a shift matrix, level and sign word.
    Pyramid {
        /// JSON file holding the shift matrix as a list of rows.
        #[arg(long)]
        shift: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Row parities top to bottom, 0 for plus and 1 for minus.
        #[arg(long)]
        signs: String,
    },
    /// Relation, membership and truncation checks of the explicit generators.
    WgenVerify {
        #[arg(long)]
        pyramid: PathBuf,
        /// Largest level of any generator involved.
        #[arg(long, default_value_t = 3)]
        max_level: u32,
        /// Comma-separated relation ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        relations: Vec<String>,
    },
    /// Column-connected verdict, eigenvalues and symbolic check of a tableau.
    ModuleEval {
        #[arg(long)]
        tableau: PathBuf,
    },
    /// Canonical column-connected tableaux with entries from a pool.
    Classify {
        #[arg(long)]
        pyramid: PathBuf,
        /// Comma-separated rationals, e.g. "-1,0,1/2".
        #[arg(long, allow_hyphen_values = true)]
        pool: String,
    },
    /// Column-connected tableau with the given reduced eigenvalues.
    Solve {
        #[arg(long)]
        pyramid: PathBuf,
        /// JSON object with keys "a[i][r]".
        #[arg(long)]
        eigenvalues: PathBuf,
        /// Complex floating roots instead of exact rational ones.
        #[arg(long)]
        numeric: bool,
    },
    /// Minimal dimension p^{d0/2} 2^{d1/2} in characteristic p.
    Dims {
        #[arg(long)]
        pyramid: PathBuf,
        #[arg(long)]
        prime: u32,
    },
}

/// Outcome of a verb: exit status plus the document to print.
struct Output {
    code: u8,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { code: 0, text, json }
    }
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::NonSplit(_) => (4, "non_split"),
            Error::NotColumnConnected => (2, "not_column_connected"),
            _ => (2, "invalid_input"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn invalid(message: String) -> Failure {
    Failure { code: 2, kind: "invalid_input", message }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let raw = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_pyramid(path: &Path) -> Result<Pyramid, Failure> {
    Ok(Pyramid::from_json(&read_json::<PyramidJson>(path)?)?)
}

fn rows_json(rows: &[Vec<Rational>]) -> Value {
    json!(rows.iter().map(|r| r.iter().map(render_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn rows_text(rows: &[Vec<Rational>]) -> String {
    rows.iter()
        .map(|r| format!("({})", r.iter().map(render_rational).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn element_json(x: &LieSuperElement) -> Value {
    json!(x
        .terms()
        .map(|((i, j), c)| json!({"row": i.to_string(), "col": j.to_string(), "coeff": render_rational(c)}))
        .collect::<Vec<_>>())
}

fn pyramid_verb(shift: &Path, ell: usize, signs: &str) -> Result<Output, Failure> {
    let matrix: Vec<Vec<u32>> = read_json(shift)?;
    let py = Pyramid::from_signs_str(ShiftMatrix::new(matrix)?, ell, signs)?;
    let st = py.super_stats();
    let boxes: Vec<_> = py.shape().indices();
    let col_x: BTreeMap<String, i64> = boxes.iter().map(|&b| (b.to_string(), py.col_x(b))).collect();
    let row_check: BTreeMap<String, i64> = boxes.iter().map(|&b| (b.to_string(), st.box_rows[&b])).collect();
    let (d0, d1) = py.centralizer_dims();
    let good = py.good_pair_check();
    let shape = py.shape();
    let h = py.h_pi();
    let h_diag: Vec<String> = boxes.iter().map(|&b| render_rational(&h.coefficient(b, b))).collect();
    let json = json!({
        "shift": py.to_json().shift,
        "shift_valid": true,
        "gl": {"m": shape.plus, "n": shape.minus},
        "p": py.p(),
        "column_heights": st.column_heights,
        "row_check": row_check,
        "row_numbers": st.row_numbers,
        "col_x": col_x,
        "e_pi": element_json(&py.e_pi()),
        "h_pi_diagonal": h_diag,
        "d0": d0,
        "d1": d1,
        "good_pair": good.holds(),
    });
    let fmt_map = |m: &BTreeMap<String, i64>| {
        boxes.iter().map(|b| format!("{b}:{}", m[&b.to_string()])).collect::<Vec<_>>().join(" ")
    };
    let text = [
        format!("shift matrix: valid {:?}", py.to_json().shift),
        format!("gl({}|{}), p = {:?}", shape.plus, shape.minus, py.p()),
        format!("column heights: {:?}", st.column_heights),
        format!("row check: {}", fmt_map(&row_check)),
        format!("row numbers: {:?}", st.row_numbers),
        format!("col_x: {}", fmt_map(&col_x)),
        format!("e_pi = {}", py.e_pi()),
        format!("h_pi = diag({})", h_diag.join(", ")),
        format!("d0 = {d0}, d1 = {d1}"),
        format!("good pair: {}", good.holds()),
    ]
    .join("\n");
    Ok(Output::ok(text, json))
}

fn wgen_verify(path: &Path, max_level: u32, relations: &[String]) -> Result<Output, Failure> {
    let py = load_pyramid(path)?;
    let ids: Vec<&str> = relations.iter().map(String::as_str).collect();
    let families = select(&ids)?;
    let w = WGen::new(&py);
    let outcomes = run_suite(&w, &families, &LevelBound::up_to(max_level));
    let membership = w.membership(&w.basic_generators(max_level))?;
    let p1 = py.p_at(1) as u32;
    let trunc = w.truncation_vanishing(p1 + 1)?;
    let ok = outcomes.iter().all(|o| o.ok) && membership.iter().all(|(_, m)| *m) && trunc;
    let mut lines: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
    lines.extend(membership.iter().map(|(id, m)| format!("member {id} {}", if *m { "ok" } else { "FAIL" })));
    lines.push(format!("truncation D_1^({}) = 0 {}", p1 + 1, if trunc { "ok" } else { "FAIL" }));
    lines.push(format!("verdict: {}", if ok { "ok" } else { "FAIL" }));
    let json = json!({
        "relations": outcomes.iter().map(|o| json!({
            "id": o.id, "indices": o.indices, "levels": o.levels, "ok": o.ok, "error": o.error,
        })).collect::<Vec<_>>(),
        "membership": membership.iter().map(|(id, m)| json!({"generator": id.to_string(), "ok": m})).collect::<Vec<_>>(),
        "truncation": {"level": p1 + 1, "ok": trunc},
        "ok": ok,
    });
    Ok(Output { code: if ok { 0 } else { 3 }, text: lines.join("\n"), json })
}

fn module_eval(path: &Path) -> Result<Output, Failure> {
    let t = Tableau::from_json(&read_json::<TableauJson>(path)?)?;
    let cc = t.is_column_connected();
    let ev = eigenvalues_of(&t);
    let symbolic = if cc { Some(symbolic_module_check(&WGen::new(t.pyramid()), &t)?) } else { None };
    let json = json!({
        "column_connected": cc,
        "eigenvalues": eigenvalues_to_json(&ev.full),
        "symbolic_check": symbolic,
    });
    let text = [
        format!("column-connected: {cc}"),
        format!("eigenvalues: {}", rows_text(&ev.full)),
        format!("symbolic check: {}", symbolic.map_or("skipped (not column-connected)".into(), |s| s.to_string())),
    ]
    .join("\n");
    Ok(Output { code: if symbolic == Some(false) { 3 } else { 0 }, text, json })
}

fn classify_verb(path: &Path, pool: &str) -> Result<Output, Failure> {
    let py = load_pyramid(path)?;
    let pool: Vec<Rational> = pool
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect::<wsuper::Result<_>>()?;
    let classes = classify(&py, &pool);
    let json = json!({
        "count": classes.len(),
        "classes": classes.iter().map(|t| rows_json(t.rows())).collect::<Vec<_>>(),
    });
    let mut lines = vec![format!("{} classes", classes.len())];
    lines.extend(classes.iter().map(|t| rows_text(t.rows())));
    Ok(Output::ok(lines.join("\n"), json))
}

fn solve_verb(pyramid: &Path, eigen: &Path, numeric: bool) -> Result<Output, Failure> {
    let py = load_pyramid(pyramid)?;
    let map: BTreeMap<String, String> = read_json(eigen)?;
    let reduced = reduced_from_json(&py, &map)?;
    match solve_with(if numeric { "numeric" } else { "exact" }, &py, &reduced)? {
        Solved::Exact(t) => {
            let text = format!("tableau: {}\ncolumn-connected: {}", rows_text(t.rows()), t.is_column_connected());
            Ok(Output::ok(text, json!({"mode": "exact", "tableau": t.to_json()})))
        }
        Solved::Numeric(t) => {
            let rows: Vec<Vec<Value>> =
                t.rows().iter().map(|r| r.iter().map(|z| json!({"re": z.re + 0.0, "im": z.im + 0.0})).collect()).collect();
            let text = t
                .rows()
                .iter()
                .map(|r| format!("({})", r.iter().map(|z| format!("{}{:+}i", z.re + 0.0, z.im + 0.0)).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Output::ok(
                format!("tableau: {text}\ncolumn-connected: {}", t.is_column_connected()),
                json!({"mode": "numeric", "pyramid": py.to_json(), "rows": rows}),
            ))
        }
    }
}

fn dims_verb(path: &Path, prime: u32) -> Result<Output, Failure> {
    let py = load_pyramid(path)?;
    let (d0, d1) = py.centralizer_dims();
    let dim = py.minimal_dimension(prime)?;
    let text = format!("d0 = {d0}, d1 = {d1}\n{prime}^{} * 2^{} = {dim}", d0 / 2, d1 / 2);
    Ok(Output::ok(text, json!({"d0": d0, "d1": d1, "prime": prime, "dimension": dim.to_string()})))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.verb {
        Verb::Pyramid { shift, ell, signs } => pyramid_verb(shift, *ell, signs),
        Verb::WgenVerify { pyramid, max_level, relations } => wgen_verify(pyramid, *max_level, relations),
        Verb::ModuleEval { tableau } => module_eval(tableau),
        Verb::Classify { pyramid, pool } => classify_verb(pyramid, pool),
        Verb::Solve { pyramid, eigenvalues, numeric } => solve_verb(pyramid, eigenvalues, *numeric),
        Verb::Dims { pyramid, prime } => dims_verb(pyramid, *prime),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            let doc = json!({"error": {"code": f.code, "kind": f.kind, "message": f.message}});
            if cli.json {
                println!("{doc}");
            } else {
                eprintln!("{doc}");
            }
            ExitCode::from(f.code)
        }
    }
}
