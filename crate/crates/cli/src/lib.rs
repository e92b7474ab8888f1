//! Command-line adapter over the `wellpoised` library.
//!
//! Every command parses its input, makes one library call and serialises the result with
//! [`wellpoised::json`], adding `schema_version` and `command` to the document.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use wellpoised::json;
use wellpoised::newton::{minkowski_decomposition_witness, vertex_terms};
use wellpoised::okounkov::{polytope_vertices, Constraint, Grading};
use wellpoised::rational::{parse_rational, Point};
use wellpoised::tropical::{all_cones, decompose};
use wellpoised::{Error, SparsePolynomial, WeightVector};

/// Environment variable holding the number of enumeration workers.
pub const WORKERS_ENV: &str = "WELLPOISED_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "wellpoised",
    version,
    about = "Exact computations for well-poised hypersurfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct PolyInput {
    /// Polynomial, e.g. "x^2 + y^3 - 1/2*z".
    pub polynomial: String,
    /// Comma-separated variable names; defaults to first-occurrence order.
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide well-poisedness, with a witness when it fails.
    Check(PolyInput),
    /// Newton polytope: vertices, lattice points and the Minkowski census.
    Polytope(PolyInput),
    /// Faces of the Newton polytope with supporting weights.
    Faces(PolyInput),
    /// Lineality space and cones; with --weight, the cone certificate of that weight.
    Trop {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Valuation matrix M_S for a 1-based 2-subset S.
    Matrix {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long = "S", value_name = "I,J")]
        subset: String,
    },
    /// Newton-Okounkov body for S and a positive grading.
    Nok {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long = "S", value_name = "I,J")]
        subset: String,
        #[arg(long)]
        grading: String,
    },
    /// Non-negative integer solutions of `row = target` constraints.
    Graded {
        /// A constraint "r1,...,rn=t"; repeatable.
        #[arg(long = "constraint", required = true, allow_hyphen_values = true)]
        constraints: Vec<String>,
    },
    /// Image of points (a JSON file or the vertices of a constraint polytope) under rows.
    Project {
        /// JSON file holding an array of points, or an object with a "points" array.
        #[arg(long, conflicts_with = "constraints")]
        points: Option<PathBuf>,
        #[arg(long = "constraint", allow_hyphen_values = true)]
        constraints: Vec<String>,
        /// A projection row "r1,...,rn"; repeatable.
        #[arg(long = "row", required = true, allow_hyphen_values = true)]
        rows: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Polytope(_) => "polytope",
            Command::Faces(_) => "faces",
            Command::Trop { .. } => "trop",
            Command::Matrix { .. } => "matrix",
            Command::Nok { .. } => "nok",
            Command::Graded { .. } => "graded",
            Command::Project { .. } => "project",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Library(Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_precondition() => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Library(e) => json::error(e),
            CliError::Usage(m) => json!({ "error": { "code": "usage", "message": m } }),
            CliError::Io(m) => json!({ "error": { "code": "io", "message": m } }),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

/// Result of one invocation: exit status plus what goes to each stream.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("{}\n", e.to_json()),
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            return failure(&CliError::Usage(e.to_string().trim().to_string()));
        }
    };
    let rendered = execute(&cli.command).map(|doc| match cli.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("serialisable")
        ),
        Format::Table => table(&doc),
    });
    let text = match rendered {
        Ok(text) => text,
        Err(e) => return failure(&e),
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome::default(),
            Err(e) => failure(&CliError::Io(format!("{}: {e}", path.display()))),
        },
        None => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
    }
}

/// Builds the document for a parsed command.
pub fn execute(command: &Command) -> Result<Value, CliError> {
    let body = match command {
        Command::Check(input) => {
            let f = input.parse()?;
            json::well_poised(&wellpoised::is_well_poised(&f), &f)
        }
        Command::Polytope(input) => polytope(&input.parse()?),
        Command::Faces(input) => {
            json!({ "faces": json::faces(&wellpoised::faces(&input.parse()?)?) })
        }
        Command::Trop { input, weight } => trop(&input.parse()?, weight.as_deref())?,
        Command::Matrix { input, subset } => {
            let f = input.parse()?;
            json::valuation_matrix(&wellpoised::valuation_matrix(&f, &parse_subset(subset)?)?)
        }
        Command::Nok {
            input,
            subset,
            grading,
        } => {
            let f = input.parse()?;
            let d = parse_list(grading, |s| s.parse::<u32>().ok())?;
            let d = Grading::new(&f, d)?;
            json::body(&wellpoised::nok_body(&f, &d, &parse_subset(subset)?)?)
        }
        Command::Graded { constraints } => {
            let cs = parse_constraints(constraints)?;
            let n = cs[0].row.len();
            let list = wellpoised::graded_component(&cs, n)?;
            json!({ "n": n, "count": list.len(), "exponents": json::exponents(&list) })
        }
        Command::Project {
            points,
            constraints,
            rows,
        } => {
            let pts = match points {
                Some(path) => read_points(path)?,
                None if !constraints.is_empty() => {
                    let cs = parse_constraints(constraints)?;
                    polytope_vertices(&cs, cs[0].row.len())?
                }
                None => {
                    return Err(CliError::Usage(
                        "project needs --points or at least one --constraint".into(),
                    ))
                }
            };
            let rows: Vec<Point> = rows
                .iter()
                .map(|r| parse_point(r))
                .collect::<Result<_, _>>()?;
            json::body(&wellpoised::projected_body(&pts, &rows)?)
        }
    };
    Ok(document(command.name(), body))
}

/// Adds `schema_version` and `command` to an object payload.
pub fn document(command: &str, body: Value) -> Value {
    let mut obj = match body {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    obj.insert("schema_version".into(), json!(json::SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    Value::Object(obj)
}

impl PolyInput {
    pub fn parse(&self) -> Result<SparsePolynomial, CliError> {
        let names: Vec<String> = match &self.vars {
            Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
            None => identifiers(&self.polynomial),
        };
        if names.iter().any(String::is_empty) {
            return Err(CliError::Usage("empty variable name in --vars".into()));
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Ok(SparsePolynomial::parse(&self.polynomial, &refs)?)
    }
}

/// Identifiers in order of first occurrence.
fn identifiers(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut current = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            current.push(c);
            continue;
        }
        let starts_alpha = current.starts_with(|ch: char| ch.is_ascii_alphabetic() || ch == '_');
        if starts_alpha && !out.contains(&current) {
            out.push(current.clone());
        }
        current.clear();
    }
    out
}

fn polytope(f: &SparsePolynomial) -> Value {
    let p = wellpoised::newton_polytope(f);
    let census = minkowski_decomposition_witness(&p).ok();
    let mut doc = json::polytope(&p);
    let obj = doc.as_object_mut().expect("object");
    obj.insert(
        "vertex_terms".into(),
        json!(vertex_terms(f).iter().map(|i| i + 1).collect::<Vec<_>>()),
    );
    obj.insert("simplex".into(), json!(wellpoised::is_simplex(&p)));
    obj.insert(
        "lattice_points".into(),
        json::matrix(&wellpoised::lattice_points(&p)),
    );
    obj.insert(
        "minkowski".into(),
        census.map_or(Value::Null, |c| json::minkowski(&c)),
    );
    doc
}

fn trop(f: &SparsePolynomial, weight: Option<&str>) -> Result<Value, CliError> {
    let basis = wellpoised::lineality_basis(f)?;
    let cones = all_cones(f)?;
    let mut doc = json!({
        "lineality": json::lineality(&basis),
        "cones": cones.iter().filter(|c| c.terms.len() >= 2).map(json::cone).collect::<Vec<_>>(),
    });
    if let Some(w) = weight {
        let w = WeightVector(parse_point(w)?);
        let cert = decompose(f, &w)?;
        let init = wellpoised::initial_form(f, &w)?;
        let obj = doc.as_object_mut().expect("object");
        obj.insert("certificate".into(), json::certificate(&cert));
        obj.insert("initial_form".into(), json!(init.to_string()));
    }
    Ok(doc)
}

fn parse_list<T>(text: &str, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            item(s.trim()).ok_or_else(|| {
                Error::Malformed(format!("bad list entry `{}` in `{text}`", s.trim())).into()
            })
        })
        .collect()
}

fn parse_point(text: &str) -> Result<Point, CliError> {
    parse_list(text, parse_rational)
}

/// 1-based indices to 0-based.
fn parse_subset(text: &str) -> Result<Vec<usize>, CliError> {
    parse_list(text, |s| {
        s.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1)
    })
}

fn parse_constraints(list: &[String]) -> Result<Vec<Constraint>, CliError> {
    let cs: Vec<Constraint> = list
        .iter()
        .map(|c| {
            let (row, target) = c
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("constraint `{c}` lacks `=`")))?;
            let target = target
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Malformed(format!("bad target in `{c}`")))?;
            Ok(Constraint::new(
                parse_list(row, |s| s.parse::<i64>().ok())?,
                target,
            ))
        })
        .collect::<Result<_, CliError>>()?;
    let n = cs.first().map_or(0, |c| c.row.len());
    if let Some(c) = cs.iter().find(|c| c.row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.row.len(),
        }
        .into());
    }
    Ok(cs)
}

fn read_points(path: &PathBuf) -> Result<Vec<Point>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let points = value.get("points").unwrap_or(&value);
    Ok(json::parse_points(points)?)
}

/// Human-oriented rendering: one `key: value` line per field, matrices one row per line.
pub fn table(doc: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            render(&mut out, k, v, 0);
        }
    }
    out
}

fn render(out: &mut String, key: &str, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                render(out, k, v, indent + 1);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::Object(_) => render(out, &format!("[{}]", i + 1), item, indent + 1),
                    _ => {
                        let _ = writeln!(out, "{pad}  {}", inline(item));
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{key}: {}", inline(value));
        }
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

/// Sizes the global rayon pool from [`WORKERS_ENV`] when it is set.
pub fn configure_workers() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{WORKERS_ENV} must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}
