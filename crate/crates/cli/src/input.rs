//! Loading JSON artifacts, CSV data and built-in laws from the command line.

use std::path::Path;

use serde_json::Value;
use structmark::dagoid_law::DagoidLaw;
use structmark::gaussian::DataMatrix;
use structmark::io::{from_json_str, JsonArtifact};
use structmark::law::{builtin_law, LawParams, BUILTIN_LAWS};
use structmark::{Error, GraphLaw, Result, VertexSet};

use crate::args::LawArgs;

/// JSON text of a SRC argument: inline when it starts with `{` or `[`,
/// otherwise the contents of the named file.
pub fn source_text(src: &str) -> Result<String> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(src.to_string());
    }
    std::fs::read_to_string(src).map_err(|e| Error::InvalidInput(format!("cannot read {src}: {e}")))
}

pub fn load<T: JsonArtifact>(src: &str) -> Result<T> {
    from_json_str(&source_text(src)?)
}

pub fn load_value(src: &str) -> Result<Value> {
    serde_json::from_str(&source_text(src)?)
        .map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

fn params(args: &LawArgs) -> Result<LawParams> {
    let mut p = match &args.params {
        Some(src) => serde_json::from_value(load_value(src)?)
            .map_err(|e| Error::InvalidInput(format!("bad law parameters: {e}")))?,
        None => LawParams::default(),
    };
    p.psi = args.psi.or(p.psi);
    p.rho = args.rho.or(p.rho);
    p.kappa = args.kappa.or(p.kappa);
    Ok(p)
}

fn is_builtin(name: &str, extra: &[&str]) -> bool {
    !Path::new(name).exists() && (BUILTIN_LAWS.contains(&name) || extra.contains(&name))
}

fn need_n(args: &LawArgs) -> Result<usize> {
    args.n
        .ok_or_else(|| Error::InvalidInput(format!("built-in law `{}` needs --n", args.law)))
}

pub fn graph_law(args: &LawArgs) -> Result<GraphLaw> {
    if is_builtin(&args.law, &[]) {
        return builtin_law(&args.law, &params(args)?, need_n(args)?);
    }
    let law: GraphLaw = load(&args.law).map_err(|e| unknown_or(e, &args.law))?;
    check_n(args.n, law.n())?;
    Ok(law)
}

/// `uniform` and `class-size` are built in; anything else is a law SRC.
pub fn dagoid_law(args: &LawArgs) -> Result<DagoidLaw> {
    match args.law.as_str() {
        name if is_builtin(name, &["class-size"]) => match name {
            "uniform" => Ok(DagoidLaw::exponential(
                need_n(args)?,
                structmark::SubsetVector::zeros(need_n(args)?),
            )),
            "class-size" => DagoidLaw::class_size(need_n(args)?),
            other => Err(Error::UnknownLaw(format!("{other} (over dagoids)"))),
        },
        src => {
            let law: DagoidLaw = load(src).map_err(|e| unknown_or(e, src))?;
            check_n(args.n, law.n())?;
            Ok(law)
        }
    }
}

/// A name that is neither a file nor inline JSON is reported as an unknown law.
fn unknown_or(e: Error, src: &str) -> Error {
    let t = src.trim_start();
    if !Path::new(src).exists() && !t.starts_with('{') && !t.starts_with('[') {
        Error::UnknownLaw(src.to_string())
    } else {
        e
    }
}

pub fn check_n(given: Option<usize>, actual: usize) -> Result<()> {
    match given {
        Some(n) if n != actual => Err(Error::InvalidInput(format!(
            "--n {n} but the input has n = {actual}"
        ))),
        _ => Ok(()),
    }
}

pub fn data(path: &str, header: bool) -> Result<DataMatrix> {
    let bad = |e: csv::Error| Error::InvalidInput(format!("cannot read {path}: {e}"));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(bad)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(bad)?;
        let row = record
            .iter()
            .map(|s| {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidInput(format!(
                        "{path}: row {} has non-numeric value `{s}`",
                        i + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let cols = rows
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidInput(format!("{path} has no observations")))?;
    DataMatrix::from_rows(cols, &rows)
}

/// `0,2,3` as a vertex set; the empty string is the empty set.
pub fn vertex_set(s: &str, n: usize) -> Result<VertexSet> {
    let mut out = VertexSet::EMPTY;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part
            .parse()
            .map_err(|_| Error::InvalidInput(format!("`{part}` is not a vertex")))?;
        if v >= n {
            return Err(Error::InvalidInput(format!("vertex {v} outside 0..{n}")));
        }
        out.insert(v);
    }
    Ok(out)
}
