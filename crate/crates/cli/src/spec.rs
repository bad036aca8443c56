//! Spec documents: which algebra, bimodule, ideal and idempotent family a
//! run is about.
//!
//! Two surface forms are accepted. A JSON object:
//!
//! ```text
//! { "algebra": "triangular(2)", "bimodule": "regular", "ideal": "full" }
//! ```
//!
//! or `key = value` lines, where a value is either a builtin name or a
//! single-line JSON value:
//!
//! ```text
//! # the remark bimodule
//! algebra = remark
//! ideal = [["0", "1", "0"]]
//! ```
//!
//! A document consisting of a single builtin algebra name is also accepted.
//! Scalars are written as strings such as `"1/2-3 i"` (integers may be bare
//! JSON numbers).

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use zpdlab_core::algebra::{ActionTensors, StructureConstants};
use zpdlab_core::builders::{
    ambient_matrix_bimodule, block_triangular, matrix_algebra, regular_bimodule, remark_bimodule, triangular_algebra,
};
use zpdlab_core::idempotents::{standard_family, validate_ideal, IdealError, IdempotentError};
use zpdlab_core::{Algebra, AlgebraError, Bimodule, IdealSpec, IdempotentFamily, Scalar, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown key `{key}` at line {line}")]
    UnknownKey { key: String, line: usize },
    #[error("missing `algebra` entry")]
    MissingAlgebra,
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("{path}: {message}")]
    Scalar { path: String, message: String },
    #[error("{path}: {message}")]
    Shape { path: String, message: String },
    #[error("algebra rejected: {0}")]
    Algebra(AlgebraError),
    #[error("bimodule rejected: {0}")]
    Bimodule(AlgebraError),
    #[error("ideal rejected: {0}")]
    Ideal(IdealError),
    #[error("idempotent family rejected: {0}")]
    Family(IdempotentError),
}

/// A validated spec document.
#[derive(Clone, Debug)]
pub struct Spec {
    pub algebra: Algebra,
    pub module: Bimodule,
    pub ideal: IdealSpec,
    /// Absent when the algebra has no standard family and none was given.
    pub family: Option<IdempotentFamily>,
}

/// Lowercase hex SHA-256 of the document text.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

const KEYS: [&str; 4] = ["algebra", "bimodule", "ideal", "family"];

/// Raw entries before validation, keyed by name.
#[derive(Default)]
struct Entries {
    algebra: Option<Value>,
    bimodule: Option<Value>,
    ideal: Option<Value>,
    family: Option<Value>,
}

impl Entries {
    fn set(&mut self, key: &str, value: Value, line: usize) -> Result<(), SpecError> {
        let slot = match key {
            "algebra" => &mut self.algebra,
            "bimodule" => &mut self.bimodule,
            "ideal" => &mut self.ideal,
            "family" => &mut self.family,
            _ => return Err(SpecError::UnknownKey { key: key.to_string(), line }),
        };
        *slot = Some(value);
        Ok(())
    }
}

fn json_syntax(err: serde_json::Error, line_offset: usize, column_offset: usize) -> SpecError {
    let line = err.line() + line_offset;
    let column = if err.line() == 1 { err.column() + column_offset } else { err.column() };
    SpecError::Syntax { line, column, message: err.to_string() }
}

fn line_of_key(text: &str, key: &str) -> usize {
    let quoted = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&quoted)).map_or(1, |i| i + 1)
}

fn read_json(text: &str) -> Result<Entries, SpecError> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_syntax(e, 0, 0))?;
    let Value::Object(map) = value else {
        return Err(SpecError::Syntax { line: 1, column: 1, message: "expected a JSON object".into() });
    };
    let mut entries = Entries::default();
    for (key, value) in map {
        entries.set(&key, value, line_of_key(text, &key))?;
    }
    Ok(entries)
}

fn read_lines(text: &str) -> Result<Entries, SpecError> {
    let mut entries = Entries::default();
    let meaningful: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    if let [(_, only)] = meaningful.as_slice() {
        if !only.contains('=') {
            entries.algebra = Some(Value::String(only.trim().to_string()));
            return Ok(entries);
        }
    }
    for (line, raw) in meaningful {
        let Some(eq) = raw.find('=') else {
            let column = raw.len() - raw.trim_start().len() + 1;
            return Err(SpecError::Syntax { line, column, message: "expected `key = value`".into() });
        };
        let key = raw[..eq].trim();
        if !KEYS.contains(&key) {
            return Err(SpecError::UnknownKey { key: key.to_string(), line });
        }
        let rest = &raw[eq + 1..];
        let value_text = rest.trim();
        let column = eq + 2 + (rest.len() - rest.trim_start().len());
        if value_text.is_empty() {
            return Err(SpecError::Syntax { line, column, message: "missing value".into() });
        }
        let value = if value_text.starts_with(['{', '[', '"']) {
            serde_json::from_str(value_text).map_err(|e| json_syntax(e, line - 1, column - 1))?
        } else {
            Value::String(value_text.to_string())
        };
        entries.set(key, value, line)?;
    }
    Ok(entries)
}

fn scalar(value: &Value, path: &str) -> Result<Scalar, SpecError> {
    match value {
        Value::String(s) => {
            s.parse().map_err(|e| SpecError::Scalar { path: path.to_string(), message: format!("{e}") })
        }
        Value::Number(n) => n.as_i64().map(Scalar::from_integer).ok_or_else(|| SpecError::Scalar {
            path: path.to_string(),
            message: format!("`{n}` is not an integer; write fractions as strings like \"1/2\""),
        }),
        other => Err(SpecError::Scalar { path: path.to_string(), message: format!("expected a scalar, found {other}") }),
    }
}

fn array<'a>(value: &'a Value, len: Option<usize>, path: &str) -> Result<&'a [Value], SpecError> {
    let Value::Array(items) = value else {
        return Err(SpecError::Shape { path: path.to_string(), message: "expected an array".into() });
    };
    if let Some(len) = len {
        if items.len() != len {
            return Err(SpecError::Shape {
                path: path.to_string(),
                message: format!("expected {len} entries, found {}", items.len()),
            });
        }
    }
    Ok(items)
}

fn vector(value: &Value, len: usize, path: &str) -> Result<Vector, SpecError> {
    let items = array(value, Some(len), path)?;
    let coords = items.iter().enumerate().map(|(k, v)| scalar(v, &format!("{path}[{k}]"))).collect::<Result<_, _>>()?;
    Ok(Vector::new(coords))
}

/// Flattens a nested `a × b × c` array of scalars in row-major order.
fn tensor(value: &Value, dims: [usize; 3], path: &str) -> Result<Vec<Scalar>, SpecError> {
    let mut out = Vec::with_capacity(dims.iter().product());
    for (i, plane) in array(value, Some(dims[0]), path)?.iter().enumerate() {
        for (j, row) in array(plane, Some(dims[1]), &format!("{path}[{i}]"))?.iter().enumerate() {
            out.extend(vector(row, dims[2], &format!("{path}[{i}][{j}]"))?.into_coords());
        }
    }
    Ok(out)
}

fn labels(obj: &Map<String, Value>, path: &str) -> Result<Vec<String>, SpecError> {
    let value = obj
        .get("labels")
        .ok_or_else(|| SpecError::Shape { path: path.to_string(), message: "missing `labels`".into() })?;
    array(value, None, &format!("{path}.labels"))?
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::String(s) => Ok(s.clone()),
            _ => Err(SpecError::Shape { path: format!("{path}.labels[{i}]"), message: "expected a string".into() }),
        })
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, SpecError> {
    obj.get(key).ok_or_else(|| SpecError::Shape { path: path.to_string(), message: format!("missing `{key}`") })
}

fn object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>, SpecError> {
    value
        .as_object()
        .ok_or_else(|| SpecError::Shape { path: path.to_string(), message: "expected a builtin name or an object".into() })
}

fn parse_usize(text: &str, whole: &str) -> Result<usize, SpecError> {
    text.trim().parse().map_err(|_| SpecError::UnknownBuiltin(whole.to_string()))
}

/// Builtin algebra by name; `remark` also selects the remark bimodule.
fn builtin_algebra(name: &str) -> Result<(Algebra, Option<Bimodule>), SpecError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let call = |prefix: &str| compact.strip_prefix(prefix).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
    let built = if compact == "remark" {
        let module = remark_bimodule();
        return Ok((module.algebra().clone(), Some(module)));
    } else if let Some(arg) = call("matrix") {
        matrix_algebra(parse_usize(arg, name)?)
    } else if let Some(arg) = call("triangular") {
        triangular_algebra(parse_usize(arg, name)?)
    } else if let Some(arg) = call("block") {
        let parts: Vec<usize> = serde_json::from_str(arg).map_err(|_| SpecError::UnknownBuiltin(name.to_string()))?;
        block_triangular(&parts)
    } else {
        return Err(SpecError::UnknownBuiltin(name.to_string()));
    };
    Ok((built.map_err(SpecError::Algebra)?, None))
}

fn explicit_algebra(value: &Value) -> Result<Algebra, SpecError> {
    let obj = object(value, "algebra")?;
    let labels = labels(obj, "algebra")?;
    let n = labels.len();
    let constants = tensor(field(obj, "structure", "algebra")?, [n, n, n], "algebra.structure")?;
    let unit = vector(field(obj, "unit", "algebra")?, n, "algebra.unit")?;
    Algebra::new(StructureConstants { labels, constants, unit }).map_err(SpecError::Algebra)
}

fn explicit_bimodule(algebra: &Algebra, value: &Value) -> Result<Bimodule, SpecError> {
    let obj = object(value, "bimodule")?;
    let labels = labels(obj, "bimodule")?;
    let (n, m) = (algebra.dim(), labels.len());
    let left = tensor(field(obj, "left", "bimodule")?, [n, m, m], "bimodule.left")?;
    let right = tensor(field(obj, "right", "bimodule")?, [m, n, m], "bimodule.right")?;
    Bimodule::new(algebra.clone(), ActionTensors { labels, left, right }).map_err(SpecError::Bimodule)
}

fn vectors(value: &Value, n: usize, path: &str) -> Result<Vec<Vector>, SpecError> {
    array(value, None, path)?.iter().enumerate().map(|(i, v)| vector(v, n, &format!("{path}[{i}]"))).collect()
}

/// Parses and validates a spec document.
pub fn parse_spec(text: &str) -> Result<Spec, SpecError> {
    let entries = if text.trim_start().starts_with('{') { read_json(text)? } else { read_lines(text)? };
    let algebra_value = entries.algebra.ok_or(SpecError::MissingAlgebra)?;
    let (algebra, builtin_module) = match &algebra_value {
        Value::String(name) => builtin_algebra(name)?,
        other => (explicit_algebra(other)?, None),
    };

    let module = match &entries.bimodule {
        None => builtin_module.unwrap_or_else(|| regular_bimodule(&algebra)),
        Some(Value::String(name)) => match name.trim() {
            "regular" => regular_bimodule(&algebra),
            "ambient" => ambient_matrix_bimodule(&algebra).map_err(SpecError::Bimodule)?,
            "remark" => builtin_module.ok_or_else(|| SpecError::Shape {
                path: "bimodule".into(),
                message: "the remark bimodule needs `algebra = remark`".into(),
            })?,
            _ => return Err(SpecError::UnknownBuiltin(name.clone())),
        },
        Some(other) => explicit_bimodule(&algebra, other)?,
    };

    let n = algebra.dim();
    let family = match &entries.family {
        None => standard_family(&algebra).ok(),
        Some(Value::String(name)) if name.trim() == "standard" => {
            Some(standard_family(&algebra).map_err(SpecError::Family)?)
        }
        Some(Value::String(name)) => return Err(SpecError::UnknownBuiltin(name.clone())),
        Some(other) => Some(IdempotentFamily::new(&algebra, vectors(other, n, "family")?).map_err(SpecError::Family)?),
    };

    let space = match &entries.ideal {
        None => Subspace::full(n),
        Some(Value::String(name)) if name.trim() == "full" => Subspace::full(n),
        Some(Value::String(name)) => return Err(SpecError::UnknownBuiltin(name.clone())),
        Some(other) => Subspace::span(n, vectors(other, n, "ideal")?).expect("rows have the algebra dimension"),
    };
    let ideal = validate_ideal(&algebra, space, None).map_err(SpecError::Ideal)?;

    Ok(Spec { algebra, module, ideal, family })
}
