//! Input documents: kind-tagged JSON or a single CSV row of reals.

use l1l2_core::{Field, Scalar, StepFunction, Subspace, Vector};
use serde_json::Value;

use crate::CliError;

/// A parsed input, validated against the invariants of its kind.
#[derive(Debug, Clone)]
pub enum InputDocument {
    Vector(Vector),
    Subspace(Subspace),
    StepFunction(StepFunction),
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            InputDocument::Vector(_) => "vector",
            InputDocument::Subspace(_) => "subspace",
            InputDocument::StepFunction(_) => "step_function",
        }
    }
}

/// Parses JSON when the first non-blank byte is `{`, otherwise one CSV row.
pub fn parse(bytes: &[u8]) -> Result<InputDocument, CliError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| CliError::Parse(format!("input is not UTF-8: {e}")))?;
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text)
    }
}

fn parse_json(text: &str) -> Result<InputDocument, CliError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| malformed("document must be an object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("missing \"kind\""))?;
    let allowed: &[&str] = match kind {
        "vector" => &["kind", "field", "entries"],
        "subspace" => &["kind", "field", "vectors"],
        "step_function" => &["kind", "breakpoints", "values"],
        other => return Err(malformed(&format!("unknown kind {other:?}"))),
    };
    if let Some(extra) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(malformed(&format!(
            "unexpected key {extra:?} for kind {kind}"
        )));
    }
    let field = match obj.get("field").map(|f| f.as_str()) {
        None | Some(Some("real")) => Field::Real,
        Some(Some("complex")) => Field::Complex,
        _ => return Err(malformed("field must be \"real\" or \"complex\"")),
    };
    match kind {
        "vector" => Ok(InputDocument::Vector(vector(
            field,
            array(obj.get("entries"), "entries")?,
        )?)),
        "subspace" => {
            let vectors = array(obj.get("vectors"), "vectors")?
                .iter()
                .map(|v| vector(field, array(Some(v), "spanning vector")?))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = vectors.first() {
                if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
                    return Err(CliError::Parse(format!(
                        "spanning vectors must share one length: {} vs {}",
                        first.len(),
                        bad.len()
                    )));
                }
            }
            Ok(InputDocument::Subspace(Subspace::from_spanning_set(
                &vectors,
            )?))
        }
        _ => {
            let breakpoints = reals(array(obj.get("breakpoints"), "breakpoints")?, "breakpoints")?;
            let values = reals(array(obj.get("values"), "values")?, "values")?;
            Ok(InputDocument::StepFunction(StepFunction::new(
                breakpoints,
                values,
            )?))
        }
    }
}

fn malformed(msg: &str) -> CliError {
    CliError::Parse(format!("invalid input document: {msg}"))
}

fn array<'a>(v: Option<&'a Value>, what: &str) -> Result<&'a [Value], CliError> {
    v.and_then(Value::as_array)
        .map(Vec::as_slice)
        .ok_or_else(|| malformed(&format!("{what} must be an array")))
}

fn reals(items: &[Value], what: &str) -> Result<Vec<f64>, CliError> {
    items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .ok_or_else(|| malformed(&format!("{what}[{i}] is not a number")))
        })
        .collect()
}

fn vector(field: Field, items: &[Value]) -> Result<Vector, CliError> {
    match field {
        Field::Real => Ok(Vector::real(reals(items, "entry")?)?),
        Field::Complex => {
            let values = items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    complex_entry(v).ok_or_else(|| {
                        malformed(&format!("entry {i} must be a number or a [re, im] pair"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Vector::new(Field::Complex, values)?)
        }
    }
}

fn complex_entry(v: &Value) -> Option<Scalar> {
    match v {
        Value::Number(_) => Some(Scalar::new(v.as_f64()?, 0.0)),
        Value::Array(p) if p.len() == 2 => Some(Scalar::new(p[0].as_f64()?, p[1].as_f64()?)),
        _ => None,
    }
}

fn parse_csv(text: &str) -> Result<InputDocument, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = reader.records();
    let row = rows
        .next()
        .ok_or_else(|| CliError::Parse("empty input".into()))?
        .map_err(|e| CliError::Parse(format!("invalid CSV: {e}")))?;
    if rows.next().is_some() {
        return Err(CliError::Parse("CSV input must be a single row".into()));
    }
    let values = row
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            cell.parse::<f64>()
                .map_err(|_| CliError::Parse(format!("CSV cell {i} is not a number: {cell:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InputDocument::Vector(Vector::real(values)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_row_becomes_a_real_vector() {
        let InputDocument::Vector(v) = parse(b" 3, 4\n").unwrap() else {
            panic!()
        };
        assert_eq!(v.real_parts(), vec![3.0, 4.0]);
    }

    #[test]
    fn complex_pairs_and_bare_numbers_mix_in_complex_field() {
        let doc = br#"{"kind":"vector","field":"complex","entries":[[1,2],3]}"#;
        let InputDocument::Vector(v) = parse(doc).unwrap() else {
            panic!()
        };
        assert_eq!(v.entries()[0], Scalar::new(1.0, 2.0));
        assert_eq!(v.entries()[1], Scalar::new(3.0, 0.0));
    }

    #[test]
    fn fractional_numbers_parse_in_every_kind() {
        let doc = br#"{"kind":"step_function","breakpoints":[0,0.25,1],"values":[1.5,0.5e0]}"#;
        let InputDocument::StepFunction(f) = parse(doc).unwrap() else {
            panic!()
        };
        assert_eq!(f.breakpoints(), &[0.0, 0.25, 1.0]);
        assert_eq!(f.values(), &[1.5, 0.5]);
        let doc = br#"{"kind":"subspace","field":"complex","vectors":[[[0.5,-1.25],2.5]]}"#;
        assert!(matches!(parse(doc).unwrap(), InputDocument::Subspace(_)));
    }

    #[test]
    fn unknown_kinds_and_keys_are_rejected() {
        assert!(parse(br#"{"kind":"matrix","entries":[1]}"#).is_err());
        assert!(parse(br#"{"kind":"vector","entries":[1],"extra":0}"#).is_err());
        assert!(parse(br#"{"kind":"vector","field":"quaternion","entries":[1]}"#).is_err());
    }

    #[test]
    fn pairs_are_rejected_in_real_field() {
        let doc = br#"{"kind":"vector","entries":[[1,2]]}"#;
        assert!(matches!(parse(doc), Err(CliError::Parse(_))));
    }

    #[test]
    fn ragged_spanning_sets_are_parse_errors() {
        let doc = br#"{"kind":"subspace","vectors":[[1,0],[1]]}"#;
        assert!(matches!(parse(doc), Err(CliError::Parse(_))));
    }

    #[test]
    fn multiple_csv_rows_are_rejected() {
        assert!(parse(b"1,2\n3,4\n").is_err());
        assert!(parse(b"1,x").is_err());
        assert!(parse(b"").is_err());
    }
}
