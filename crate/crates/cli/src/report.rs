//! JSON reports. Floats are written with 17 significant digits so reruns are
//! byte-identical; object keys are emitted in sorted order.

use std::str::FromStr;

use l1l2_core::{
    BoundProbe, ConstantModulusVector, CoordinateDecision, Field, Scalar, SubspaceBoundReport,
    TightnessReport, Vector, Verdict,
};
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tolerance used when re-checking the identities a report claims.
pub const VALIDATION_TOL: f64 = 1e-9;

pub fn num(x: f64) -> Value {
    Number::from_str(&format!("{x:.16e}"))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn scalar(field: Field, z: Scalar) -> Value {
    match field {
        Field::Real => num(z.re),
        Field::Complex => json!([num(z.re), num(z.im)]),
    }
}

fn entries(field: Field, zs: &[Scalar]) -> Value {
    Value::Array(zs.iter().map(|&z| scalar(field, z)).collect())
}

fn phases(c: &ConstantModulusVector) -> Value {
    entries(c.field(), c.phases())
}

fn vector(v: &Vector) -> Value {
    entries(v.field(), v.entries())
}

pub fn digest(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

/// Wraps a result object with the command name, tool version, input digest,
/// and the seed when the command draws random numbers.
pub fn envelope(command: &str, input: &[u8], seed: Option<u64>, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("input_digest".into(), json!(digest(input)));
    m.insert("result".into(), result);
    if let Some(seed) = seed {
        m.insert("seed".into(), json!(seed));
    }
    m.insert("tool_version".into(), json!(TOOL_VERSION));
    Value::Object(m)
}

pub fn tightness(r: &TightnessReport, field: Field, sqrt_s: Option<(f64, bool)>) -> Value {
    let mut m = Map::new();
    m.insert("field".into(), json!(field.as_str()));
    m.insert("n".into(), json!(r.n));
    m.insert("l1".into(), num(r.l1));
    m.insert("l2".into(), num(r.l2));
    m.insert("ratio".into(), num(r.ratio()));
    m.insert("c_x".into(), num(r.c_x));
    m.insert("distance".into(), num(r.distance));
    m.insert("nearest_phases".into(), phases(&r.nearest));
    if let Some((s, ok)) = sqrt_s {
        m.insert(
            "sqrt_s_test".into(),
            json!({ "s": num(s), "bound_satisfied": ok }),
        );
    }
    Value::Object(m)
}

pub fn subspace_bound(
    r: &SubspaceBoundReport,
    n: usize,
    dim: usize,
    restarts: Option<usize>,
) -> Value {
    let mut m = Map::new();
    m.insert("field".into(), json!(r.witness.field().as_str()));
    m.insert("n".into(), json!(n));
    m.insert("dim".into(), json!(dim));
    m.insert("method".into(), json!(r.method.as_str()));
    m.insert("certified".into(), json!(r.certified));
    m.insert("c".into(), num(r.c));
    m.insert("max_proj_norm".into(), num(r.max_proj_norm));
    m.insert("l1_bound".into(), num(r.l1_bound()));
    m.insert("witness_phases".into(), phases(&r.witness));
    if let Some(k) = restarts {
        m.insert("restarts".into(), json!(k));
    }
    Value::Object(m)
}

/// Index sets are reported 1-based.
pub fn coordinate(
    d: &CoordinateDecision,
    field: Field,
    n: usize,
    dim: usize,
    probe: &BoundProbe,
) -> Value {
    let mut m = Map::new();
    m.insert("field".into(), json!(field.as_str()));
    m.insert("n".into(), json!(n));
    m.insert("dim".into(), json!(dim));
    m.insert("gram_offdiag".into(), num(d.gram_offdiag));
    match &d.verdict {
        Verdict::Coordinate { index_set } => {
            m.insert("verdict".into(), json!("coordinate"));
            let one_based: Vec<usize> = index_set.iter().map(|i| i + 1).collect();
            m.insert("index_set".into(), json!(one_based));
        }
        Verdict::NotCoordinate => {
            m.insert("verdict".into(), json!("not_coordinate"));
        }
    }
    if let Some(w) = &d.witness {
        m.insert("witness".into(), vector(w));
        m.insert("witness_l1".into(), num(w.norm1()));
    }
    if let Some(margin) = d.witness_margin {
        m.insert("witness_margin".into(), num(margin));
    }
    if let Some(note) = d.note {
        m.insert("note".into(), json!(note));
    }
    let probe = match probe {
        BoundProbe::HoldsOnSamples { checked } => {
            json!({ "outcome": "holds_on_samples", "checked": checked })
        }
        BoundProbe::ViolationFound {
            witness,
            l1,
            margin,
        } => json!({
            "outcome": "violation_found",
            "witness": vector(witness),
            "l1": num(*l1),
            "margin": num(*margin),
        }),
    };
    m.insert("probe".into(), probe);
    Value::Object(m)
}

pub struct PeakinessFigures {
    pub source: &'static str,
    pub cells: usize,
    pub normalized: bool,
    pub l1: f64,
    pub l2: f64,
    pub c: f64,
    pub parallelogram_lhs: f64,
}

pub fn peakiness(p: &PeakinessFigures) -> Value {
    json!({
        "source": p.source,
        "cells": p.cells,
        "normalized": p.normalized,
        "l1": num(p.l1),
        "l2": num(p.l2),
        "c": num(p.c),
        "parallelogram_lhs": num(p.parallelogram_lhs),
        "parallelogram_residual": num((4.0 - p.parallelogram_lhs).abs()),
    })
}

/// Pretty-printed report with a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports are plain JSON");
    s.push('\n');
    s
}

/// Re-parses an emitted report and re-checks the identities it claims.
pub fn validate(text: &str) -> Result<(), String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("not JSON: {e}"))?;
    let command = str_field(&v, "command")?;
    if str_field(&v, "tool_version")? != TOOL_VERSION {
        return Err("tool_version mismatch".into());
    }
    let d = str_field(&v, "input_digest")?;
    if d.len() != 64 || !d.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err("input_digest is not a sha256 hex digest".into());
    }
    let r = v.get("result").ok_or("missing result")?;
    match command {
        "analyze-vector" => validate_tightness(r),
        "analyze-subspace" => validate_subspace(r),
        "detect-coordinate" => validate_coordinate(r),
        "peakiness" => validate_peakiness(r),
        other => Err(format!("unknown command {other:?}")),
    }
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, String> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| format!("missing string field {key}"))
}

fn f(v: &Value, key: &str) -> Result<f64, String> {
    v.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| format!("missing number field {key}"))
}

fn u(v: &Value, key: &str) -> Result<usize, String> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| format!("missing integer field {key}"))
}

fn close(name: &str, a: f64, b: f64) -> Result<(), String> {
    if (a - b).abs() <= VALIDATION_TOL * a.abs().max(b.abs()).max(1.0) {
        Ok(())
    } else {
        Err(format!("{name}: {a} != {b}"))
    }
}

fn read_scalars(v: &Value, key: &str) -> Result<(Field, Vec<Scalar>), String> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| format!("missing array {key}"))?;
    let field = match str_field(v, "field")? {
        "real" => Field::Real,
        "complex" => Field::Complex,
        other => return Err(format!("unknown field {other:?}")),
    };
    let zs = arr
        .iter()
        .map(|z| match (field, z) {
            (Field::Real, Value::Number(_)) => z.as_f64().map(|re| Scalar::new(re, 0.0)),
            (Field::Complex, Value::Array(p)) if p.len() == 2 => {
                Some(Scalar::new(p[0].as_f64()?, p[1].as_f64()?))
            }
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| format!("malformed entries in {key}"))?;
    Ok((field, zs))
}

fn read_phases(v: &Value, key: &str, n: usize) -> Result<ConstantModulusVector, String> {
    let (field, zs) = read_scalars(v, key)?;
    if zs.len() != n {
        return Err(format!("{key} has {} entries, expected {n}", zs.len()));
    }
    ConstantModulusVector::new(field, zs).map_err(|e| format!("{key}: {e}"))
}

fn validate_tightness(r: &Value) -> Result<(), String> {
    let n = u(r, "n")?;
    let (l1, l2, c) = (f(r, "l1")?, f(r, "l2")?, f(r, "c_x")?);
    close("c_x", c, 2.0 - 2.0 * l1 / ((n as f64).sqrt() * l2))?;
    close("distance^2", f(r, "distance")?.powi(2), c)?;
    close("ratio", f(r, "ratio")?, l1 / ((n as f64).sqrt() * l2))?;
    read_phases(r, "nearest_phases", n)?;
    if let Some(t) = r.get("sqrt_s_test") {
        let s = f(t, "s")?;
        let ok = t
            .get("bound_satisfied")
            .and_then(Value::as_bool)
            .ok_or("missing bound_satisfied")?;
        let gap = l1 / l2 - s.sqrt();
        if gap.abs() > 1e-8 && ok != (gap <= 0.0) {
            return Err("sqrt_s_test contradicts the norms".into());
        }
    }
    Ok(())
}

fn validate_subspace(r: &Value) -> Result<(), String> {
    let (n, dim) = (u(r, "n")?, u(r, "dim")?);
    let (c, m) = (f(r, "c")?, f(r, "max_proj_norm")?);
    close("c", c, 2.0 - 2.0 * m)?;
    close(
        "l1_bound",
        f(r, "l1_bound")?,
        (1.0 - c / 2.0) * (n as f64).sqrt(),
    )?;
    if m * m < dim as f64 / n as f64 - VALIDATION_TOL || m > 1.0 + VALIDATION_TOL {
        return Err(format!("max_proj_norm {m} outside [sqrt(dim/n), 1]"));
    }
    let certified = r
        .get("certified")
        .and_then(Value::as_bool)
        .ok_or("missing certified")?;
    if certified != (str_field(r, "method")? == "exact_brute_force") {
        return Err("certified flag disagrees with method".into());
    }
    read_phases(r, "witness_phases", n)?;
    Ok(())
}

fn validate_coordinate(r: &Value) -> Result<(), String> {
    let (n, dim) = (u(r, "n")?, u(r, "dim")?);
    match str_field(r, "verdict")? {
        "coordinate" => {
            let idx: Vec<u64> = r
                .get("index_set")
                .and_then(Value::as_array)
                .and_then(|a| a.iter().map(Value::as_u64).collect())
                .ok_or("missing index_set")?;
            let sorted = idx.windows(2).all(|w| w[0] < w[1]);
            if idx.len() != dim || !sorted || idx.iter().any(|&i| i == 0 || i as usize > n) {
                return Err("index_set is not a sorted dim-subset of 1..=n".into());
            }
        }
        "not_coordinate" => {
            let (_, w) = read_scalars(r, "witness")?;
            let l1: f64 = w.iter().map(|z| z.norm()).sum();
            let l2 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            close("witness_l1", f(r, "witness_l1")?, l1)?;
            close("witness norm", l2, 1.0)?;
            close(
                "witness_margin",
                f(r, "witness_margin")?,
                l1 - (dim as f64).sqrt(),
            )?;
        }
        other => return Err(format!("unknown verdict {other:?}")),
    }
    Ok(())
}

fn validate_peakiness(r: &Value) -> Result<(), String> {
    let (l1, l2, c) = (f(r, "l1")?, f(r, "l2")?, f(r, "c")?);
    close("l2", l2, 1.0)?;
    close("c", c, 2.0 - 2.0 * l1)?;
    if f(r, "parallelogram_residual")? > VALIDATION_TOL {
        return Err("parallelogram identity fails".into());
    }
    Ok(())
}
