//! JSON form of free resolutions.
//!
//! ```text
//! { "nvars": 3, "ambient": [0], "length": 2,
//!   "levels": [ { "ranks": {"2": 3, "3": 2},
//!                 "generators": [ {"degree": 3, "head": "x2^3"}, … ],
//!                 "differential": [ ["x2^3", …], … ] }, … ] }
//! ```
//!
//! `differential[row][column]` is the entry of `δ_i` in the polynomial
//! grammar; for level 0 the rows are the components of the ambient module.
//! Heads are present for levels that came from a marked basis.

use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::ring::{FreeModuleLayout, ModuleElement, ModuleTerm, Rational};
use crate::syzygy::{FreeResolution, RankTable, ResolutionLevel, SyzygyError};

use super::parse::{parse_polynomial, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("entry ({row}, {column}) of level {level}: {source}")]
    Entry {
        level: usize,
        row: usize,
        column: usize,
        source: ParseError,
    },
    #[error(transparent)]
    Resolution(#[from] SyzygyError),
}

pub fn rank_table_json(t: &RankTable) -> Value {
    let mut out = Map::new();
    for (i, row) in t {
        out.insert(i.to_string(), degree_map(row));
    }
    Value::Object(out)
}

fn degree_map(row: &std::collections::BTreeMap<i64, usize>) -> Value {
    let mut m = Map::new();
    for (j, r) in row {
        m.insert(j.to_string(), json!(r));
    }
    Value::Object(m)
}

fn entry_text(level: &ResolutionLevel<Rational>, row: usize, column: usize) -> String {
    let ring = Arc::new(FreeModuleLayout::ring(level.target().nvars()));
    let terms = level
        .entry(row, column)
        .into_iter()
        .map(|(e, c)| (ModuleTerm::new(e, 0), c));
    ModuleElement::from_terms(ring, terms)
        .expect("entries of a homogeneous map are homogeneous")
        .to_string()
}

pub fn resolution_to_value(r: &FreeResolution<Rational>) -> Value {
    let levels: Vec<Value> = r
        .levels()
        .iter()
        .map(|level| {
            let heads = level.marked().map(|m| m.basis().terms().to_vec());
            let rank = level.target().rank();
            let generators: Vec<Value> = level
                .degrees()
                .iter()
                .enumerate()
                .map(|(b, d)| match &heads {
                    Some(h) => json!({"degree": d, "head": h[b].display(rank)}),
                    None => json!({"degree": d, "head": null}),
                })
                .collect();
            let differential: Vec<Value> = (0..rank)
                .map(|row| Value::Array((0..level.rank()).map(|col| json!(entry_text(level, row, col))).collect()))
                .collect();
            json!({
                "ranks": degree_map(&level.ranks()),
                "generators": generators,
                "differential": differential,
            })
        })
        .collect();
    json!({
        "nvars": r.ambient().nvars(),
        "ambient": r.ambient().weights(),
        "length": r.length(),
        "levels": levels,
    })
}

pub fn serialize_resolution(r: &FreeResolution<Rational>) -> String {
    serde_json::to_string_pretty(&resolution_to_value(r)).expect("values serialize")
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| JsonError::Schema(format!("missing field {key:?}")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64, JsonError> {
    v.as_i64().ok_or_else(|| JsonError::Schema(format!("{what} must be an integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| JsonError::Schema(format!("{what} must be an array")))
}

/// Rebuilds a resolution from [`serialize_resolution`] output. Heads are
/// not restored; ranks and `length` are checked against the data.
pub fn deserialize_resolution(text: &str) -> Result<FreeResolution<Rational>, JsonError> {
    let v: Value = serde_json::from_str(text).map_err(|e| JsonError::Json(e.to_string()))?;
    let nvars = as_i64(field(&v, "nvars")?, "nvars")?;
    if nvars < 1 {
        return Err(JsonError::Schema("nvars must be positive".into()));
    }
    let nvars = nvars as usize;
    let ambient: Vec<i64> = as_array(field(&v, "ambient")?, "ambient")?
        .iter()
        .map(|w| as_i64(w, "a weight"))
        .collect::<Result<_, _>>()?;
    if ambient.is_empty() {
        return Err(JsonError::Schema("ambient must have at least one weight".into()));
    }
    let ambient = Arc::new(FreeModuleLayout::new(nvars, ambient));
    let ring = Arc::new(FreeModuleLayout::ring(nvars));
    let mut levels = Vec::new();
    let mut target = ambient.clone();
    for (li, lv) in as_array(field(&v, "levels")?, "levels")?.iter().enumerate() {
        let degrees: Vec<i64> = as_array(field(lv, "generators")?, "generators")?
            .iter()
            .map(|g| as_i64(field(g, "degree")?, "degree"))
            .collect::<Result<_, _>>()?;
        let rows = as_array(field(lv, "differential")?, "differential")?;
        if rows.len() != target.rank() {
            return Err(JsonError::Schema(format!(
                "level {li} has {} rows, expected {}",
                rows.len(),
                target.rank()
            )));
        }
        let mut columns: Vec<Vec<(ModuleTerm, Rational)>> = vec![Vec::new(); degrees.len()];
        for (row, rv) in rows.iter().enumerate() {
            let entries = as_array(rv, "a differential row")?;
            if entries.len() != degrees.len() {
                return Err(JsonError::Schema(format!("row {row} of level {li} has the wrong length")));
            }
            for (col, ev) in entries.iter().enumerate() {
                let text = ev
                    .as_str()
                    .ok_or_else(|| JsonError::Schema("entries must be strings".into()))?;
                let p = parse_polynomial(text, &ring).map_err(|source| JsonError::Entry {
                    level: li,
                    row,
                    column: col,
                    source,
                })?;
                columns[col].extend(p.into_terms().map(|(t, c)| (ModuleTerm::new(t.exponent, row), c)));
            }
        }
        let columns = columns
            .into_iter()
            .map(|terms| ModuleElement::from_terms(target.clone(), terms))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| JsonError::Schema(e.to_string()))?;
        let level = ResolutionLevel::new(target.clone(), degrees.clone(), columns)?;
        if let Some(r) = lv.get("ranks") {
            if *r != degree_map(&level.ranks()) {
                return Err(JsonError::Schema(format!("ranks of level {li} do not match its generators")));
            }
        }
        levels.push(level);
        if degrees.is_empty() {
            break;
        }
        target = Arc::new(FreeModuleLayout::new(nvars, degrees));
    }
    let r = FreeResolution::from_levels(ambient, levels)?;
    if let Some(l) = v.get("length") {
        if as_i64(l, "length")? != r.length() as i64 {
            return Err(JsonError::Schema("length does not match the levels".into()));
        }
    }
    Ok(r)
}
