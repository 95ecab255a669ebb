//! File formats: matrix files, solution lists and CSV export.
//!
//! A matrix file is
//! `{"size": n, "field": F, "entries": [[e, ..], ..], "provenance": {..}}` where
//! `F` is either the string `"float"` (entries `[re, im]`) or
//! `{"d1": "p/q", "d2": ["p/q", "p/q"]}` (entries `["a0", "a1", "b0", "b1"]`,
//! coordinates over that tower).

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{common_tower, Rational, TowerDescriptor, TowerElement};
use crate::error::{Error, Result};
use crate::matrix::{LabeledMatrix, Provenance};

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixPayload {
    Exact(LabeledMatrix<TowerElement>),
    Float(LabeledMatrix<Complex64>),
}

impl MatrixPayload {
    pub fn size(&self) -> usize {
        match self {
            MatrixPayload::Exact(m) => m.size(),
            MatrixPayload::Float(m) => m.size(),
        }
    }

    pub fn provenance(&self) -> &Provenance {
        match self {
            MatrixPayload::Exact(m) => &m.provenance,
            MatrixPayload::Float(m) => &m.provenance,
        }
    }

    pub fn to_c64(&self) -> LabeledMatrix<Complex64> {
        match self {
            MatrixPayload::Exact(m) => m.to_c64(),
            MatrixPayload::Float(m) => m.clone(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

/// Serializes an exact matrix over the smallest tower holding all its entries.
pub fn exact_to_json(m: &LabeledMatrix<TowerElement>) -> Result<Value> {
    let mut tower = TowerDescriptor::rational();
    for e in m.entries() {
        tower = common_tower(&tower, e.tower())?;
    }
    let rows: Vec<Value> = (0..m.size())
        .map(|i| -> Result<Value> {
            let row: Vec<Value> = m
                .row(i)
                .iter()
                .map(|e| Ok(json!(e.lift_to(&tower)?.coords().map(|c| format_rational(&c)))))
                .collect::<Result<_>>()?;
            Ok(Value::Array(row))
        })
        .collect::<Result<_>>()?;
    Ok(json!({
        "size": m.size(),
        "field": {
            "d1": format_rational(tower.d1()),
            "d2": tower.d2().each_ref().map(format_rational),
        },
        "entries": rows,
        "provenance": m.provenance,
    }))
}

pub fn float_to_json(m: &LabeledMatrix<Complex64>) -> Value {
    let rows: Vec<Value> =
        (0..m.size()).map(|i| Value::Array(m.row(i).iter().map(|c| json!([c.re, c.im])).collect())).collect();
    json!({ "size": m.size(), "field": "float", "entries": rows, "provenance": m.provenance })
}

pub fn write_matrix(m: &MatrixPayload) -> Result<String> {
    let v = match m {
        MatrixPayload::Exact(e) => exact_to_json(e)?,
        MatrixPayload::Float(f) => float_to_json(f),
    };
    Ok(serde_json::to_string_pretty(&v).expect("json values serialize"))
}

pub fn read_matrix(text: &str) -> Result<MatrixPayload> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
    let size = v.get("size").and_then(Value::as_u64).ok_or_else(|| malformed("missing size"))? as usize;
    let rows = v.get("entries").and_then(Value::as_array).ok_or_else(|| malformed("missing entries"))?;
    if rows.len() != size || rows.iter().any(|r| r.as_array().map(Vec::len) != Some(size)) {
        return Err(malformed(format!("entries are not {size}x{size}")));
    }
    let provenance: Provenance = match v.get("provenance") {
        None | Some(Value::Null) => Provenance::new(),
        Some(p) => serde_json::from_value(p.clone()).map_err(|e| malformed(format!("provenance: {e}")))?,
    };
    let cells = rows.iter().flat_map(|r| r.as_array().into_iter().flatten());
    match v.get("field") {
        Some(Value::String(s)) if s == "float" => {
            let data = cells
                .map(|c| match c.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Vec<_>>()).as_deref() {
                    Some([Some(re), Some(im)]) => Ok(Complex64::new(*re, *im)),
                    _ => Err(malformed(format!("float entry {c} is not [re, im]"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MatrixPayload::Float(LabeledMatrix::new(size, data).with_provenance(provenance)))
        }
        Some(Value::Object(f)) => {
            let rat = |v: Option<&Value>| -> Result<Rational> {
                parse_rational(v.and_then(Value::as_str).ok_or_else(|| malformed("expected a \"p/q\" string"))?)
            };
            let d1 = rat(f.get("d1"))?;
            let d2v = f.get("d2").and_then(Value::as_array).ok_or_else(|| malformed("missing d2"))?;
            if d2v.len() != 2 {
                return Err(malformed("d2 must have two coefficients"));
            }
            let d2 = [rat(d2v.first())?, rat(d2v.get(1))?];
            let tower = TowerDescriptor::general(d1.clone(), d2.clone());
            if *tower.d1() != d1 || *tower.d2() != d2 {
                return Err(malformed("tower radicands are not in normal form"));
            }
            let data = cells
                .map(|c| {
                    let a = c.as_array().filter(|a| a.len() == 4).ok_or_else(|| malformed(format!("exact entry {c} needs 4 coordinates")))?;
                    let co = [rat(a.first())?, rat(a.get(1))?, rat(a.get(2))?, rat(a.get(3))?];
                    TowerElement::from_coords(&tower, co)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MatrixPayload::Exact(LabeledMatrix::new(size, data).with_provenance(provenance)))
        }
        _ => Err(malformed("field must be \"float\" or a tower descriptor")),
    }
}

/// One line per entry, `row,col,re,im`, with 17 significant digits.
pub fn to_csv(m: &MatrixPayload) -> String {
    let c = m.to_c64();
    let mut out = String::from("row,col,re,im\n");
    for i in 0..c.size() {
        for j in 0..c.size() {
            let e = c.get(i, j);
            out.push_str(&format!("{i},{j},{:.16e},{:.16e}\n", e.re, e.im));
        }
    }
    out
}
