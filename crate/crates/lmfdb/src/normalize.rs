//! Raw API payloads to [`ModFormRecord`].

use std::collections::BTreeMap;

use modbog_core::modforms::{Basis, ModFormRecord};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::LmfdbError;

/// Response bodies exactly as received. This is what the cache stores.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawResponses {
    pub newform: String,
    pub hecke: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<String>,
}

fn schema(msg: impl Into<String>) -> LmfdbError {
    LmfdbError::SchemaMismatch(msg.into())
}

/// Rows of an API response `{"data": [...]}`.
pub(crate) fn rows(body: &str) -> Result<Vec<Map<String, Value>>, LmfdbError> {
    let v: Value = serde_json::from_str(body).map_err(|e| LmfdbError::Parse(e.to_string()))?;
    let data = v.get("data").and_then(Value::as_array).ok_or_else(|| schema("response has no data array"))?;
    data.iter().map(|r| r.as_object().cloned().ok_or_else(|| schema("data row is not an object"))).collect()
}

fn field<'a>(row: &'a Map<String, Value>, key: &str) -> Result<&'a Value, LmfdbError> {
    row.get(key).filter(|v| !v.is_null()).ok_or_else(|| schema(format!("field {key} missing")))
}

fn int(v: &Value, what: &str) -> Result<i64, LmfdbError> {
    v.as_i64().ok_or_else(|| schema(format!("{what} is not an integer: {v}")))
}

fn uint(row: &Map<String, Value>, key: &str) -> Result<u64, LmfdbError> {
    field(row, key)?.as_u64().ok_or_else(|| schema(format!("{key} is not a nonnegative integer")))
}

fn int_list(v: &Value, what: &str) -> Result<Vec<i64>, LmfdbError> {
    match v {
        Value::Array(xs) => xs.iter().map(|x| int(x, what)).collect(),
        Value::Number(_) => Ok(vec![int(v, what)?]),
        _ => Err(schema(format!("{what} is not a list of integers"))),
    }
}

fn pad(mut v: Vec<i64>, n: usize, what: &str) -> Result<Vec<i64>, LmfdbError> {
    if v.len() > n {
        return Err(schema(format!("{what} has {} entries, expected at most {n}", v.len())));
    }
    v.resize(n, 0);
    Ok(v)
}

/// Build the record for `label` from the newform row and the Hecke
/// eigenvalue row (or, for rational forms without one, the trace rows).
pub fn normalize(label: &str, raw: &RawResponses) -> Result<ModFormRecord, LmfdbError> {
    let nf_rows = rows(&raw.newform)?;
    let nf = nf_rows.first().ok_or_else(|| LmfdbError::NotFound(label.to_string()))?;
    let got = field(nf, "label")?.as_str().unwrap_or_default();
    if got != label {
        return Err(schema(format!("asked for {label}, got {got}")));
    }
    let level = uint(nf, "level")?;
    let weight = uint(nf, "weight")?;
    let dim = uint(nf, "dim")? as usize;
    let field_poly = match nf.get("field_poly").filter(|v| !v.is_null()) {
        Some(v) => int_list(v, "field_poly")?,
        None if dim == 1 => vec![0, 1],
        None => return Err(schema("field poly missing")),
    };
    if field_poly.len() != dim + 1 {
        return Err(schema(format!("field poly of degree {} for dimension {dim}", field_poly.len() - 1)));
    }
    let field_disc = match nf.get("field_disc").filter(|v| !v.is_null()) {
        Some(v) => Some(int(v, "field_disc")?),
        None if dim == 1 => Some(1),
        None => None,
    };
    let hecke_ring_index = nf.get("hecke_ring_index").and_then(Value::as_u64);

    let hecke_rows = rows(&raw.hecke)?;
    let (basis, an) = match hecke_rows.first() {
        Some(h) => hecke_data(h, dim)?,
        None if dim == 1 => {
            let traces = raw.traces.as_deref().ok_or_else(|| schema("no eigenvalue data and no traces"))?;
            (Basis::Power, trace_data(traces)?)
        }
        None => return Err(schema("no eigenvalue data")),
    };
    Ok(ModFormRecord {
        label: label.to_string(),
        level,
        weight,
        field_poly,
        degree: dim,
        field_disc,
        hecke_ring_index,
        basis,
        an,
    })
}

type Eigenvalues = BTreeMap<u64, Vec<i64>>;

fn hecke_data(h: &Map<String, Value>, dim: usize) -> Result<(Basis, Eigenvalues), LmfdbError> {
    if h.get("hecke_ring_cyclotomic_generator").and_then(Value::as_i64).unwrap_or(0) != 0 {
        return Err(schema("cyclotomic Hecke ring basis is not supported"));
    }
    let power = h.get("hecke_ring_power_basis").and_then(Value::as_bool).unwrap_or(false);
    let basis = if power {
        Basis::Power
    } else {
        let nums = field(h, "hecke_ring_numerators")?.as_array().ok_or_else(|| schema("numerators not a list"))?;
        let numerators = nums
            .iter()
            .map(|v| int_list(v, "hecke_ring_numerators").and_then(|v| pad(v, dim, "basis numerator")))
            .collect::<Result<Vec<_>, _>>()?;
        let denominators = int_list(field(h, "hecke_ring_denominators")?, "hecke_ring_denominators")?;
        if numerators.len() != dim || denominators.len() != dim {
            return Err(schema("Hecke ring basis has the wrong size"));
        }
        Basis::Explicit { numerators, denominators }
    };
    let list = field(h, "an")?.as_array().ok_or_else(|| schema("an is not a list"))?;
    let an = list
        .iter()
        .enumerate()
        .map(|(i, v)| Ok((i as u64 + 1, pad(int_list(v, "an")?, dim, "an entry")?)))
        .collect::<Result<_, LmfdbError>>()?;
    Ok((basis, an))
}

fn trace_data(body: &str) -> Result<Eigenvalues, LmfdbError> {
    rows(body)?.iter().map(|r| Ok((uint(r, "n")?, vec![int(field(r, "trace_an")?, "trace_an")?]))).collect()
}
