//! The JSON family format: `{"m": 6, "kind": "linear", "members": [[1,2,3,4,5,6], ...]}`.
//!
//! Linear members are 1-based one-line arrays; tournaments and relations are
//! row-major 0/1 matrices.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::relation::{BinaryRelation, Family, FamilyKind, LinearOrder, Members, Tournament};

#[derive(Serialize, Deserialize)]
struct Document {
    m: usize,
    kind: FamilyKind,
    members: Vec<Value>,
}

fn matrix_value(m: usize, get: impl Fn(usize, usize) -> bool) -> Value {
    Value::Array(
        (0..m)
            .map(|x| Value::Array((0..m).map(|y| Value::from(u8::from(get(x, y)))).collect()))
            .collect(),
    )
}

pub fn to_value(fam: &Family) -> Value {
    let m = fam.m();
    let members = match fam.members() {
        Members::Linear(v) => v
            .iter()
            .map(|o| Value::Array(o.to_one_line().into_iter().map(Value::from).collect()))
            .collect(),
        Members::Tournament(v) => v.iter().map(|t| matrix_value(m, |x, y| t.beats(x, y))).collect(),
        Members::Relation(v) => v.iter().map(|r| matrix_value(m, |x, y| r.get(x, y))).collect(),
    };
    serde_json::to_value(Document { m, kind: fam.kind(), members }).expect("plain data serializes")
}

pub fn to_json(fam: &Family) -> String {
    serde_json::to_string(&to_value(fam)).expect("plain data serializes")
}

pub fn to_json_pretty(fam: &Family) -> String {
    serde_json::to_string_pretty(&to_value(fam)).expect("plain data serializes")
}

fn parse_matrix(m: usize, index: usize, v: &Value) -> Result<Vec<Vec<bool>>> {
    let bad = || Error::Json(format!("member {index}: expected a {m}x{m} 0/1 matrix"));
    let rows = v.as_array().ok_or_else(bad)?;
    if rows.len() != m {
        return Err(bad());
    }
    rows.iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(bad)?;
            if row.len() != m {
                return Err(bad());
            }
            row.iter()
                .map(|c| match c.as_u64() {
                    Some(0) => Ok(false),
                    Some(1) => Ok(true),
                    _ => Err(bad()),
                })
                .collect()
        })
        .collect()
}

pub fn from_value(v: Value) -> Result<Family> {
    let doc: Document = serde_json::from_value(v).map_err(|e| Error::Json(e.to_string()))?;
    let m = doc.m;
    match doc.kind {
        FamilyKind::Linear => {
            let orders = doc
                .members
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let labels: Vec<usize> = serde_json::from_value(v.clone())
                        .map_err(|e| Error::Json(format!("member {k}: {e}")))?;
                    if labels.len() != m {
                        return Err(Error::GroundMismatch { index: k, expected: m, found: labels.len() });
                    }
                    LinearOrder::from_one_line(&labels)
                })
                .collect::<Result<Vec<_>>>()?;
            Family::linear(m, orders)
        }
        FamilyKind::Tournament => {
            let members = doc
                .members
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let rows = parse_matrix(m, k, v)?;
                    let rel = BinaryRelation::from_matrix(&rows)?;
                    if m > 0 && !rel.is_tournament_shaped() {
                        return Err(Error::NotTournament { index: k });
                    }
                    Ok(Tournament::from_fn(m, |x, y| rows[x][y]))
                })
                .collect::<Result<Vec<_>>>()?;
            Family::tournaments(m, members)
        }
        FamilyKind::Relation => {
            let members = doc
                .members
                .iter()
                .enumerate()
                .map(|(k, v)| BinaryRelation::from_matrix(&parse_matrix(m, k, v)?))
                .collect::<Result<Vec<_>>>()?;
            Family::relations(m, members)
        }
    }
}

pub fn from_json(text: &str) -> Result<Family> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    from_value(v)
}
