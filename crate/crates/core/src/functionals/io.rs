use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::tables::{CumulantTable, StateTable};
use crate::algebra::{parse_rational, Rational, Word};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    letters: u32,
    max_degree: usize,
    #[serde(default)]
    unit: Option<String>,
    #[serde(default)]
    moments: Option<BTreeMap<String, Value>>,
    #[serde(default)]
    cumulants: Option<BTreeMap<String, Value>>,
}

fn value_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!(
            "expected a rational string such as \"3/2\", found {other}"
        ))),
    }
}

fn parse_entries(map: &BTreeMap<String, Value>) -> Result<Vec<(Word, Rational)>> {
    map.iter()
        .map(|(k, v)| {
            let w: Word = k.parse()?;
            if w.is_unit() {
                return Err(Error::Parse(
                    "the unit word must not appear in a table".into(),
                ));
            }
            Ok((w, value_to_rational(v)?))
        })
        .collect()
}

fn parse_raw(text: &str) -> Result<RawTable> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads `{"letters": k, "max_degree": N, "moments": {"a1.a2": "3/2", …}}`.
pub fn state_from_json(text: &str) -> Result<StateTable> {
    let raw = parse_raw(text)?;
    let moments = match (raw.moments, raw.cumulants) {
        (Some(m), None) => m,
        (None, Some(_)) => {
            return Err(Error::KindMismatch("expected a moment table, found cumulants".into()))
        }
        _ => return Err(Error::Parse("expected exactly one \"moments\" map".into())),
    };
    StateTable::new(raw.letters, raw.max_degree, parse_entries(&moments)?)
}

/// Reads the cumulant file: the state layout with a `"cumulants"` map and
/// optionally `"unit": "excluded"`.
pub fn cumulants_from_json(text: &str) -> Result<CumulantTable> {
    let raw = parse_raw(text)?;
    if let Some(u) = raw.unit.as_deref() {
        if u != "excluded" {
            return Err(Error::Parse(format!("unsupported unit marker `{u}`")));
        }
    }
    let map = match (raw.cumulants, raw.moments) {
        (Some(c), None) => c,
        (None, Some(_)) => {
            return Err(Error::KindMismatch("expected a cumulant table, found moments".into()))
        }
        _ => return Err(Error::Parse("expected exactly one \"cumulants\" map".into())),
    };
    CumulantTable::new(raw.letters, raw.max_degree, parse_entries(&map)?)
}

/// Entries in canonical order: degree, then rendering.
struct Ordered(Vec<(String, String)>);

impl Serialize for Ordered {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn canonical(words: Vec<Word>, mut get: impl FnMut(&Word) -> Result<Rational>) -> Result<Ordered> {
    let mut rows: Vec<(usize, String, String)> = Vec::with_capacity(words.len());
    for w in words {
        let v = get(&w)?;
        rows.push((w.degree(), w.to_string(), v.to_string()));
    }
    rows.sort();
    Ok(Ordered(rows.into_iter().map(|(_, k, v)| (k, v)).collect()))
}

#[derive(Serialize)]
struct StateOut {
    letters: u32,
    max_degree: usize,
    moments: Ordered,
}

#[derive(Serialize)]
struct CumulantOut {
    letters: u32,
    max_degree: usize,
    unit: &'static str,
    cumulants: Ordered,
}

/// Pretty JSON with every word of degree `≤ max_degree` listed.
pub fn state_to_json(phi: &StateTable) -> String {
    let out = StateOut {
        letters: phi.letters(),
        max_degree: phi.max_degree(),
        moments: canonical(phi.words(), |w| phi.get(w)).expect("own words"),
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}

pub fn cumulants_to_json(c: &CumulantTable) -> String {
    let out = CumulantOut {
        letters: c.letters(),
        max_degree: c.max_degree(),
        unit: "excluded",
        cumulants: canonical(c.words(), |w| c.get(w)).expect("own words"),
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}
