//! Knot-table loading.
//!
//! Schema: `{ "<label>": { "factors": [ [ [coeff, expL, expM], ... ], ... ] } }`
//! with coefficients as decimal strings. Duplicate labels warn and the last
//! entry wins; malformed files are usage errors carrying the position.

use knotpoly::families::KnotTable;
use knotpoly::laurent2::LPoly2;
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
struct TableEntry {
    factors: Vec<Vec<(String, i64, i64)>>,
}

/// Top-level table document as an ordered entry list, so duplicate keys are
/// observable.
struct TableDoc(Vec<(String, TableEntry)>);

impl<'de> Deserialize<'de> for TableDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = TableDoc;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from knot labels to factored polynomials")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<TableDoc, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, TableEntry>()? {
                    entries.push((k, v));
                }
                Ok(TableDoc(entries))
            }
        }
        d.deserialize_map(V)
    }
}

pub fn load_table(path: &Path) -> Result<(KnotTable, Vec<String>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read table {}: {e}", path.display()))?;
    let doc: TableDoc = serde_json::from_str(&text).map_err(|e| {
        format!(
            "malformed knot table {} at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })?;
    let mut table = KnotTable::empty();
    let mut warnings = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (label, entry) in doc.0 {
        let key: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        if !seen.insert(key.clone()) {
            warnings.push(format!("duplicate table key {label:?}: last entry wins"));
        }
        let mut factors = Vec::new();
        for triples in entry.factors {
            let poly = LPoly2::from_triples(&triples)
                .map_err(|e| format!("table entry {label:?}: {e}"))?;
            let nf = poly
                .normalize()
                .map_err(|e| format!("table entry {label:?}: {e}"))?;
            factors.push(nf);
        }
        table.insert(&label, factors);
    }
    Ok((table, warnings))
}
