//! JSON table documents and the plain-text table layout.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "dimension": 2,
//!   "parties": 3,
//!   "label": "mermin-3qubit",
//!   "rows": [[{"base": "X", "exp": 1}, ...], ...],
//!   "expected": {"phase_exp": 2, "eigenvalues": [0, 1, 1, 1]}
//! }
//! ```
//!
//! Unknown fields are rejected. `phase_exp` is in units of `iπ/d`;
//! `eigenvalues` are row eigenvalue exponents in units of `2π/d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paradox::{Base, EntryWord, ParadoxTable};
use crate::weyl::Dimension;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    pub base: Base,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_exp: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParadoxDocument {
    pub schema_version: String,
    pub dimension: u32,
    pub parties: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub rows: Vec<Vec<WordDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl ParadoxDocument {
    pub fn from_table(t: &ParadoxTable) -> Self {
        ParadoxDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            dimension: t.dim().get(),
            parties: t.parties(),
            label: (!t.label.is_empty()).then(|| t.label.clone()),
            rows: t
                .rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|w| WordDoc {
                            base: w.base,
                            exp: w.exp,
                        })
                        .collect()
                })
                .collect(),
            expected: None,
        }
    }

    pub fn to_table(&self) -> Result<ParadoxTable> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Document(format!(
                "unsupported schema_version `{}`",
                self.schema_version
            )));
        }
        let d = Dimension::new(self.dimension)?;
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.parties {
                return Err(Error::Document(format!(
                    "row {i} has {} entries but parties = {}",
                    row.len(),
                    self.parties
                )));
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|w| {
                        if (w.base == Base::I) != (w.exp == 0) {
                            return Err(Error::Document(format!(
                                "entry {}^{} must use base I exactly when exp is 0",
                                w.base, w.exp
                            )));
                        }
                        EntryWord::new(w.base, w.exp, d)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ParadoxTable::new(d, rows, self.label.clone().unwrap_or_default())
    }
}

/// Parses a document; errors carry the JSON line and column.
pub fn parse_document(text: &str) -> Result<ParadoxDocument> {
    serde_json::from_str(text).map_err(|e| {
        Error::Document(format!("line {} column {}: {}", e.line(), e.column(), e))
    })
}

pub fn parse_table(text: &str) -> Result<ParadoxTable> {
    parse_document(text)?.to_table()
}

pub fn to_json(t: &ParadoxTable) -> String {
    serde_json::to_string_pretty(&ParadoxDocument::from_table(t)).expect("documents serialize")
}

/// Fixed-width layout: one line per operator, one column per party.
///
/// ```text
/// mermin-3qubit: d=2, M=3, 4 operators
/// X  X  X
/// X  Y  Y
/// Y  X  Y
/// Y  Y  X
/// ```
pub fn render_table(t: &ParadoxTable) -> String {
    let cells: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut out = format!(
        "{}: d={}, M={}, {} operators\n",
        if t.label.is_empty() { "table" } else { &t.label },
        t.dim(),
        t.parties(),
        t.len()
    );
    for row in cells {
        let line = row
            .iter()
            .map(|c| format!("{c:<width$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::catalog;

    #[test]
    fn catalog_round_trips() {
        for (_, t) in catalog() {
            let back = parse_table(&to_json(&t)).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"schema_version":"1","dimension":2,"parties":1,"rows":[[{"base":"X","exp":1}]],"extra":1}"#;
        let err = parse_document(text).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");
    }

    #[test]
    fn errors_carry_position() {
        let text = "{\n  \"schema_version\": \"1\",\n  \"dimension\": ,\n}";
        let err = parse_document(text).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn rejects_bad_documents() {
        let version = r#"{"schema_version":"2","dimension":2,"parties":1,"rows":[[{"base":"X","exp":1}]]}"#;
        assert!(parse_table(version).is_err());
        let ragged = r#"{"schema_version":"1","dimension":2,"parties":2,"rows":[[{"base":"X","exp":1}]]}"#;
        assert!(parse_table(ragged).is_err());
        let exp = r#"{"schema_version":"1","dimension":2,"parties":1,"rows":[[{"base":"X","exp":2}]]}"#;
        assert!(parse_table(exp).is_err());
        let ident = r#"{"schema_version":"1","dimension":2,"parties":1,"rows":[[{"base":"I","exp":1}]]}"#;
        assert!(parse_table(ident).is_err());
    }

    #[test]
    fn render_mermin() {
        let t = crate::family::catalog_entry("mermin-3qubit").unwrap();
        assert_eq!(
            render_table(&t),
            "mermin-3qubit: d=2, M=3, 4 operators\nX  X  X\nX  Y  Y\nY  X  Y\nY  Y  X\n"
        );
    }
}
