use serde::{Deserialize, Serialize};

use super::parse_rational;
use crate::error::{Error, Result};
use crate::hessenberg::{Hessenberg, SparseHessenberg};

/// JSON wire form: `{"dim": n, "entries": [[row, col, "p/q"], ...]}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<(usize, usize, String)>,
}

pub fn matrix_to_json(m: &SparseHessenberg) -> String {
    let json = MatrixJson {
        dim: m.dim(),
        entries: m.iter().map(|(r, c, v)| (r, c, v.to_string())).collect(),
    };
    serde_json::to_string(&json).expect("matrix JSON serialization")
}

pub fn matrix_from_json(text: &str) -> Result<SparseHessenberg> {
    let json: MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: Some(e.line()), msg: e.to_string() })?;
    let entries = json
        .entries
        .into_iter()
        .map(|(r, c, v)| Ok((r, c, parse_rational(&v)?)))
        .collect::<Result<Vec<_>>>()?;
    Hessenberg::from_entries(json.dim, entries)
}
