//! Matrix Market coordinate files.
//!
//! Both flavors are valid `coordinate real general` files. The exact flavor adds one
//! comment line per stored entry, `%exact <row> <col> <p/q>`, ahead of the size line;
//! readers that ignore comments still see the rounded doubles.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::parse_rational;
use crate::error::{Error, Result};
use crate::hessenberg::{FloatHessenberg, Hessenberg, SparseHessenberg};

const HEADER: &str = "%%MatrixMarket matrix coordinate real general";
const EXACT_TAG: &str = "%exact";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtxFlavor {
    /// Doubles plus `%exact` comment lines carrying `p/q` values.
    Exact,
    /// Plain doubles.
    Real,
}

fn format_f64(v: f64) -> String {
    format!("{}", v + 0.0)
}

pub fn write_mtx(m: &SparseHessenberg, flavor: MtxFlavor) -> String {
    let mut s = format!("{HEADER}\n");
    if flavor == MtxFlavor::Exact {
        for (r, c, v) in m.iter() {
            writeln!(s, "{EXACT_TAG} {r} {c} {v}").expect("write to string");
        }
    }
    writeln!(s, "{} {} {}", m.dim(), m.dim(), m.nnz()).expect("write to string");
    for (r, c, v) in m.iter() {
        let v = v.to_f64().expect("rational converts to f64");
        writeln!(s, "{r} {c} {}", format_f64(v)).expect("write to string");
    }
    s
}

pub fn write_mtx_float(m: &FloatHessenberg) -> String {
    let mut s = format!("{HEADER}\n{} {} {}\n", m.dim(), m.dim(), m.nnz());
    for (r, c, &v) in m.iter() {
        writeln!(s, "{r} {c} {}", format_f64(v)).expect("write to string");
    }
    s
}

struct RawMtx<'a> {
    dim: usize,
    exact: Vec<(usize, usize, usize, &'a str)>,
    data: Vec<(usize, usize, usize, &'a str)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: Some(line), msg: msg.into() }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("bad index {tok:?}")))
}

fn split_raw(text: &str) -> Result<RawMtx<'_>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let lower = header.to_ascii_lowercase();
    if !lower.starts_with("%%matrixmarket matrix coordinate") {
        return Err(parse_err(1, "not a Matrix Market coordinate file"));
    }
    if !(lower.contains(" real") || lower.contains(" integer")) || !lower.ends_with("general") {
        return Err(parse_err(1, "only real/integer general matrices are supported"));
    }
    let mut exact = Vec::new();
    let mut size = None;
    for (no, line) in lines.by_ref() {
        if let Some(rest) = line.strip_prefix(EXACT_TAG) {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(parse_err(no, "malformed %exact line"));
            }
            exact.push((no, parse_index(toks[0], no)?, parse_index(toks[1], no)?, toks[2]));
        } else if line.starts_with('%') || line.is_empty() {
            continue;
        } else {
            size = Some((no, line));
            break;
        }
    }
    let (no, size) = size.ok_or_else(|| parse_err(1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| parse_index(t, no))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(parse_err(no, "size line must be `rows cols nnz`"));
    };
    if rows != cols {
        return Err(parse_err(no, format!("matrix is {rows}x{cols}, expected square")));
    }
    let mut data = Vec::with_capacity(nnz);
    for (no, line) in lines {
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(no, "entry must be `row col value`"));
        }
        data.push((no, parse_index(toks[0], no)?, parse_index(toks[1], no)?, toks[2]));
    }
    if data.len() != nnz {
        return Err(parse_err(no, format!("declared {nnz} entries, found {}", data.len())));
    }
    Ok(RawMtx { dim: rows, exact, data })
}

/// Reads an exact matrix. `%exact` lines win when present; otherwise every value
/// must be an integer or `p/q` literal.
pub fn read_mtx(text: &str) -> Result<SparseHessenberg> {
    let raw = split_raw(text)?;
    let source = if raw.exact.is_empty() { &raw.data } else { &raw.exact };
    let entries = source
        .iter()
        .map(|&(no, r, c, v)| {
            let value: BigRational = parse_rational(v).map_err(|e| parse_err(no, e.to_string()))?;
            Ok((r, c, value))
        })
        .collect::<Result<Vec<_>>>()?;
    if !raw.exact.is_empty() {
        let positions = |v: &[(usize, usize, usize, &str)]| {
            let mut p: Vec<(usize, usize)> = v.iter().map(|&(_, r, c, _)| (r, c)).collect();
            p.sort_unstable();
            p
        };
        if positions(&raw.exact) != positions(&raw.data) {
            return Err(parse_err(1, "%exact lines do not match the coordinate entries"));
        }
    }
    Hessenberg::from_entries(raw.dim, entries)
}

/// Reads a floating matrix from the coordinate values, ignoring `%exact` lines.
pub fn read_mtx_float(text: &str) -> Result<FloatHessenberg> {
    let raw = split_raw(text)?;
    let entries = raw
        .data
        .iter()
        .map(|&(no, r, c, v)| {
            let value = v.parse::<f64>().map_err(|_| parse_err(no, format!("bad value {v:?}")))?;
            Ok((r, c, value))
        })
        .collect::<Result<Vec<_>>>()?;
    Hessenberg::from_entries(raw.dim, entries)
}
