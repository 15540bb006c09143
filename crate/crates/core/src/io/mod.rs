//! Matrix file formats.

mod json;
mod mtx;

pub use json::{matrix_from_json, matrix_to_json, MatrixJson};
pub use mtx::{read_mtx, read_mtx_float, write_mtx, write_mtx_float, MtxFlavor};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Parses an exact rational literal: an integer or `p/q`. Decimal floats are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |why: &str| Error::Parse { line: None, msg: format!("invalid rational {s:?}: {why}") };
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad("expected an integer or p/q"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(int(p)?, q))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}
