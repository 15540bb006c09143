//! The four recurrence families and their polynomials.
//!
//! | family     | recurrence                     | base cases            |
//! |------------|--------------------------------|-----------------------|
//! | Mandelbrot | p(n+1) = z·p(n)² + 1           | p(0) = 0              |
//! | Fibonacci  | q(n+1) = z·q(n)·q(n−1) + 1     | q(0) = 0, q(1) = 1    |
//! | Narayana   | r(n+1) = z·r(n)·r(n−2) + 1     | r(0) = 0, r(1)=r(2)=1 |
//! | QuarticS   | s(n+1) = z³·s(n)⁴ + 1          | s(0) = 0              |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{poly_mul, BigPoly};
use crate::DEFAULT_DEGREE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Mandelbrot,
    FibonacciMandelbrot,
    NarayanaMandelbrot,
    QuarticS,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::Mandelbrot, Family::FibonacciMandelbrot, Family::NarayanaMandelbrot, Family::QuarticS];

    /// Lowercase CLI token.
    pub fn token(self) -> &'static str {
        match self {
            Family::Mandelbrot => "mandelbrot",
            Family::FibonacciMandelbrot => "fibonacci",
            Family::NarayanaMandelbrot => "narayana",
            Family::QuarticS => "quartics",
        }
    }

    /// Number of leading base cases given explicitly rather than by the recurrence.
    fn base_len(self) -> usize {
        match self {
            Family::Mandelbrot | Family::QuarticS => 1,
            Family::FibonacciMandelbrot => 2,
            Family::NarayanaMandelbrot => 3,
        }
    }

    /// Offset of the second factor: q(n−1) for Fibonacci, r(n−2) for Narayana.
    fn lag(self) -> usize {
        match self {
            Family::Mandelbrot | Family::QuarticS => 0,
            Family::FibonacciMandelbrot => 1,
            Family::NarayanaMandelbrot => 2,
        }
    }

    /// Largest index whose degree fits in a `u64`.
    pub fn max_index(self) -> u32 {
        let mut degrees: Vec<Option<u64>> = Vec::new();
        for n in 0.. {
            match checked_degree_step(self, &degrees) {
                Some(d) => degrees.push(d),
                None => return n - 1,
            }
        }
        unreachable!()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.token() == s)
            .ok_or_else(|| Error::Parse {
                line: None,
                msg: format!("unknown family {s:?} (expected mandelbrot, fibonacci, narayana or quartics)"),
            })
    }
}

/// A family member: the family plus its index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    family: Family,
    n: u32,
}

impl FamilyId {
    /// Rejects indices whose degree would not fit in a `u64`.
    pub fn new(family: Family, n: u32) -> Result<Self> {
        let max = family.max_index();
        if n > max {
            return Err(Error::IndexOutOfRange { family: family.token(), n, max });
        }
        Ok(FamilyId { family, n })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn n(self) -> u32 {
        self.n
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}

/// Next degree in the sequence, or `None` on `u64` overflow.
/// The inner `None` is the zero polynomial's degree.
fn checked_degree_step(family: Family, prev: &[Option<u64>]) -> Option<Option<u64>> {
    let k = prev.len();
    if k < family.base_len() {
        // p(0) = q(0) = r(0) = s(0) = 0; the remaining base cases are 1.
        return Some(if k == 0 { None } else { Some(0) });
    }
    let a = prev[k - 1];
    let b = prev[k - 1 - family.lag()];
    let d = match (family, a, b) {
        (_, None, _) | (_, _, None) => Some(0),
        (Family::QuarticS, Some(a), _) => Some(a.checked_mul(4)?.checked_add(3)?),
        (_, Some(a), Some(b)) => Some(a.checked_add(b)?.checked_add(1)?),
    };
    Some(d)
}

/// Degree of the family polynomial from the integer recurrence on degrees alone.
///
/// `None` is the zero polynomial (index 0 in every family); constants report 0.
pub fn family_degree(id: FamilyId) -> Option<u64> {
    family_degrees(id).pop().expect("nonempty")
}

/// Degrees of members `0..=id.n`.
pub fn family_degrees(id: FamilyId) -> Vec<Option<u64>> {
    let mut degrees = Vec::with_capacity(id.n as usize + 1);
    for _ in 0..=id.n {
        let d = checked_degree_step(id.family, &degrees).expect("FamilyId range guarantees no overflow");
        degrees.push(d);
    }
    degrees
}

/// The exact family polynomial, with the default degree cap.
pub fn family_poly(id: FamilyId) -> Result<BigPoly> {
    family_poly_capped(id, DEFAULT_DEGREE_CAP)
}

/// The exact family polynomial; fails before expanding anything if the degree exceeds `cap`.
pub fn family_poly_capped(id: FamilyId, cap: u64) -> Result<BigPoly> {
    let degree = family_degree(id).unwrap_or(0);
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    let family = id.family;
    let mut polys: Vec<BigPoly> = Vec::with_capacity(id.n as usize + 1);
    for k in 0..=id.n as usize {
        let next = if k < family.base_len() {
            if k == 0 {
                BigPoly::zero()
            } else {
                BigPoly::one()
            }
        } else {
            let a = &polys[k - 1];
            let body = match family {
                Family::QuarticS => {
                    let sq = poly_mul(a, a);
                    poly_mul(&sq, &sq).shift_up().shift_up().shift_up()
                }
                _ => poly_mul(a, &polys[k - 1 - family.lag()]).shift_up(),
            };
            &body + &BigPoly::one()
        };
        polys.push(next);
    }
    Ok(polys.pop().expect("nonempty"))
}
