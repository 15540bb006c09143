//! Dense univariate polynomials with exact coefficients.
//!
//! Coefficients are stored in ascending order, so `coeffs[k]` multiplies `z^k`.
//! The zero polynomial is the empty coefficient vector; every other polynomial
//! has a nonzero last coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring for [`Poly`].
pub trait Coeff:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + for<'a> Add<&'a Self, Output = Self> + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + for<'a> Add<&'a T, Output = T> + for<'a> Mul<&'a T, Output = T>
{
}

/// Polynomial over an exact coefficient ring, ascending coefficient order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

/// Integer polynomial; houses the family polynomials.
pub type BigPoly = Poly<BigInt>;

/// Rational polynomial; characteristic polynomials of rational matrices.
pub type RatPoly = Poly<BigRational>;

impl<T: Zero + PartialEq> Poly<T> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T
    where
        T: Clone,
    {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }
}

impl<T: Coeff> Poly<T> {
    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Poly { coeffs: vec![T::zero(), T::one()] }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Multiplies by `z`: a single prepended zero.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    /// Exact evaluation.
    pub fn eval(&self, z: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * z + c)
    }
}

/// Coefficient-wise sum in canonical form.
pub fn poly_add<T: Coeff>(p: &Poly<T>, q: &Poly<T>) -> Poly<T> {
    let (long, short) = if p.coeffs.len() >= q.coeffs.len() { (p, q) } else { (q, p) };
    let mut coeffs = long.coeffs.clone();
    for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
        *c = std::mem::replace(c, T::zero()) + s;
    }
    Poly::new(coeffs)
}

/// Exact product by schoolbook convolution.
pub fn poly_mul<T: Coeff>(p: &Poly<T>, q: &Poly<T>) -> Poly<T> {
    if p.is_zero() || q.is_zero() {
        return Poly::zero();
    }
    let mut coeffs = vec![T::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            coeffs[i + j] = std::mem::replace(&mut coeffs[i + j], T::zero()) + &(a.clone() * b);
        }
    }
    Poly::new(coeffs)
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        poly_add(self, rhs)
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        poly_add(self, &-rhs)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().cloned().map(Neg::neg).collect() }
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        poly_mul(self, rhs)
    }
}

impl BigPoly {
    /// Maximum absolute coefficient; zero for the zero polynomial.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_rational(&self) -> RatPoly {
        Poly { coeffs: self.coeffs.iter().cloned().map(BigRational::from_integer).collect() }
    }
}

impl RatPoly {
    /// `Some` when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<BigPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(|coeffs| Poly { coeffs })
    }
}

/// Horner value together with its running rounding-error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HornerEval {
    pub value: Complex64,
    /// Bound on `|computed − exact|`, from the running error analysis of Horner's rule.
    pub error_bound: f64,
}

/// Evaluates `p` at a complex double by Horner's rule with a running error bound.
///
/// Coefficients are rounded to doubles first; [`Error::Overflow`] is returned if a
/// coefficient or an intermediate value leaves the floating range.
pub fn poly_eval_complex(p: &BigPoly, z: Complex64) -> Result<HornerEval> {
    let u = f64::EPSILON / 2.0;
    let overflow = |log10: f64| Error::Overflow { log10_value: log10 };
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| {
            c.to_f64()
                .filter(|v| v.is_finite())
                .ok_or_else(|| overflow(c.bits() as f64 * std::f64::consts::LOG10_2))
        })
        .collect::<Result<Vec<f64>>>()?;
    let Some((&lead, rest)) = coeffs.split_last() else {
        return Ok(HornerEval { value: Complex64::zero(), error_bound: 0.0 });
    };
    let mut y = Complex64::new(lead, 0.0);
    // Higham's running bound, with the complex multiply constant folded in.
    let mut mu = y.norm() / 2.0;
    let az = z.norm();
    for &c in rest.iter().rev() {
        y = y * z + c;
        mu = az * mu + y.norm();
    }
    if !y.re.is_finite() || !y.im.is_finite() || !mu.is_finite() {
        return Err(overflow(f64::INFINITY));
    }
    let bound = (2.0 * std::f64::consts::SQRT_2 + 1.0) * u * (2.0 * mu - y.norm()).max(0.0);
    Ok(HornerEval { value: y, error_bound: bound })
}

fn fmt_term<T: fmt::Display>(f: &mut fmt::Formatter<'_>, c: &T, k: usize) -> fmt::Result {
    match k {
        0 => write!(f, "{c}"),
        1 => write!(f, "({c})*z"),
        _ => write!(f, "({c})*z^{k}"),
    }
}

impl<T: fmt::Display + Zero> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            fmt_term(f, c, k)?;
            first = false;
        }
        Ok(())
    }
}

/// JSON wire form: `{"degree": d, "coeffs": ["c0", "c1", ...]}` with decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degree: Option<usize>,
    pub coeffs: Vec<String>,
}

impl From<&BigPoly> for PolyJson {
    fn from(p: &BigPoly) -> Self {
        PolyJson { degree: p.degree(), coeffs: p.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

impl TryFrom<PolyJson> for BigPoly {
    type Error = Error;

    fn try_from(json: PolyJson) -> Result<Self> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse { line: None, msg: format!("bad coefficient {s:?}") })
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Poly::new(coeffs);
        if p.degree() != json.degree {
            return Err(Error::Parse {
                line: None,
                msg: format!("declared degree {:?} but coefficients give {:?}", json.degree, p.degree()),
            });
        }
        Ok(p)
    }
}

impl BigPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial JSON serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: PolyJson =
            serde_json::from_str(s).map_err(|e| Error::Parse { line: None, msg: e.to_string() })?;
        json.try_into()
    }
}

/// Integer polynomial from small ascending coefficients.
pub fn int_poly(coeffs: &[i64]) -> BigPoly {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}
