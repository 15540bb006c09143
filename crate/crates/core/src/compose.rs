//! Block composition of Hessenberg companions.
//!
//! Given upper Hessenberg companions `A` of `a(z)` and `B` of `b(z)` with nonzero
//! subdiagonals, the matrix
//!
//! ```text
//!     [ A              −α·c0·e1·eₙᵀ ]
//! C = [ −eₙᵀ   0                    ]
//!     [       −e1      B            ]
//! ```
//!
//! has characteristic polynomial `z·a(z)·b(z) + c0`, where `α` is the reciprocal of
//! the product of all subdiagonal entries of `A` and `B`. The selector rows and
//! columns are never materialized: they are the two `−1` entries placed at
//! `(d_a+1, d_a)` and `(d_a+2, d_a+1)`. The result is again upper Hessenberg with
//! nonzero subdiagonal `subdiag(A) ++ [−1, −1] ++ subdiag(B)`, so compositions nest.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::family::{family_degree, Family, FamilyId};
use crate::hessenberg::{Hessenberg, Scalar, SparseHessenberg};
use crate::poly::BigPoly;

/// Reciprocal of the product of the subdiagonal entries of `a` and (when present) `b`.
pub fn alpha<T: Scalar>(a: &Hessenberg<T>, b: Option<&Hessenberg<T>>) -> T {
    let product = a
        .subdiagonal()
        .into_iter()
        .chain(b.map(Hessenberg::subdiagonal).unwrap_or_default())
        .fold(T::one(), |acc, s| acc * s);
    T::one() / product
}

/// The factors of a composition together with its scaling `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionPlan<T> {
    pub a: Hessenberg<T>,
    /// `None` is the one-factor case `z·a(z) + c0`.
    pub b: Option<Hessenberg<T>>,
    pub c0: T,
    pub alpha: T,
}

impl<T: Scalar> CompositionPlan<T> {
    pub fn new(a: Hessenberg<T>, b: Option<Hessenberg<T>>, c0: T) -> Self {
        let alpha = alpha(&a, b.as_ref());
        CompositionPlan { a, b, c0, alpha }
    }

    /// Dimension of the composed matrix.
    pub fn dim(&self) -> usize {
        self.a.dim() + 1 + self.b.as_ref().map_or(0, Hessenberg::dim)
    }

    /// Assembles the composed companion.
    pub fn build(&self) -> Hessenberg<T> {
        let da = self.a.dim();
        let dim = self.dim();
        let mut entries = BTreeMap::new();
        self.a.place_into(&mut entries, 0);
        entries.insert((da + 1, da), -T::one());
        let corner = match &self.b {
            Some(b) => {
                entries.insert((da + 2, da + 1), -T::one());
                b.place_into(&mut entries, da + 1);
                // −α·c0 from the −α c0 c_a r_b block
                -(self.alpha.clone() * self.c0.clone())
            }
            // Laplace expansion along the last column gives +α·c0 here.
            None => self.alpha.clone() * self.c0.clone(),
        };
        if !corner.is_zero() {
            entries.insert((1, dim), corner);
        }
        Hessenberg::from_parts(dim, entries)
    }
}

/// Companion of `z·a(z)·b(z) + c0`.
pub fn compose<T: Scalar>(a: &Hessenberg<T>, b: &Hessenberg<T>, c0: T) -> Hessenberg<T> {
    CompositionPlan::new(a.clone(), Some(b.clone()), c0).build()
}

/// Companion of `z·a(z) + c0`.
pub fn compose_single<T: Scalar>(a: &Hessenberg<T>, c0: T) -> Hessenberg<T> {
    CompositionPlan::new(a.clone(), None, c0).build()
}

/// Four copies of `s` on the diagonal separated by zero pivots, `−1` links on the
/// subdiagonal and `−1` in the top-right corner: the one-shot block form of the
/// companion of `z³·s(z)⁴ + 1` when `s` has all-`−1` subdiagonal.
pub fn quartic_block_matrix(s: &SparseHessenberg) -> SparseHessenberg {
    let d = s.dim();
    let dim = 4 * d + 3;
    let minus_one = -BigRational::one();
    let mut entries = BTreeMap::new();
    for block in 0..4 {
        let offset = block * (d + 1);
        s.place_into(&mut entries, offset);
        if block < 3 {
            // −r below the block, then −c into the next block
            entries.insert((offset + d + 1, offset + d), minus_one.clone());
            entries.insert((offset + d + 2, offset + d + 1), minus_one.clone());
        }
    }
    entries.insert((1, dim), minus_one);
    Hessenberg::from_parts(dim, entries)
}

/// A family member during recursive construction.
#[derive(Clone, Debug)]
enum Member {
    Zero,
    One,
    Companion(SparseHessenberg),
}

fn step_product(a: &Member, b: &Member) -> Member {
    let one = BigRational::one();
    match (a, b) {
        (Member::Zero, _) | (_, Member::Zero) => Member::One,
        // z·1·1 + 1
        (Member::One, Member::One) => Member::Companion(SparseHessenberg::scalar(-one)),
        (Member::Companion(m), Member::One) | (Member::One, Member::Companion(m)) => {
            Member::Companion(compose_single(m, one))
        }
        (Member::Companion(a), Member::Companion(b)) => Member::Companion(compose(a, b, one)),
    }
}

fn step_quartic(s: &Member) -> Member {
    let zero = BigRational::zero;
    match s {
        Member::Zero => Member::One,
        Member::One => {
            // z³ + 1 = z·z·z + 1
            let z = SparseHessenberg::scalar(zero());
            Member::Companion(compose(&z, &z, BigRational::one()))
        }
        Member::Companion(s) => {
            let half = compose(s, s, zero());
            Member::Companion(compose(&half, &half, BigRational::one()))
        }
    }
}

/// The supersparse companion of a family polynomial, built by recursive composition.
pub fn family_matrix(id: FamilyId) -> Result<SparseHessenberg> {
    if family_degree(id).unwrap_or(0) == 0 {
        return Err(Error::NoCompanion(id));
    }
    let family = id.family();
    let mut members: Vec<Member> = Vec::with_capacity(id.n() as usize + 1);
    for k in 0..=id.n() as usize {
        let next = match (family, k) {
            (_, 0) => Member::Zero,
            (Family::FibonacciMandelbrot, 1) | (Family::NarayanaMandelbrot, 1 | 2) => Member::One,
            (Family::Mandelbrot, _) => step_product(&members[k - 1], &members[k - 1]),
            (Family::FibonacciMandelbrot, _) => step_product(&members[k - 1], &members[k - 2]),
            (Family::NarayanaMandelbrot, _) => step_product(&members[k - 1], &members[k - 3]),
            (Family::QuarticS, _) => step_quartic(&members[k - 1]),
        };
        members.push(next);
    }
    match members.pop() {
        Some(Member::Companion(m)) => Ok(m),
        _ => unreachable!("degree ≥ 1 implies a companion"),
    }
}

/// Classical companion: unit subdiagonal, negated coefficients in the last column.
pub fn frobenius_companion(p: &BigPoly) -> Result<SparseHessenberg> {
    match p.degree() {
        None | Some(0) => return Err(Error::DegreeZero),
        Some(_) if !p.is_monic() => return Err(Error::NotMonic),
        Some(_) => {}
    }
    let d = p.degree().expect("checked above");
    let subdiag = (1..d).map(|j| (j + 1, j, BigRational::one()));
    let last = (1..=d).map(|i| (i, d, BigRational::from_integer(-p.coeff(i - 1))));
    Hessenberg::from_entries(d, subdiag.chain(last))
}

/// Height of a polynomial's Frobenius companion, i.e. its own coefficient height
/// below the leading term (at least 1 from the subdiagonal).
pub fn frobenius_height(p: &BigPoly) -> Result<BigInt> {
    Ok(frobenius_companion(p)?.height().to_integer())
}
