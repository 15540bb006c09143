//! Exact characteristic polynomials and verification of the composition identity.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::compose::{family_matrix, CompositionPlan};
use crate::error::{Error, Result};
use crate::family::{family_degree, family_poly, FamilyId};
use crate::hessenberg::SparseHessenberg;
use crate::poly::{poly_mul, Poly, RatPoly};
use crate::DEFAULT_ORACLE_DIM_CAP;

/// `det(zI − m)`, expanded exactly.
///
/// Uses the Hessenberg column recurrence
/// `p_k = (z − h_kk)·p_{k−1} − Σ_{i<k} h_ik·(h_{i+1,i}⋯h_{k,k−1})·p_{i−1}`,
/// touching only the stored entries of each column.
pub fn char_poly_exact(m: &SparseHessenberg) -> RatPoly {
    let n = m.dim();
    // sub_prefix[k] = h_{2,1}·h_{3,2}⋯h_{k,k−1}, with sub_prefix[1] = 1
    let mut sub_prefix = vec![BigRational::one(); n + 1];
    for k in 2..=n {
        sub_prefix[k] = &sub_prefix[k - 1] * m.get(k, k - 1);
    }
    let mut p: Vec<RatPoly> = Vec::with_capacity(n + 1);
    p.push(RatPoly::one());
    for k in 1..=n {
        let mut next = p[k - 1].shift_up();
        for (i, h) in m.column(k) {
            if i > k {
                continue;
            }
            let weight = if i == k { h.clone() } else { h * &sub_prefix[k] / &sub_prefix[i] };
            next = &next - &p[i - 1].scale(&weight);
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

/// Outcome of an exact polynomial comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub first_mismatch_degree: Option<usize>,
    pub expected: Option<String>,
    pub got: Option<String>,
}

impl VerificationReport {
    /// Compares coefficient by coefficient from degree 0 upwards.
    pub fn compare(expected: &RatPoly, got: &RatPoly) -> Self {
        let len = expected.coeffs().len().max(got.coeffs().len());
        match (0..len).find(|&k| expected.coeff(k) != got.coeff(k)) {
            None => VerificationReport { ok: true, first_mismatch_degree: None, expected: None, got: None },
            Some(k) => VerificationReport {
                ok: false,
                first_mismatch_degree: Some(k),
                expected: Some(expected.coeff(k).to_string()),
                got: Some(got.coeff(k).to_string()),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report JSON serialization")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.first_mismatch_degree, &self.expected, &self.got) {
            (Some(k), Some(e), Some(g)) => {
                write!(f, "mismatch at z^{k}: expected {e}, got {g}")
            }
            _ => write!(f, "ok"),
        }
    }
}

/// Checks `det(zI − C) = z·a(z)·b(z) + c0` exactly for the composed `C`.
pub fn verify_composition(
    a: &SparseHessenberg,
    b: Option<&SparseHessenberg>,
    c0: &BigRational,
) -> VerificationReport {
    let composed = CompositionPlan::new(a.clone(), b.cloned(), c0.clone()).build();
    let mut product = char_poly_exact(a);
    if let Some(b) = b {
        product = poly_mul(&product, &char_poly_exact(b));
    }
    let expected = &product.shift_up() + &Poly::constant(c0.clone());
    VerificationReport::compare(&expected, &char_poly_exact(&composed))
}

/// Solves `(zI − B)·v = e1` exactly; `None` when singular.
///
/// Gaussian elimination on the Hessenberg system, swapping adjacent rows when a
/// pivot vanishes, then back substitution.
pub fn solve_shifted_unit(b: &SparseHessenberg, z: &BigRational) -> Option<Vec<BigRational>> {
    let n = b.dim();
    let mut a: Vec<Vec<BigRational>> = b
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|v| -v).collect())
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] += z;
    }
    let mut rhs = vec![BigRational::zero(); n];
    rhs[0] = BigRational::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            a.swap(k, k + 1);
            rhs.swap(k, k + 1);
        }
        if a[k][k].is_zero() {
            return None;
        }
        if !a[k + 1][k].is_zero() {
            let factor = &a[k + 1][k] / &a[k][k];
            let (top, bottom) = a.split_at_mut(k + 1);
            for (dst, src) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *dst -= &factor * src;
            }
            let t = &factor * &rhs[k];
            rhs[k + 1] -= t;
        }
    }
    let mut v = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        if a[i][i].is_zero() {
            return None;
        }
        let tail = ((i + 1)..n).fold(BigRational::zero(), |acc, j| acc + &a[i][j] * &v[j]);
        v[i] = (&rhs[i] - tail) / &a[i][i];
    }
    Some(v)
}

/// Checks that the last entry of the solution of `(zI − B)·v = e1` equals
/// `∏ b_{j+1,j} / b(z)`.
pub fn verify_cramer_v(b: &SparseHessenberg, z: &BigRational) -> Result<bool> {
    let bz = char_poly_exact(b).eval(z);
    if bz.is_zero() {
        return Err(Error::SingularSample { point: z.to_string() });
    }
    let v = solve_shifted_unit(b, z).ok_or_else(|| Error::SingularSample { point: z.to_string() })?;
    let subdiag_product = b.subdiagonal().into_iter().fold(BigRational::one(), |acc, s| acc * s);
    Ok(*v.last().expect("dim ≥ 1") == subdiag_product / bz)
}

/// Exact check that the family companion reproduces the family polynomial.
pub fn verify_family(id: FamilyId) -> Result<VerificationReport> {
    verify_family_budget(id, DEFAULT_ORACLE_DIM_CAP)
}

/// As [`verify_family`], refusing matrices larger than `budget`.
pub fn verify_family_budget(id: FamilyId, budget: usize) -> Result<VerificationReport> {
    let degree = family_degree(id).unwrap_or(0);
    if degree == 0 {
        return Err(Error::NoCompanion(id));
    }
    if degree > budget as u64 {
        return Err(Error::BudgetExceeded { dim: degree as usize, cap: budget });
    }
    let m = family_matrix(id)?;
    let expected = family_poly(id)?.to_rational();
    Ok(VerificationReport::compare(&expected, &char_poly_exact(&m)))
}
