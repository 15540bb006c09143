//! Supersparse companion matrices.
//!
//! For polynomials of the form `c(z) = z·a(z)·b(z) + c0`, where `a` and `b` already
//! have upper Hessenberg companions, [`compose`] builds a companion of `c` whose new
//! entries are `−1`s plus a single scaled corner. Applied recursively this yields
//! companions with entries in `{−1, 0, 1}` for the Mandelbrot, Fibonacci-Mandelbrot,
//! Narayana-Mandelbrot and quartic families ([`family_matrix`]), even though the
//! coefficients of those polynomials grow exponentially.
//!
//! The crate also provides an exact characteristic-polynomial oracle ([`oracle`]), a
//! Hessenberg QR eigensolver with residual certificates ([`eig`]), and file formats.

pub mod compose;
pub mod eig;
pub mod error;
pub mod family;
pub mod hessenberg;
pub mod io;
pub mod oracle;
pub mod plot;
pub mod poly;

pub use compose::{
    alpha, compose, compose_single, family_matrix, frobenius_companion, frobenius_height,
    quartic_block_matrix, CompositionPlan,
};
pub use eig::{eigenvalues, residual, root_cloud, Root, RootCloud, RootSource};
pub use error::{Error, Result};
pub use family::{family_degree, family_poly, Family, FamilyId};
pub use hessenberg::{FloatHessenberg, Hessenberg, SparseHessenberg};
pub use oracle::{char_poly_exact, verify_composition, verify_cramer_v, verify_family, VerificationReport};
pub use poly::{poly_add, poly_eval_complex, poly_mul, BigPoly, Poly, RatPoly};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Default cap on the degree of an expanded family polynomial.
pub const DEFAULT_DEGREE_CAP: u64 = 200_000;

/// Default largest dimension handed to the exact oracle.
pub const DEFAULT_ORACLE_DIM_CAP: usize = 128;

/// Default largest dimension handed to the dense eigensolver.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Environment variable overriding [`DEFAULT_DEGREE_CAP`].
pub const DEGREE_CAP_ENV: &str = "COMPANION_DEGREE_CAP";

/// Degree cap from [`DEGREE_CAP_ENV`], or the default when unset or unparsable.
pub fn degree_cap_from_env() -> u64 {
    std::env::var(DEGREE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}
