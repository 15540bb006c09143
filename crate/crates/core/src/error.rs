use thiserror::Error;

use crate::family::FamilyId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: u64, cap: u64 },

    #[error("index {n} is out of range for the {family} family (max {max})")]
    IndexOutOfRange { family: &'static str, n: u32, max: u32 },

    #[error("{0}: constant polynomial has no companion")]
    NoCompanion(FamilyId),

    #[error("matrix dimension must be at least 1")]
    DimensionTooSmall,

    #[error("entry ({row},{col}) lies below the subdiagonal")]
    NotHessenberg { row: usize, col: usize },

    #[error("subdiagonal ({row},{col}) is zero")]
    ZeroSubdiagonal { row: usize, col: usize },

    #[error("entry ({row},{col}) is outside a {dim}x{dim} matrix")]
    IndexOutsideMatrix { row: usize, col: usize, dim: usize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial has degree zero")]
    DegreeZero,

    #[error("dimension {dim} exceeds the exact oracle budget {cap}")]
    BudgetExceeded { dim: usize, cap: usize },

    #[error("dimension {dim} exceeds the dense eigensolver cap {cap}")]
    DenseCapExceeded { dim: usize, cap: usize },

    #[error("sample point {point} is a root of b(z)")]
    SingularSample { point: String },

    #[error("floating overflow (log10 magnitude {log10_value})")]
    Overflow { log10_value: f64 },

    #[error("QR iteration failed to converge while deflating index {index}")]
    ConvergenceFailure { index: usize },

    #[error("{}{msg}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Parse { line: Option<usize>, msg: String },
}
