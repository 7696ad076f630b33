//! Dense complex linear algebra and subspace calculus.
//!
//! Everything downstream (algebras, Hopf structures, coactions) is plain
//! coordinate linear algebra over `Complex64`. This module owns the matrix
//! type, the rank/kernel machinery (singular-value thresholding), Hermitian
//! eigendecomposition, and orthonormal subspaces.

mod decomp;
mod matrix;
mod rng;
mod subspace;

pub use decomp::{eigh, svd, Eigh, Svd};
pub use matrix::CMatrix;
pub use rng::SplitMix64;
pub use subspace::{kernel, range, rank, subspace_sum_and_intersection, Subspace};

use thiserror::Error;

/// Hard cap on the entry count of a Kronecker product result.
pub const DEFAULT_SIZE_CAP: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("tensor product result {rows}x{cols} exceeds size cap {cap}")]
    SizeCap { rows: usize, cols: usize, cap: usize },
    #[error("matrix is singular to working precision")]
    SingularMatrix,
    #[error("iteration did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

/// Rank and equality cutoffs used by every numerical decision in the crate.
///
/// `rank_tol` is relative to the largest singular value of the matrix at
/// hand; `eq_tol` is an absolute entrywise bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub rank_tol: f64,
    pub eq_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { rank_tol: 1e-9, eq_tol: 1e-9 }
    }
}

impl ToleranceConfig {
    pub fn new(rank_tol: f64, eq_tol: f64) -> Result<Self, NumError> {
        if !(rank_tol > 0.0 && rank_tol.is_finite()) {
            return Err(NumError::InvalidTolerance(format!("rank_tol = {rank_tol}")));
        }
        if !(eq_tol > 0.0 && eq_tol.is_finite()) {
            return Err(NumError::InvalidTolerance(format!("eq_tol = {eq_tol}")));
        }
        Ok(Self { rank_tol, eq_tol })
    }

    /// Uniform tolerance for both cutoffs (the CLI's `--tol`).
    pub fn uniform(tol: f64) -> Result<Self, NumError> {
        Self::new(tol, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(ToleranceConfig::new(0.0, 1e-9).is_err());
        assert!(ToleranceConfig::new(1e-9, -1.0).is_err());
        assert!(ToleranceConfig::new(1e-9, f64::NAN).is_err());
        assert!(ToleranceConfig::new(1e-12, 1e-10).is_ok());
    }
}
