//! Hermitian matrices and principal-submatrix selection with certified
//! spectral bounds.

mod io;
mod matrix;
mod select;

use thiserror::Error;

use crate::barrier::BarrierError;
use crate::oracle;
use crate::realroot::{RealRootError, RealRootedPoly};

pub use io::{read_matrix, read_matrix_json, read_matrix_market, MatrixJson};
pub use matrix::{HermitianMatrix, RectOperator};
pub use select::{
    select_columns, select_invertible, select_low_norm, select_maxroot_greedy,
    select_smax_greedy, select_two_sided, SelectionCertificate, SelectionMode, CERT_TOL,
};

/// Largest size accepted by [`thompson_residual`].
pub const THOMPSON_MAX_N: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubmatrixError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("entries ({i},{j}) and ({j},{i}) are not conjugate (gap {gap:e})")]
    NotHermitian { i: usize, j: usize, gap: f64 },
    #[error("eigenvalue iteration did not converge (index {index})")]
    ConvergenceFailure { index: usize },
    #[error("size {n} exceeds the limit {max}")]
    SizeTooLarge { n: usize, max: usize },
    #[error("kept size {k} outside [1, {n})")]
    KOutOfRange { k: usize, n: usize },
    #[error("potential level must be positive and finite, got {0}")]
    NonPositivePhi(f64),
    #[error("spectrum [{min}, {max}] is outside [-1, 1]")]
    SpectrumOutOfRange { min: f64, max: f64 },
    #[error("not a positive contraction with positive trace (spectrum [{min}, {max}])")]
    NotPositiveContraction { min: f64, max: f64 },
    #[error("needs a zero diagonal or zero trace (normalised trace {0})")]
    NotTraceless(f64),
    #[error("delta {0} outside (0, 1]")]
    DeltaRange(f64),
    #[error("fraction {0} outside (0, 1/2]")]
    CRange(f64),
    #[error("operator is zero")]
    ZeroOperator,
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error(transparent)]
    RealRoot(#[from] RealRootError),
    #[error(transparent)]
    Barrier(#[from] BarrierError),
}

/// `χ[A]` as the multiset of eigenvalues.
pub fn charpoly_as_roots(a: &HermitianMatrix) -> Result<RealRootedPoly, SubmatrixError> {
    Ok(RealRootedPoly::from_roots(a.eigenvalues()?)?)
}

/// `max |Σₖ χ[Aₖ] − χ′[A]|` over coefficients, relative to the largest
/// coefficient of `χ′[A]`; `Aₖ` deletes row and column `k`.
pub fn thompson_residual(a: &HermitianMatrix) -> Result<f64, SubmatrixError> {
    let n = a.n();
    if n > THOMPSON_MAX_N {
        return Err(SubmatrixError::SizeTooLarge {
            n,
            max: THOMPSON_MAX_N,
        });
    }
    if n == 1 {
        return Ok(0.0);
    }
    let chi = oracle::faddeev_leverrier(a);
    let deriv: Vec<f64> = (1..chi.len()).map(|l| l as f64 * chi[l]).collect();
    let mut sum = vec![0.0; n];
    for k in 0..n {
        for (s, c) in sum.iter_mut().zip(oracle::faddeev_leverrier(&a.without(k))) {
            *s += c;
        }
    }
    let scale = deriv.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let diff = sum
        .iter()
        .zip(&deriv)
        .map(|(s, d)| (s - d).abs())
        .fold(0.0, f64::max);
    Ok(diff / scale)
}
