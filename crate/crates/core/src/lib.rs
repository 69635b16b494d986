//! Principal-submatrix selection with certified spectral bounds via
//! interlacing polynomials and the barrier method, plus a small laboratory
//! for quantitative Gauss–Lucas theorems on repeated derivatives.
//!
//! * [`realroot`] — real-rooted polynomials as root multisets: derivatives,
//!   potential `Φ`, soft maximum `smax_φ`.
//! * [`barrier`] — barrier-shift bounds and their closed forms.
//! * [`submatrix`] — Hermitian matrices, eigenvalues, greedy selectors.
//! * [`gausslucas`] — complex roots, hulls, majorization checks.
//! * [`oracle`] — brute-force validators for small instances.
//! * [`random`] — seeded instance generators.

pub mod barrier;
pub mod gausslucas;
pub mod oracle;
pub mod random;
pub mod realroot;
pub mod submatrix;
pub mod tolerance;

pub use barrier::{BarrierError, BoundReport, FormulaId, SpectralProfile};
pub use gausslucas::{ComplexPoly, GaussLucasError, HullReport, RootSet};
pub use oracle::OracleError;
pub use realroot::{Phi, RealRootError, RealRootedPoly};
pub use submatrix::{HermitianMatrix, RectOperator, SelectionCertificate, SelectionMode, SubmatrixError};
pub use tolerance::Tolerances;

/// Any error raised by the library.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    RealRoot(#[from] RealRootError),
    #[error(transparent)]
    Barrier(#[from] BarrierError),
    #[error(transparent)]
    Submatrix(#[from] SubmatrixError),
    #[error(transparent)]
    GaussLucas(#[from] GaussLucasError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
