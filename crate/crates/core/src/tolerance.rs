//! Numerical tolerances shared by the root-space polynomial engine.

use serde::{Deserialize, Serialize};

/// Working tolerances for [`RealRootedPoly`](crate::realroot::RealRootedPoly)
/// operations. The defaults are fixed engineering choices; callers that need
/// tighter or looser behaviour pass their own value to the `*_with` methods.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute/relative width at which interval refinement of a derivative
    /// root stops.
    pub root: f64,
    /// Relative residual `|Φ(b) − φ| / φ` accepted by the soft-max solver.
    pub phi: f64,
    /// Minimum distance a barrier must keep from the largest root.
    pub gap: f64,
    /// Roots closer than `cluster · max(1, |λ|)` are one multiple root.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: 1e-12,
            phi: 1e-10,
            gap: 1e-13,
            cluster: 1e-10,
        }
    }
}

/// `floor(frac · n)` guarded against `0.6 * 10 = 6.000000000000001`-style
/// representation error.
pub fn floor_count(frac: f64, n: usize) -> usize {
    let x = frac * n as f64;
    (x + 1e-9 * x.abs().max(1.0)).floor().max(0.0) as usize
}

/// `ceil(frac · n)` with the same guard as [`floor_count`].
pub fn ceil_count(frac: f64, n: usize) -> usize {
    let x = frac * n as f64;
    (x - 1e-9 * x.abs().max(1.0)).ceil().max(0.0) as usize
}
