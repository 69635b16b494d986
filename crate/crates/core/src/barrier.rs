//! Barrier-shift bounds on the largest root of high derivatives, and the
//! closed-form expressions they optimise to.
//!
//! Two conventions for the fraction `c` coexist in the literature these
//! bounds come from. Functions here name the parameter by role:
//! `derivative_fraction` is the share of the degree that is differentiated
//! away (the kept share is `1 − derivative_fraction`), `keep_fraction` is the
//! share that survives.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::realroot::{Phi, RealRootError, RealRootedPoly};

/// Slack accepted on the Cauchy–Schwarz / contraction constraints of a profile.
const PROFILE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BarrierError {
    #[error(transparent)]
    Root(#[from] RealRootError),
    #[error("fraction {c} outside the valid range [{lo}, {hi}]")]
    CRangeError { c: f64, lo: f64, hi: f64 },
    #[error("delta {0} outside [0, 1]")]
    DeltaRange(f64),
    #[error("derivative order {k} outside [1, {degree})")]
    OrderOutOfRange { k: usize, degree: usize },
    #[error("barrier {0} must exceed 1")]
    BarrierNotRightOfOne(f64),
    #[error("invalid spectral profile: alpha={alpha}, beta={beta}")]
    InvalidProfile { alpha: f64, beta: f64 },
    #[error("profile with alpha = 1 has every root at 1")]
    DegenerateProfile,
    #[error("invalid normalized traces tr={tr}, tr2={tr2}")]
    InvalidTraces { tr: f64, tr2: f64 },
}

/// Normalised first and second moments of a root multiset in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub n: usize,
    /// Mean of the roots.
    pub alpha: f64,
    /// Mean of the squared roots.
    pub beta: f64,
}

impl SpectralProfile {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self, BarrierError> {
        let ok = n > 0
            && (0.0..=1.0).contains(&alpha)
            && beta >= alpha * alpha - PROFILE_TOL
            && beta <= alpha + PROFILE_TOL;
        if !ok {
            return Err(BarrierError::InvalidProfile { alpha, beta });
        }
        Ok(Self { n, alpha, beta })
    }

    /// Moments of `p`'s roots; fails unless they lie in `[0, 1]`.
    pub fn of_roots(p: &RealRootedPoly) -> Result<Self, BarrierError> {
        let n = p.degree();
        let alpha = p.mean();
        let beta = p.roots().iter().map(|l| l * l).sum::<f64>() / n as f64;
        if p.min_root() < -PROFILE_TOL || p.max_root() > 1.0 + PROFILE_TOL {
            return Err(BarrierError::InvalidProfile { alpha, beta });
        }
        Self::new(n, alpha.clamp(0.0, 1.0), beta)
    }
}

/// Which bound a [`BoundReport`] or certificate value was produced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    /// Numeric `inf_φ smax_φ(p) − k/φ`.
    BarrierShift,
    /// Maximum root after differentiating a `[0,1]`-rooted polynomial with mean α.
    MaxRootMean,
    /// Traceless `[−1,1]` matrices: `2√(c − c²)`.
    TracelessNorm,
    /// Positive contraction with normalised trace α.
    ContractionNorm,
    /// Norm bound up to the modified stable rank.
    ModifiedStableRankNorm,
    /// Restricted invertibility lower bound.
    RestrictedInvertibility,
    /// Smallest singular value of a column restriction.
    ColumnRestriction,
    ModifiedStableRank,
    HarmonicMean,
    RefinedPotential,
    ShiftedMin,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: f64,
    pub optimal_b: f64,
    pub optimal_phi: Phi,
    pub formula_id: FormulaId,
}

/// Parameters of the two-point extremal root configuration for a profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XstParams {
    pub x: f64,
    pub s: f64,
    pub t: f64,
}

fn check_fraction(c: f64, lo: f64, hi: f64) -> Result<(), BarrierError> {
    if c.is_nan() || c < lo - PROFILE_TOL || c > hi + PROFILE_TOL {
        return Err(BarrierError::CRangeError { c, lo, hi });
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<(), BarrierError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(BarrierError::DeltaRange(delta));
    }
    Ok(())
}

/// `smax_φ(p) − k/φ`, an upper bound on the largest root of `p⁽ᵏ⁾`.
pub fn barrier_bound(p: &RealRootedPoly, k: usize, phi: Phi) -> Result<f64, BarrierError> {
    if k >= p.degree() {
        return Err(RealRootError::DerivativeOrderTooLarge {
            k,
            degree: p.degree(),
        }
        .into());
    }
    Ok(p.smax(phi)? - phi.shift(k))
}

/// Minimises [`barrier_bound`] over φ by golden-section search in `log φ`.
///
/// The search window is `[k/span, 10⁶·n/span]`. A polynomial whose roots all
/// coincide has the common root as its bound at the infinite sentinel.
pub fn optimize_barrier(p: &RealRootedPoly, k: usize) -> Result<BoundReport, BarrierError> {
    let n = p.degree();
    if k == 0 || k >= n {
        return Err(BarrierError::OrderOutOfRange { k, degree: n });
    }
    let span = p.span();
    if span <= 1e-300 || span <= 1e-14 * p.max_root().abs() {
        return Ok(BoundReport {
            bound: p.max_root(),
            optimal_b: p.max_root(),
            optimal_phi: Phi::Infinite,
            formula_id: FormulaId::BarrierShift,
        });
    }
    let objective = |t: f64| -> Result<f64, BarrierError> {
        barrier_bound(p, k, Phi::Finite(t.exp()))
    };
    let (t, bound) = golden_min(
        objective,
        (k as f64 / span).ln(),
        (1e6 * n as f64 / span).ln(),
        1e-10,
    )?;
    let phi = t.exp();
    Ok(BoundReport {
        bound,
        optimal_b: p.smax(Phi::Finite(phi))?,
        optimal_phi: Phi::Finite(phi),
        formula_id: FormulaId::BarrierShift,
    })
}

/// Golden-section minimisation of a unimodal function on `[lo, hi]`; returns
/// the best abscissa seen and its value.
pub(crate) fn golden_min<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, f64), E> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    let mut best = if fa <= fb { (a, fa) } else { (b, fb) };
    for (x, fx) in [(lo, f(lo)?), (hi, f(hi)?)] {
        if fx < best.1 {
            best = (x, fx);
        }
    }
    while hi - lo > tol * (1.0 + lo.abs().max(hi.abs())) {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a)?;
            if fa < best.1 {
                best = (a, fa);
            }
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b)?;
            if fb < best.1 {
                best = (b, fb);
            }
        }
    }
    Ok(best)
}

/// `αn/(b−1) + (1−α)n/b`: the largest potential of `n` roots in `[0,1]`
/// with mean α.
pub fn hm_bound(profile: &SpectralProfile, b: f64) -> Result<f64, BarrierError> {
    if !(b > 1.0) {
        return Err(BarrierError::BarrierNotRightOfOne(b));
    }
    let n = profile.n as f64;
    Ok(profile.alpha * n / (b - 1.0) + (1.0 - profile.alpha) * n / b)
}

/// `(√((1−α)(1−c)) + √(αc))²` with `c` the derivative fraction, `α ≤ c ≤ 1`.
pub fn mrr_bound(alpha: f64, derivative_fraction: f64) -> Result<f64, BarrierError> {
    check_fraction(alpha, 0.0, 1.0)?;
    let c = derivative_fraction;
    check_fraction(c, alpha, 1.0)?;
    let c = c.clamp(alpha, 1.0);
    let v = ((1.0 - alpha) * (1.0 - c)).sqrt() + (alpha * c).sqrt();
    Ok(v * v)
}

/// Barrier minimising `b(1−c) + cα + cα(1−α)/(b−(1−α))`, the objective whose
/// minimum is [`mrr_bound`]. Infinite when `c = 1`.
pub fn mrr_optimal_barrier(alpha: f64, derivative_fraction: f64) -> f64 {
    let c = derivative_fraction;
    (1.0 - alpha) + (c / (1.0 - c)).sqrt() * (alpha * (1.0 - alpha)).sqrt()
}

/// `2√(c − c²)` for a derivative fraction `c ∈ [1/2, 1]`.
pub fn zd1_bound(derivative_fraction: f64) -> Result<f64, BarrierError> {
    let c = derivative_fraction;
    check_fraction(c, 0.5, 1.0)?;
    let c = c.clamp(0.5, 1.0);
    Ok(2.0 * (c - c * c).max(0.0).sqrt())
}

/// `(√((1−c)α) + √(c(1−α)))²` for a keep fraction `0 ≤ c ≤ 1 − α`.
pub fn zd3_bound(alpha: f64, keep_fraction: f64) -> Result<f64, BarrierError> {
    check_fraction(alpha, 0.0, 1.0)?;
    let c = keep_fraction;
    check_fraction(c, 0.0, 1.0 - alpha)?;
    let c = c.clamp(0.0, 1.0);
    let v = ((1.0 - c) * alpha).sqrt() + (c * (1.0 - alpha)).sqrt();
    Ok(v * v)
}

/// `tr(B)² / tr(B²)` with normalised traces.
pub fn modified_stable_rank(tr_b: f64, tr_b2: f64) -> Result<f64, BarrierError> {
    let ok = tr_b > 0.0
        && tr_b <= 1.0 + PROFILE_TOL
        && tr_b2 >= tr_b * tr_b - PROFILE_TOL
        && tr_b2 <= tr_b + PROFILE_TOL;
    if !ok {
        return Err(BarrierError::InvalidTraces {
            tr: tr_b,
            tr2: tr_b2,
        });
    }
    Ok((tr_b * tr_b / tr_b2).min(1.0))
}

fn sqrt_gap(delta: f64, keep_fraction: f64) -> Result<f64, BarrierError> {
    check_delta(delta)?;
    check_fraction(keep_fraction, 0.0, delta)?;
    let c = keep_fraction.clamp(0.0, delta);
    Ok((1.0 - c).sqrt() - (delta - c).sqrt())
}

/// `1 − tr(B)(√(1−c) − √(δ−c))²`: norm of a kept principal submatrix of a
/// positive contraction `A = I − B`.
pub fn kastza_bound(tr_b: f64, delta: f64, keep_fraction: f64) -> Result<f64, BarrierError> {
    let g = sqrt_gap(delta, keep_fraction)?;
    Ok(1.0 - tr_b * g * g)
}

/// `tr(A)(√(1−c) − √(δ−c))²`: smallest eigenvalue of the kept submatrix.
pub fn bt_bound(tr_a: f64, delta: f64, keep_fraction: f64) -> Result<f64, BarrierError> {
    let g = sqrt_gap(delta, keep_fraction)?;
    Ok(tr_a * g * g)
}

/// `x = (α−β)/(1−α)`, `s = (β−α²)/(1−2α+β)`, `t = 1 − s`.
pub fn xst_params(profile: &SpectralProfile) -> Result<XstParams, BarrierError> {
    let (a, b) = (profile.alpha, profile.beta);
    if a >= 1.0 - PROFILE_TOL {
        return Err(BarrierError::DegenerateProfile);
    }
    let denom = 1.0 - 2.0 * a + b;
    let x = ((a - b) / (1.0 - a)).clamp(0.0, 1.0);
    let s = ((b - a * a) / denom).clamp(0.0, 1.0);
    let t = 1.0 - s;
    debug_assert!(x < 1.0 || a >= 1.0 - PROFILE_TOL);
    Ok(XstParams { x, s, t })
}

/// `ns/(b−1) + nt/(b−x)`: largest potential of `n` roots in `[0,1]` with the
/// profile's first two moments.
pub fn refined_potential_bound(profile: &SpectralProfile, b: f64) -> Result<f64, BarrierError> {
    if !(b > 1.0) {
        return Err(BarrierError::BarrierNotRightOfOne(b));
    }
    let XstParams { x, s, t } = xst_params(profile)?;
    let n = profile.n as f64;
    Ok(n * s / (b - 1.0) + n * t / (b - x))
}

/// `x + (1−x)(√((1−α)(1−c)) + √(cα))²`, the minimum over `b > 1` of
/// `b − cn/φ` with `φ = αn/(b−1) + (1−α)n/(b−x)`; `c` is the derivative
/// fraction.
pub fn shifted_min_bound(alpha: f64, derivative_fraction: f64, x: f64) -> Result<f64, BarrierError> {
    check_fraction(x, 0.0, 1.0)?;
    check_fraction(alpha, 0.0, 1.0)?;
    let c = derivative_fraction;
    check_fraction(c, 0.0, 1.0)?;
    let c = c.clamp(0.0, 1.0);
    let inner = ((1.0 - alpha) * (1.0 - c)).sqrt() + (c * alpha).sqrt();
    Ok(x + (1.0 - x) * inner * inner)
}

/// Barrier at which `b − cn/φ_refined(b)` attains [`shifted_min_bound`] for
/// the profile's `(x, s)`; obtained from [`mrr_optimal_barrier`] through
/// `b = x + (1−x)·b̃`.
pub fn refined_optimal_barrier(
    profile: &SpectralProfile,
    derivative_fraction: f64,
) -> Result<f64, BarrierError> {
    let XstParams { x, s, .. } = xst_params(profile)?;
    Ok(x + (1.0 - x) * mrr_optimal_barrier(s, derivative_fraction))
}
