//! Greedy principal-submatrix selection.
//!
//! Every selector deletes one index per round. Candidates are scored in
//! parallel from the same immutable snapshot and reduced by the
//! lexicographic minimum of `(score, original index)`, so the outcome does
//! not depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{charpoly_as_roots, HermitianMatrix, RectOperator, SubmatrixError};
use crate::barrier::{
    bt_bound, mrr_bound, mrr_optimal_barrier, optimize_barrier, refined_optimal_barrier,
    zd1_bound, zd3_bound, FormulaId, SpectralProfile,
};
use crate::realroot::Phi;
use crate::tolerance::floor_count;

/// Slack on the certificate inequality.
pub const CERT_TOL: f64 = 1e-8;
/// Scores this close to the minimum count as ties.
const TIE_TOL: f64 = 1e-12;
/// Eigenvalue slack when recognising `[0,1]` and `[−1,1]` spectra.
const SPECTRUM_TOL: f64 = 1e-10;
/// Traces this close to zero count as zero.
const TRACE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    MaxRootGreedy,
    SmaxGreedy,
    TwoSided,
    Invertibility,
    ColumnSelect,
}

impl SelectionMode {
    /// Whether the certificate bounds the kept spectrum from above.
    pub fn is_upper(self) -> bool {
        matches!(self, Self::MaxRootGreedy | Self::SmaxGreedy | Self::TwoSided)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionCertificate {
    /// Kept indices, ascending.
    pub kept_indices: Vec<usize>,
    /// `λ_max` (norm modes), spectral norm (two-sided), `λ_min`
    /// (invertibility) or smallest singular value (columns) of the kept part.
    pub achieved_extreme: f64,
    pub certified_bound: f64,
    pub mode: SelectionMode,
    pub formula: FormulaId,
    pub phi_used: Option<f64>,
    /// Removed indices in removal order.
    pub removal_trace: Vec<usize>,
    /// Score of the full matrix followed by the chosen score of every round.
    pub round_scores: Vec<f64>,
    /// Bound carried by the greedy run itself, when it differs from the
    /// certified closed form.
    pub greedy_bound: Option<f64>,
}

impl SelectionCertificate {
    pub fn holds(&self) -> bool {
        if self.mode.is_upper() {
            self.achieved_extreme <= self.certified_bound + CERT_TOL
        } else {
            self.achieved_extreme >= self.certified_bound - CERT_TOL
        }
    }

    /// `certified − achieved` for upper modes, `achieved − certified` for
    /// lower ones; non-negative (up to tolerance) when the certificate holds.
    pub fn margin(&self) -> f64 {
        if self.mode.is_upper() {
            self.certified_bound - self.achieved_extreme
        } else {
            self.achieved_extreme - self.certified_bound
        }
    }
}

struct GreedyRun {
    kept: Vec<usize>,
    removed: Vec<usize>,
    scores: Vec<f64>,
}

/// Removes `n − keep` indices, each round deleting the candidate whose
/// remaining submatrix has the smallest `score(submatrix, round)`.
fn greedy<F>(a: &HermitianMatrix, keep: usize, score: F) -> Result<GreedyRun, SubmatrixError>
where
    F: Fn(&HermitianMatrix, usize) -> Result<f64, SubmatrixError> + Sync,
{
    let mut live: Vec<usize> = (0..a.n()).collect();
    let mut removed = Vec::new();
    let mut scores = Vec::new();
    for round in 1..=a.n() - keep {
        let cand: Vec<(f64, usize)> = (0..live.len())
            .into_par_iter()
            .map(|pos| {
                let idx: Vec<usize> = live.iter().copied().filter(|&i| i != live[pos]).collect();
                score(&a.principal(&idx), round).map(|s| (s, live[pos]))
            })
            .collect::<Result<_, _>>()?;
        let best = cand.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let tie = TIE_TOL * best.abs().max(1.0);
        let &(s, drop) = cand
            .iter()
            .filter(|c| c.0 <= best + tie)
            .min_by_key(|c| c.1)
            .expect("at least one candidate");
        live.retain(|&i| i != drop);
        removed.push(drop);
        scores.push(s);
    }
    Ok(GreedyRun {
        kept: live,
        removed,
        scores,
    })
}

fn check_keep(n: usize, keep: usize) -> Result<(), SubmatrixError> {
    if keep == 0 || keep >= n {
        return Err(SubmatrixError::KOutOfRange { k: keep, n });
    }
    Ok(())
}

/// Interlacing-family greedy: at round `r` score each candidate by the
/// largest root of `χ[candidate]` differentiated `n − keep − r` times.
/// Certified by `max root χ⁽ⁿ⁻ᵏ⁾[A]`.
pub fn select_maxroot_greedy(
    a: &HermitianMatrix,
    keep: usize,
) -> Result<SelectionCertificate, SubmatrixError> {
    let n = a.n();
    check_keep(n, keep)?;
    let chi = charpoly_as_roots(a)?;
    let bound = chi.nth_derivative(n - keep)?.max_root();
    let run = greedy(a, keep, |sub, round| {
        let d = n - keep - round;
        Ok(charpoly_as_roots(sub)?.nth_derivative(d)?.max_root())
    })?;
    let mut scores = vec![bound];
    scores.extend(&run.scores);
    Ok(SelectionCertificate {
        achieved_extreme: a.principal(&run.kept).lambda_max()?,
        kept_indices: run.kept,
        certified_bound: bound,
        mode: SelectionMode::MaxRootGreedy,
        formula: FormulaId::BarrierShift,
        phi_used: None,
        removal_trace: run.removed,
        round_scores: scores,
        greedy_bound: None,
    })
}

/// Soft-max greedy: each round deletes the index minimising
/// `smax_φ(χ[candidate])`. Certified by `smax_φ(χ[A]) − (n − keep)/φ`.
pub fn select_smax_greedy(
    a: &HermitianMatrix,
    keep: usize,
    phi: f64,
) -> Result<SelectionCertificate, SubmatrixError> {
    if !(phi > 0.0 && phi.is_finite()) {
        return Err(SubmatrixError::NonPositivePhi(phi));
    }
    smax_greedy(a, keep, Phi::Finite(phi))
}

fn smax_greedy(
    a: &HermitianMatrix,
    keep: usize,
    phi: Phi,
) -> Result<SelectionCertificate, SubmatrixError> {
    let n = a.n();
    check_keep(n, keep)?;
    let start = charpoly_as_roots(a)?.smax(phi)?;
    let run = greedy(a, keep, |sub, _| Ok(charpoly_as_roots(sub)?.smax(phi)?))?;
    let bound = start - phi.shift(n - keep);
    let mut scores = vec![start];
    scores.extend(&run.scores);
    Ok(SelectionCertificate {
        achieved_extreme: a.principal(&run.kept).lambda_max()?,
        kept_indices: run.kept,
        certified_bound: bound,
        mode: SelectionMode::SmaxGreedy,
        formula: FormulaId::BarrierShift,
        phi_used: phi.finite(),
        removal_trace: run.removed,
        round_scores: scores,
        greedy_bound: Some(bound),
    })
}

/// Potential level `Φ_{χ[M]}(b*)` at a closed-form barrier, or the numeric
/// optimum when `b*` is not right of the spectrum.
fn choose_phi(
    m: &HermitianMatrix,
    b_star: Option<f64>,
    derivative_order: usize,
) -> Result<Phi, SubmatrixError> {
    let chi = charpoly_as_roots(m)?;
    if let Some(b) = b_star.filter(|b| b.is_finite()) {
        if let Ok(phi) = chi.potential(b) {
            return Ok(Phi::Finite(phi));
        }
    }
    Ok(optimize_barrier(&chi, derivative_order)?.optimal_phi)
}

/// Norm control for positive contractions (bound `(√((1−c)α)+√(c(1−α)))²`,
/// `c` the kept fraction) and for `[−1,1]` spectra (bound `2√(c−c²)`, `c`
/// the differentiated fraction, when the trace vanishes).
///
/// The matrix is mapped to a positive contraction `B`, `φ` is fixed at the
/// closed-form optimal barrier of the applicable bound and the soft-max
/// greedy runs on `B`. Outside a closed form's validity range the certified
/// bound is the greedy's own numeric bound.
pub fn select_low_norm(
    a: &HermitianMatrix,
    keep: usize,
) -> Result<SelectionCertificate, SubmatrixError> {
    let n = a.n();
    check_keep(n, keep)?;
    let ev = a.eigenvalues()?;
    let (lo, hi) = (ev[0], ev[n - 1]);
    let c_keep = keep as f64 / n as f64;
    let c_d = 1.0 - c_keep;
    let tr = a.tr();

    // (scale, shift) with B = scale·A + shift, plus the closed form in A's units.
    let (scale, shift, closed, formula, alpha_b) = if lo >= -SPECTRUM_TOL && hi <= 1.0 + SPECTRUM_TOL {
        let alpha = tr.clamp(0.0, 1.0);
        let closed = zd3_bound(alpha, c_keep).ok();
        (1.0, 0.0, closed, FormulaId::ContractionNorm, alpha)
    } else if lo >= -1.0 - SPECTRUM_TOL && hi <= 1.0 + SPECTRUM_TOL {
        let alpha = ((1.0 + tr) / 2.0).clamp(0.0, 1.0);
        let (closed, formula) = if tr.abs() <= TRACE_TOL {
            (zd1_bound(c_d).ok(), FormulaId::TracelessNorm)
        } else {
            (
                mrr_bound(alpha, c_d).ok().map(|v| 2.0 * v - 1.0),
                FormulaId::MaxRootMean,
            )
        };
        (0.5, 0.5, closed, formula, if tr.abs() <= TRACE_TOL { 0.5 } else { alpha })
    } else {
        return Err(SubmatrixError::SpectrumOutOfRange { min: lo, max: hi });
    };

    let b = a.affine(scale, shift);
    let b_star = closed.map(|_| mrr_optimal_barrier(alpha_b, c_d));
    let phi = choose_phi(&b, b_star, n - keep)?;
    let mut cert = smax_greedy(&b, keep, phi)?;
    let back = |x: f64| (x - shift) / scale;
    let greedy_bound = back(cert.certified_bound);
    cert.achieved_extreme = a.principal(&cert.kept_indices).lambda_max()?;
    cert.round_scores = cert.round_scores.iter().map(|&s| back(s)).collect();
    cert.greedy_bound = Some(greedy_bound);
    match closed {
        Some(v) => {
            cert.certified_bound = v;
            cert.formula = formula;
        }
        None => cert.certified_bound = greedy_bound,
    }
    Ok(cert)
}

/// Two-sided norm control: keep `⌊cn⌋` indices with small `λ_max`, then
/// `⌊c²n⌋` of those with small `λ_max` of the negation. Requires a zero
/// diagonal or zero trace and spectrum in `[−1, 1]`; `0 < c ≤ 1/2`.
pub fn select_two_sided(a: &HermitianMatrix, c: f64) -> Result<SelectionCertificate, SubmatrixError> {
    let n = a.n();
    if !(c > 0.0 && c <= 0.5) {
        return Err(SubmatrixError::CRange(c));
    }
    if a.max_abs_diagonal() > 1e-10 && a.tr().abs() > TRACE_TOL {
        return Err(SubmatrixError::NotTraceless(a.tr()));
    }
    let keep1 = floor_count(c, n);
    let keep2 = floor_count(c * c, n);
    if keep2 == 0 {
        return Err(SubmatrixError::KOutOfRange { k: keep2, n });
    }
    let stage1 = select_low_norm(a, keep1)?;
    let neg = a.principal(&stage1.kept_indices).affine(-1.0, 0.0);
    let stage2 = select_low_norm(&neg, keep2)?;
    let kept: Vec<usize> = stage2.kept_indices.iter().map(|&i| stage1.kept_indices[i]).collect();
    let mut removal = stage1.removal_trace.clone();
    removal.extend(stage2.removal_trace.iter().map(|&i| stage1.kept_indices[i]));
    let mut scores = stage1.round_scores.clone();
    scores.extend(&stage2.round_scores);
    Ok(SelectionCertificate {
        achieved_extreme: a.principal(&kept).spectral_norm()?,
        kept_indices: kept,
        certified_bound: stage1.certified_bound.max(stage2.certified_bound),
        mode: SelectionMode::TwoSided,
        formula: if stage1.formula == stage2.formula {
            stage1.formula
        } else {
            FormulaId::BarrierShift
        },
        phi_used: stage1.phi_used,
        removal_trace: removal,
        round_scores: scores,
        greedy_bound: None,
    })
}

/// Restricted invertibility: for a positive contraction with normalised
/// traces `tr(A)`, `tr(A²)`, keeps `k = ⌊cn⌋` indices, `c = δ tr(A)²/tr(A²)`,
/// with `λ_min(A_S) ≥ tr(A)(√(1−c′) − √(δ−c′))²` at `c′ = k/n`.
pub fn select_invertible(a: &HermitianMatrix, delta: f64) -> Result<SelectionCertificate, SubmatrixError> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(SubmatrixError::DeltaRange(delta));
    }
    let ev = a.eigenvalues()?;
    let (lo, hi) = (ev[0], ev[ev.len() - 1]);
    let tr = a.tr();
    if lo < -SPECTRUM_TOL || hi > 1.0 + SPECTRUM_TOL || tr <= 0.0 {
        return Err(SubmatrixError::NotPositiveContraction { min: lo, max: hi });
    }
    let c = delta * tr * tr / a.tr_sq();
    invertible_with_keep(a, delta, floor_count(c, a.n()))
}

fn invertible_with_keep(
    a: &HermitianMatrix,
    delta: f64,
    keep: usize,
) -> Result<SelectionCertificate, SubmatrixError> {
    let n = a.n();
    if keep == 0 {
        return Err(SubmatrixError::KOutOfRange { k: 0, n });
    }
    let tr = a.tr();
    let bound = bt_bound(tr, delta, keep as f64 / n as f64)?;
    if keep >= n {
        return Ok(SelectionCertificate {
            kept_indices: (0..n).collect(),
            achieved_extreme: a.lambda_min()?,
            certified_bound: bound,
            mode: SelectionMode::Invertibility,
            formula: FormulaId::RestrictedInvertibility,
            phi_used: None,
            removal_trace: Vec::new(),
            round_scores: Vec::new(),
            greedy_bound: None,
        });
    }
    // Norm control on M = I − A with its refined (α, β) profile.
    let m = a.affine(-1.0, 1.0);
    let alpha = (1.0 - tr).clamp(0.0, 1.0);
    let beta = 1.0 - 2.0 * tr + a.tr_sq();
    let c_d = 1.0 - keep as f64 / n as f64;
    let b_star = SpectralProfile::new(n, alpha, beta.clamp(alpha * alpha, alpha))
        .ok()
        .and_then(|p| refined_optimal_barrier(&p, c_d).ok());
    let phi = choose_phi(&m, b_star, n - keep)?;
    let inner = smax_greedy(&m, keep, phi)?;
    Ok(SelectionCertificate {
        achieved_extreme: a.principal(&inner.kept_indices).lambda_min()?,
        kept_indices: inner.kept_indices,
        certified_bound: bound,
        mode: SelectionMode::Invertibility,
        formula: FormulaId::RestrictedInvertibility,
        phi_used: inner.phi_used,
        removal_trace: inner.removal_trace,
        round_scores: inner.round_scores.iter().map(|s| 1.0 - s).collect(),
        greedy_bound: inner.greedy_bound.map(|g| 1.0 - g),
    })
}

/// Column restriction: keeps `⌊δ‖T‖₂⁴/‖T‖₄⁴⌋` columns whose restriction has
/// smallest singular value at least `(‖T‖₂/√m)(√(1−c) − √(δ−c))`, `c` the
/// kept fraction of the `m` columns.
pub fn select_columns(t: &RectOperator, delta: f64) -> Result<SelectionCertificate, SubmatrixError> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(SubmatrixError::DeltaRange(delta));
    }
    let m = t.cols;
    let g = t.gram();
    let top = g.lambda_max()?;
    if !(top > 0.0) {
        return Err(SubmatrixError::ZeroOperator);
    }
    let tr_g = g.tr() * m as f64;
    let tr_g2 = g.tr_sq() * m as f64;
    let keep = floor_count(delta * tr_g * tr_g / tr_g2, 1).min(m);
    let normalized = g.affine(1.0 / top, 0.0);
    let inner = invertible_with_keep(&normalized, delta, keep)?;
    let c = keep as f64 / m as f64;
    let bound = t.frobenius() / (m as f64).sqrt() * ((1.0 - c).sqrt() - (delta - c).max(0.0).sqrt());
    let achieved = g.principal(&inner.kept_indices).lambda_min()?.max(0.0).sqrt();
    Ok(SelectionCertificate {
        kept_indices: inner.kept_indices,
        achieved_extreme: achieved,
        certified_bound: bound,
        mode: SelectionMode::ColumnSelect,
        formula: FormulaId::ColumnRestriction,
        phi_used: inner.phi_used,
        removal_trace: inner.removal_trace,
        round_scores: inner.round_scores,
        greedy_bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn maxroot_greedy_on_diagonal() {
        let a = HermitianMatrix::diag(&[1.0, 2.0, 3.0]).unwrap();
        let cert = select_maxroot_greedy(&a, 2).unwrap();
        assert_eq!(cert.kept_indices, vec![0, 1]);
        close(cert.achieved_extreme, 2.0, 1e-12);
        close(cert.certified_bound, 2.0 + 1.0 / 3f64.sqrt(), 1e-10);
        assert!(cert.holds());
        assert!(select_maxroot_greedy(&a, 3).is_err());
        assert!(select_maxroot_greedy(&a, 0).is_err());
    }

    #[test]
    fn identity_is_trivial() {
        let a = HermitianMatrix::identity(5).unwrap();
        let cert = select_maxroot_greedy(&a, 3).unwrap();
        close(cert.achieved_extreme, 1.0, 1e-12);
        close(cert.certified_bound, 1.0, 1e-9);
    }

    #[test]
    fn smax_greedy_on_zero_matrix_removes_smallest_indices() {
        let a = HermitianMatrix::diag(&[0.0; 5]).unwrap();
        let cert = select_smax_greedy(&a, 2, 4.0).unwrap();
        assert_eq!(cert.removal_trace, vec![0, 1, 2]);
        assert_eq!(cert.kept_indices, vec![3, 4]);
        close(cert.achieved_extreme, 0.0, 1e-15);
        close(cert.certified_bound, 5.0 / 4.0 - 3.0 / 4.0, 1e-9);
        assert!(select_smax_greedy(&a, 2, 0.0).is_err());
    }

    #[test]
    fn smax_greedy_drops_the_large_diagonal() {
        let a = HermitianMatrix::diag(&[0.0, 0.0, 1.0, 1.0]).unwrap();
        let chi = charpoly_as_roots(&a).unwrap();
        let phi = optimize_barrier(&chi, 2).unwrap().optimal_phi.finite().unwrap();
        let cert = select_smax_greedy(&a, 2, phi).unwrap();
        assert_eq!(cert.kept_indices, vec![0, 1]);
        close(cert.achieved_extreme, 0.0, 1e-12);
        assert!(cert.certified_bound <= 1.0 + 1e-6);
        for w in cert.round_scores.windows(2) {
            assert!(w[1] <= w[0] - 1.0 / phi + 1e-8);
        }
    }

    #[test]
    fn low_norm_endpoints() {
        let m = 4;
        let mut d = vec![1.0; m];
        d.extend(vec![-1.0; m]);
        let a = HermitianMatrix::diag(&d).unwrap();
        let cert = select_low_norm(&a, m).unwrap();
        close(cert.certified_bound, 1.0, 1e-12);
        close(cert.achieved_extreme, -1.0, 1e-12);
        assert!(cert.holds());

        let mut rows = vec![vec![0.0; 2 * m]; 2 * m];
        for i in 0..m {
            rows[i][m + i] = 1.0;
            rows[m + i][i] = 1.0;
        }
        let cb = HermitianMatrix::from_rows(&rows).unwrap();
        let cert = select_low_norm(&cb, m).unwrap();
        assert!(cert.achieved_extreme <= 1.0 + 1e-12);
        close(cert.certified_bound, 1.0, 1e-12);
        let cert = select_low_norm(&cb, m + 1).unwrap();
        close(cert.achieved_extreme, 1.0, 1e-12);
        assert!(cert.holds());
    }

    #[test]
    fn low_norm_rejects_wide_spectra() {
        let a = HermitianMatrix::diag(&[2.0, 0.0, -1.0]).unwrap();
        assert!(matches!(select_low_norm(&a, 1), Err(SubmatrixError::SpectrumOutOfRange { .. })));
    }

    #[test]
    fn two_sided_examples() {
        let a = HermitianMatrix::diag(&[0.0; 8]).unwrap();
        let cert = select_two_sided(&a, 0.5).unwrap();
        assert_eq!(cert.kept_indices.len(), 2);
        assert_eq!(cert.achieved_extreme, 0.0);

        let mut d = vec![1.0; 16];
        d.extend(vec![-1.0; 16]);
        let a = HermitianMatrix::diag(&d).unwrap();
        let cert = select_two_sided(&a, 0.5).unwrap();
        assert_eq!(cert.kept_indices.len(), 8);
        assert!(cert.achieved_extreme <= 1.0 + 1e-12);
        assert!(select_two_sided(&a, 0.6).is_err());
    }

    #[test]
    fn invertible_identity_and_projection() {
        let a = HermitianMatrix::identity(8).unwrap();
        let cert = select_invertible(&a, 0.5).unwrap();
        assert_eq!(cert.kept_indices.len(), 4);
        close(cert.certified_bound, 0.5, 1e-12);
        close(cert.achieved_extreme, 1.0, 1e-12);

        let mut d = vec![1.0; 8];
        d.extend(vec![0.0; 8]);
        let p = HermitianMatrix::diag(&d).unwrap();
        let cert = select_invertible(&p, 0.5).unwrap();
        assert_eq!(cert.kept_indices.len(), 4);
        close(cert.certified_bound, 0.06698729810778065, 1e-12);
        close(cert.achieved_extreme, 1.0, 1e-12);
        assert!(cert.holds());

        assert!(select_invertible(&p, 0.0).is_err());
        let bad = HermitianMatrix::diag(&[1.5, 0.2]).unwrap();
        assert!(matches!(select_invertible(&bad, 0.5), Err(SubmatrixError::NotPositiveContraction { .. })));
    }

    #[test]
    fn columns_identity_and_orthogonal() {
        let m = 6;
        let mut eye = vec![0.0; m * m];
        for i in 0..m {
            eye[i * m + i] = 1.0;
        }
        let t = RectOperator::from_real(m, m, &eye).unwrap();
        let cert = select_columns(&t, 1.0).unwrap();
        assert_eq!(cert.kept_indices.len(), m);
        close(cert.achieved_extreme, 1.0, 1e-12);
        close(cert.certified_bound, 0.0, 1e-12);

        // Orthogonal columns of norm 2.
        let scaled: Vec<f64> = eye.iter().map(|x| 2.0 * x).collect();
        let t = RectOperator::from_real(m, m, &scaled).unwrap();
        let cert = select_columns(&t, 0.5).unwrap();
        assert_eq!(cert.kept_indices.len(), m / 2);
        close(cert.achieved_extreme, 2.0, 1e-12);
        assert!(cert.certified_bound > 0.0 && cert.holds());

        let zero = RectOperator::from_real(2, 2, &[0.0; 4]).unwrap();
        assert_eq!(select_columns(&zero, 0.5), Err(SubmatrixError::ZeroOperator));
    }
}
