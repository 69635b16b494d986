//! Monic real-rooted polynomials held as sorted root multisets.
//!
//! Everything here works in root space. Differentiation locates each root of
//! `p′` by refining a sign change of `p′/p = Σ mᵢ/(x − vᵢ)` between two
//! consecutive distinct roots, so repeated derivatives of degree-100
//! polynomials stay as accurate as the first one. Coefficients only appear at
//! the I/O boundary.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerance::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealRootError {
    #[error("a real-rooted polynomial needs at least one root")]
    DegreeTooSmall,
    #[error("root {0} is not finite")]
    NonFiniteRoot(f64),
    #[error("barrier {barrier} is not strictly right of the largest root {max_root}")]
    BarrierNotRightOfRoots { barrier: f64, max_root: f64 },
    #[error("potential level must be positive and finite, got {0}")]
    NonPositivePhi(f64),
    #[error("derivative order {k} must be smaller than the degree {degree}")]
    DerivativeOrderTooLarge { k: usize, degree: usize },
    #[error("polynomial is not real-rooted (largest imaginary part {max_imag:e})")]
    NotRealRooted { max_imag: f64 },
    #[error("coefficient input rejected: {0}")]
    BadCoefficients(String),
}

/// Potential level used by the soft maximum. `Infinite` is an explicit
/// sentinel; `smax` at that level is the largest root itself.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phi {
    Finite(f64),
    Infinite,
}

impl Phi {
    pub fn finite(self) -> Option<f64> {
        match self {
            Phi::Finite(v) => Some(v),
            Phi::Infinite => None,
        }
    }

    /// `k / φ`, which is zero at the infinite sentinel.
    pub fn shift(self, k: usize) -> f64 {
        match self {
            Phi::Finite(v) => k as f64 / v,
            Phi::Infinite => 0.0,
        }
    }
}

impl From<f64> for Phi {
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            Phi::Infinite
        } else {
            Phi::Finite(v)
        }
    }
}

/// A barrier `b` right of every root together with its potential level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub phi: Phi,
    pub barrier: f64,
}

/// Monic real-rooted polynomial `∏ (x − λᵢ)`, stored as its ascending roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealRootedPoly {
    roots: Vec<f64>,
}

/// Accepted JSON spellings: `{"roots":[...]}` or `{"coeffs":[c0,...,cn]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum PolyInput {
    Roots { roots: Vec<f64> },
    Coeffs { coeffs: Vec<f64> },
}

impl<'de> Deserialize<'de> for RealRootedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let input = PolyInput::deserialize(d)?;
        match input {
            PolyInput::Roots { roots } => RealRootedPoly::from_roots(roots),
            PolyInput::Coeffs { coeffs } => RealRootedPoly::from_coeffs(&coeffs),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl RealRootedPoly {
    pub fn from_roots(mut roots: Vec<f64>) -> Result<Self, RealRootError> {
        if roots.is_empty() {
            return Err(RealRootError::DegreeTooSmall);
        }
        if let Some(&bad) = roots.iter().find(|r| !r.is_finite()) {
            return Err(RealRootError::NonFiniteRoot(bad));
        }
        roots.sort_by(f64::total_cmp);
        Ok(Self { roots })
    }

    /// `xⁿ`.
    pub fn monomial(n: usize) -> Result<Self, RealRootError> {
        Self::from_roots(vec![0.0; n])
    }

    /// Converts real coefficients (constant term first) by finding complex
    /// roots and requiring every imaginary part to vanish to `1e-6` relative
    /// to the root scale.
    pub fn from_coeffs(coeffs: &[f64]) -> Result<Self, RealRootError> {
        let poly = crate::gausslucas::ComplexPoly::from_real(coeffs)
            .map_err(|e| RealRootError::BadCoefficients(e.to_string()))?;
        let rs = crate::gausslucas::complex_roots(&poly)
            .map_err(|e| RealRootError::BadCoefficients(e.to_string()))?;
        let scale = rs.roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let max_imag = rs.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if max_imag > 1e-6 * scale {
            return Err(RealRootError::NotRealRooted { max_imag });
        }
        Self::from_roots(rs.roots.iter().map(|z| z.re).collect())
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn into_roots(self) -> Vec<f64> {
        self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn max_root(&self) -> f64 {
        self.roots[self.roots.len() - 1]
    }

    pub fn min_root(&self) -> f64 {
        self.roots[0]
    }

    /// `max_root − min_root`.
    pub fn span(&self) -> f64 {
        self.max_root() - self.min_root()
    }

    pub fn mean(&self) -> f64 {
        self.roots.iter().sum::<f64>() / self.degree() as f64
    }

    /// Roots of `p(x)` mapped through `λ ↦ scale·λ + shift`, re-sorted.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        let mut roots: Vec<f64> = self.roots.iter().map(|r| scale * r + shift).collect();
        roots.sort_by(f64::total_cmp);
        Self { roots }
    }

    /// Coefficients of the monic polynomial, constant term first.
    pub fn to_coeffs(&self) -> Vec<f64> {
        let mut c = vec![1.0];
        for &r in &self.roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        c
    }

    /// `Φ_p(b) = Σ 1/(b − λᵢ)`.
    pub fn potential(&self, b: f64) -> Result<f64, RealRootError> {
        self.potential_with(b, &Tolerances::default())
    }

    pub fn potential_with(&self, b: f64, tol: &Tolerances) -> Result<f64, RealRootError> {
        let max_root = self.max_root();
        if !(b - max_root > tol.gap) {
            return Err(RealRootError::BarrierNotRightOfRoots {
                barrier: b,
                max_root,
            });
        }
        Ok(self.roots.iter().map(|l| 1.0 / (b - l)).sum())
    }

    /// The barrier at which the potential equals `phi`.
    pub fn smax(&self, phi: Phi) -> Result<f64, RealRootError> {
        self.smax_with(phi, &Tolerances::default())
    }

    pub fn smax_with(&self, phi: Phi, tol: &Tolerances) -> Result<f64, RealRootError> {
        let phi = match phi {
            Phi::Infinite => return Ok(self.max_root()),
            Phi::Finite(v) if v > 0.0 && v.is_finite() => v,
            Phi::Finite(v) => return Err(RealRootError::NonPositivePhi(v)),
        };
        let top = self.max_root();
        // Work in u = b − λ_max so large φ keeps relative precision in u.
        let gaps: Vec<f64> = self.roots.iter().map(|l| top - l).collect();
        let eval = |u: f64| -> (f64, f64) {
            let mut f = 0.0;
            let mut df = 0.0;
            for g in &gaps {
                let inv = 1.0 / (u + g);
                f += inv;
                df -= inv * inv;
            }
            (f - phi, df)
        };
        // 1/u ≤ Φ ≤ n/u brackets the root in [1/φ, n/φ].
        let mut lo = 1.0 / phi;
        let mut hi = self.degree() as f64 / phi;
        let mut u = hi;
        for _ in 0..300 {
            let (g, dg) = eval(u);
            if g.abs() <= tol.phi * phi {
                return Ok(top + u);
            }
            if g > 0.0 {
                lo = u;
            } else {
                hi = u;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
            let step = u - g / dg;
            u = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        }
        Ok(top + u)
    }

    /// Roots of `p′` (degree `n − 1`).
    pub fn derivative(&self) -> Result<Self, RealRootError> {
        self.derivative_with(&Tolerances::default())
    }

    pub fn derivative_with(&self, tol: &Tolerances) -> Result<Self, RealRootError> {
        if self.degree() < 2 {
            return Err(RealRootError::DegreeTooSmall);
        }
        let clusters = cluster_roots(&self.roots, tol.cluster);
        let mut out = Vec::with_capacity(self.degree() - 1);
        for (i, &(v, m)) in clusters.iter().enumerate() {
            out.extend(std::iter::repeat_n(v, m - 1));
            if let Some(&(next, _)) = clusters.get(i + 1) {
                out.push(log_derivative_zero(&clusters, v, next, tol.root));
            }
        }
        out.sort_by(f64::total_cmp);
        Ok(Self { roots: out })
    }

    /// `k`-fold derivative; `k = 0` returns a copy.
    pub fn nth_derivative(&self, k: usize) -> Result<Self, RealRootError> {
        self.nth_derivative_with(k, &Tolerances::default())
    }

    pub fn nth_derivative_with(&self, k: usize, tol: &Tolerances) -> Result<Self, RealRootError> {
        if k >= self.degree() {
            return Err(RealRootError::DerivativeOrderTooLarge {
                k,
                degree: self.degree(),
            });
        }
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative_with(tol)?;
        }
        Ok(p)
    }
}

/// Groups sorted roots into `(value, multiplicity)`; neighbours within
/// `rel · max(1, |λ|)` join the same cluster, whose value is the member mean.
pub(crate) fn cluster_roots(sorted: &[f64], rel: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        let split = i == sorted.len()
            || sorted[i] - sorted[i - 1] > rel * sorted[i - 1].abs().max(1.0);
        if split {
            let members = &sorted[start..i];
            let mean = members.iter().sum::<f64>() / members.len() as f64;
            out.push((mean, members.len()));
            start = i;
        }
    }
    out
}

/// Zero of `Σ mᵢ/(x − vᵢ)` in the open interval `(a, b)` between two adjacent
/// cluster values. The function falls from +∞ to −∞ there, so a safeguarded
/// Newton iteration on the bracket always converges.
fn log_derivative_zero(clusters: &[(f64, usize)], a: f64, b: f64, tol: f64) -> f64 {
    let eval = |x: f64| -> (f64, f64) {
        let mut f = 0.0;
        let mut df = 0.0;
        for &(v, m) in clusters {
            let inv = 1.0 / (x - v);
            f += m as f64 * inv;
            df -= m as f64 * inv * inv;
        }
        (f, df)
    };
    let (mut lo, mut hi) = (a, b);
    let mut x = 0.5 * (a + b);
    for _ in 0..400 {
        let (f, df) = eval(x);
        if f == 0.0 || !f.is_finite() {
            return x;
        }
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let width_tol = tol * x.abs().max(1.0);
        let newton = x - f / df;
        if hi - lo <= width_tol {
            return if newton >= lo && newton <= hi { newton } else { 0.5 * (lo + hi) };
        }
        if newton > lo && newton < hi {
            if (newton - x).abs() <= 0.25 * width_tol {
                return newton;
            }
            x = newton;
        } else {
            x = 0.5 * (lo + hi);
        }
    }
    x
}
