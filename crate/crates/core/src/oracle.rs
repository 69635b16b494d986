//! Brute-force validators for small instances: characteristic polynomial
//! coefficients, exhaustive subset search, coefficient-space derivatives and
//! a grid search for the largest potential under moment constraints.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::submatrix::{HermitianMatrix, SubmatrixError};

pub const CHARPOLY_MAX_N: usize = 16;
pub const MAX_SUBSETS: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("size {n} exceeds the oracle limit {max}")]
    SizeTooLarge { n: usize, max: usize },
    #[error("{0} subsets exceed the enumeration limit")]
    TooManySubsets(u64),
    #[error("subset size {k} outside [1, {n}]")]
    KOutOfRange { k: usize, n: usize },
    #[error("characteristic polynomial has imaginary residue {0:e}")]
    ImaginaryResidue(f64),
    #[error("derivative order {k} must be smaller than the degree {degree}")]
    OrderTooLarge { k: usize, degree: usize },
    #[error("barrier {0} must exceed 1")]
    BarrierNotRightOfOne(f64),
    #[error("grid search limited to n ≤ 6 and at most 50 steps")]
    GridTooLarge,
    #[error("no grid point satisfies the moment constraints")]
    NoFeasiblePoint,
    #[error(transparent)]
    Matrix(#[from] SubmatrixError),
}

/// Real polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffPoly {
    pub coeffs: Vec<f64>,
}

impl CoeffPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative(&self) -> Self {
        let coeffs = if self.coeffs.len() <= 1 {
            vec![0.0]
        } else {
            (1..self.coeffs.len()).map(|l| l as f64 * self.coeffs[l]).collect()
        };
        Self { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a)
    }

}

/// Faddeev–LeVerrier on the complex matrix; real parts of the coefficients
/// of `det(xI − A)`, constant term first, plus the largest imaginary
/// residue relative to the coefficient scale.
fn faddeev_leverrier_full(a: &HermitianMatrix) -> (Vec<f64>, f64) {
    let n = a.n();
    let zero = Complex64::new(0.0, 0.0);
    let mut c = vec![zero; n + 1];
    c[n] = Complex64::new(1.0, 0.0);
    let mut m = vec![zero; n * n];
    let mut am = vec![zero; n * n];
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{n−k+1} I
        for i in 0..n {
            for j in 0..n {
                let mut s = zero;
                for l in 0..n {
                    s += a.get(i, l) * m[l * n + j];
                }
                am[i * n + j] = s;
            }
        }
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = am[i * n + j];
            }
            m[i * n + i] += c[n - k + 1];
        }
        let tr: Complex64 = (0..n)
            .map(|i| (0..n).map(|l| a.get(i, l) * m[l * n + i]).sum::<Complex64>())
            .sum();
        c[n - k] = -tr / k as f64;
    }
    let scale = c.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let imag = c.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / scale;
    (c.iter().map(|z| z.re).collect(), imag)
}

/// Coefficients of `det(xI − A)` without a size limit.
pub(crate) fn faddeev_leverrier(a: &HermitianMatrix) -> Vec<f64> {
    faddeev_leverrier_full(a).0
}

/// `det(xI − A)` for `n ≤ 16`.
pub fn charpoly_coeffs(a: &HermitianMatrix) -> Result<CoeffPoly, OracleError> {
    if a.n() > CHARPOLY_MAX_N {
        return Err(OracleError::SizeTooLarge {
            n: a.n(),
            max: CHARPOLY_MAX_N,
        });
    }
    let (coeffs, imag) = faddeev_leverrier_full(a);
    if imag > 1e-10 {
        return Err(OracleError::ImaginaryResidue(imag));
    }
    Ok(CoeffPoly { coeffs })
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Exhaustive minimum of `λ_max(A_S)` over all `|S| = k`; ties go to the
/// lexicographically first subset.
pub fn brute_force_best_subset(
    a: &HermitianMatrix,
    k: usize,
) -> Result<(Vec<usize>, f64), OracleError> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(OracleError::KOutOfRange { k, n });
    }
    let count = binomial(n, k);
    if count > MAX_SUBSETS {
        return Err(OracleError::TooManySubsets(count));
    }
    let subsets = combinations(n, k);
    let values: Vec<f64> = subsets
        .par_iter()
        .map(|s| a.principal(s).lambda_max())
        .collect::<Result<_, _>>()?;
    let (best, &value) = values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1).then(x.0.cmp(&y.0)))
        .expect("at least one subset");
    Ok((subsets[best].clone(), value))
}

/// Roots of a real-rooted polynomial, isolated between consecutive critical
/// points (found recursively) by bisection with Newton polish.
fn real_roots(p: &CoeffPoly) -> Vec<f64> {
    let d = p.degree();
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-p.coeffs[0] / p.coeffs[1]];
    }
    let crit = real_roots(&p.derivative());
    let lead = p.coeffs[d];
    let cauchy = 1.0 + p.coeffs[..d].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let knots_interior = |x: f64| x != cauchy && x != -cauchy;
    let mut knots = vec![-cauchy];
    knots.extend(&crit);
    knots.push(cauchy);
    let dp = p.derivative();
    knots
        .windows(2)
        .map(|w| {
            let (l, r) = (w[0], w[1]);
            let (fl, fr) = (p.eval(l), p.eval(r));
            if fr == 0.0 && knots_interior(r) {
                return r;
            }
            if fl == 0.0 && knots_interior(l) {
                return l;
            }
            if fl.signum() == fr.signum() {
                // No clean sign change: a numerically double root.
                return if fl.abs() < fr.abs() { l } else { r };
            }
            let (mut lo, mut hi) = (l, r);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if p.eval(mid).signum() == fl.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let mut x = 0.5 * (lo + hi);
            for _ in 0..3 {
                let step = p.eval(x) / dp.eval(x);
                let next = x - step;
                if !next.is_finite() || next < l || next > r || p.eval(next).abs() >= p.eval(x).abs() {
                    break;
                }
                x = next;
            }
            x
        })
        .collect()
}

/// Roots of the `k`-th coefficient derivative of a real-rooted polynomial,
/// ascending.
pub fn coefficient_derivative_roots(p: &CoeffPoly, k: usize) -> Result<Vec<f64>, OracleError> {
    let degree = p.degree();
    if degree > CHARPOLY_MAX_N {
        return Err(OracleError::SizeTooLarge {
            n: degree,
            max: CHARPOLY_MAX_N,
        });
    }
    if k >= degree {
        return Err(OracleError::OrderTooLarge { k, degree });
    }
    let mut q = p.clone();
    for _ in 0..k {
        q = q.derivative();
    }
    let mut r = real_roots(&q);
    r.sort_by(f64::total_cmp);
    Ok(r)
}

/// `5n / (g (b − 1)²)`: what relaxing the moment constraints to the grid can
/// add to the potential.
pub fn grid_slack(n: usize, grid_steps: usize, b: f64) -> f64 {
    5.0 * n as f64 / (grid_steps as f64 * (b - 1.0).powi(2))
}

/// Largest `Σ 1/(b − λᵢ)` over `λ ∈ {0, 1/g, …, 1}ⁿ` with
/// `|Σλ − nα| ≤ 1.5/g` and `|Σλ² − nβ| ≤ 3/g`.
pub fn grid_search_potential(
    alpha: f64,
    beta: f64,
    b: f64,
    n: usize,
    grid_steps: usize,
) -> Result<f64, OracleError> {
    if n == 0 || n > 6 || grid_steps == 0 || grid_steps > 50 {
        return Err(OracleError::GridTooLarge);
    }
    if !(b > 1.0) {
        return Err(OracleError::BarrierNotRightOfOne(b));
    }
    let g = grid_steps as f64;
    let (s1, s2) = (n as f64 * alpha, n as f64 * beta);
    let mut best = f64::NEG_INFINITY;
    // Nondecreasing tuples suffice: the objective and constraints are symmetric.
    let mut idx = vec![0usize; n];
    loop {
        let (mut a, mut q, mut pot) = (0.0, 0.0, 0.0);
        for &i in &idx {
            let l = i as f64 / g;
            a += l;
            q += l * l;
            pot += 1.0 / (b - l);
        }
        if (a - s1).abs() <= 1.5 / g && (q - s2).abs() <= 3.0 / g {
            best = best.max(pot);
        }
        let Some(pos) = (0..n).rev().find(|&p| idx[p] < grid_steps) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..n {
            idx[j] = idx[pos];
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(OracleError::NoFeasiblePoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_examples() {
        let a = HermitianMatrix::diag(&[1.0, 2.0]).unwrap();
        assert_eq!(charpoly_coeffs(&a).unwrap().coeffs, vec![2.0, -3.0, 1.0]);
        let a = HermitianMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(charpoly_coeffs(&a).unwrap().coeffs, vec![-1.0, 0.0, 1.0]);
        assert!(charpoly_coeffs(&HermitianMatrix::identity(17).unwrap()).is_err());
    }

    #[test]
    fn subsets_examples() {
        let a = HermitianMatrix::diag(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(brute_force_best_subset(&a, 2).unwrap(), (vec![0, 1], 2.0));
        let i = HermitianMatrix::identity(5).unwrap();
        let (s, v) = brute_force_best_subset(&i, 3).unwrap();
        assert_eq!(s, vec![0, 1, 2]);
        assert!((v - 1.0).abs() < 1e-14);
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(binomial(40, 20), 137_846_528_820);
        assert!(matches!(
            brute_force_best_subset(&HermitianMatrix::identity(40).unwrap(), 20),
            Err(OracleError::TooManySubsets(_))
        ));
    }

    #[test]
    fn coefficient_derivative_examples() {
        // (x − 1)(x − 2)(x − 3) = x³ − 6x² + 11x − 6
        let p = CoeffPoly { coeffs: vec![-6.0, 11.0, -6.0, 1.0] };
        let r = coefficient_derivative_roots(&p, 1).unwrap();
        assert!((r[0] - (2.0 - 1.0 / 3f64.sqrt())).abs() < 1e-12);
        assert!((r[1] - (2.0 + 1.0 / 3f64.sqrt())).abs() < 1e-12);
        // (x² − 1)² = x⁴ − 2x² + 1; second derivative 12x² − 4.
        let q = CoeffPoly { coeffs: vec![1.0, 0.0, -2.0, 0.0, 1.0] };
        let r = coefficient_derivative_roots(&q, 2).unwrap();
        assert!((r[1] - 1.0 / 3f64.sqrt()).abs() < 1e-12 && (r[0] + r[1]).abs() < 1e-12);
        // Double roots survive isolation.
        let r = coefficient_derivative_roots(&q, 0).unwrap();
        for (x, y) in r.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((x - y).abs() < 1e-7, "{r:?}");
        }
        let x5 = CoeffPoly { coeffs: vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0] };
        assert_eq!(coefficient_derivative_roots(&x5, 3).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn grid_examples() {
        // β = α² with α on the grid: every λ = α.
        let v = grid_search_potential(0.5, 0.25, 2.0, 4, 40).unwrap();
        assert!(v >= 4.0 / 1.5 - 1e-12);
        // All roots at 0 or 1.
        let v = grid_search_potential(0.5, 0.5, 2.0, 4, 40).unwrap();
        assert!((v - 3.0).abs() < 0.1);
        let v = grid_search_potential(0.5, 0.375, 2.0, 4, 40).unwrap();
        let refined = 4.0 * (1.0 / 3.0 + (2.0 / 3.0) / 1.75);
        assert!(v <= refined + grid_slack(4, 40, 2.0));
        assert!(grid_search_potential(0.5, 0.5, 1.0, 4, 40).is_err());
        assert!(grid_search_potential(0.5, 0.5, 2.0, 7, 40).is_err());
    }
}
