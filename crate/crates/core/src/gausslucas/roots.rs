//! Aberth–Ehrlich simultaneous root finding with multiple-root cleanup.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ComplexPoly, GaussLucasError};

const MAX_SWEEPS: usize = 500;
const INIT_SEED: u64 = 0x5eed_a6e7;
/// Backward-error residual a returned root set must meet.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;

/// Roots of a polynomial with their worst relative backward error
/// `max |p(z)| / Σ|aₗ||z|ˡ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residual: f64,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn mean(&self) -> Complex64 {
        self.roots.iter().sum::<Complex64>() / self.roots.len() as f64
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `(p(z), p′(z), Σ|aₗ||z|ˡ)` by Horner's rule.
fn eval_with_scale(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let az = z.norm();
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        scale = scale * az + a.norm();
    }
    (p, dp, scale)
}

fn backward_error(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _, s) = eval_with_scale(coeffs, z);
    if s == 0.0 {
        0.0
    } else {
        p.norm() / s
    }
}

/// Coefficients of `p(z + shift)`.
fn taylor_shift(coeffs: &[Complex64], shift: Complex64) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = c[j + 1];
            c[j] += shift * next;
        }
    }
    c
}

/// All roots of `p`, deterministic for identical coefficients.
pub fn complex_roots(p: &ComplexPoly) -> Result<RootSet, GaussLucasError> {
    let coeffs = p.coeffs();
    let n = p.degree();
    if n == 0 {
        return Err(GaussLucasError::DegreeTooSmall { degree: 0, needed: 1 });
    }
    let lead = coeffs[n];
    let center = -coeffs[n - 1] / (lead * n as f64);
    let shifted = taylor_shift(coeffs, center);
    // Fujiwara-type radius of the centred polynomial.
    let radius = (1..=n)
        .map(|k| (shifted[n - k] / lead).norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    if radius == 0.0 {
        return Ok(RootSet {
            roots: vec![center; n],
            residual: 0.0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(INIT_SEED);
    let offset: f64 = rng.random_range(0.1..0.6);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let jitter: f64 = rng.random_range(-0.05..0.05);
            let angle = std::f64::consts::TAU * (j as f64 + 0.5 + jitter) / n as f64 + offset;
            center + Complex64::from_polar(radius * (1.0 + jitter), angle)
        })
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;

    for _ in 0..MAX_SWEEPS {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pz, dpz, s) = eval_with_scale(coeffs, z[i]);
            if pz.norm() <= 4.0 * n as f64 * eps * s {
                done[i] = true;
                continue;
            }
            all = false;
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
            } else if !ratio.is_finite() {
                // Critical point hit exactly: nudge off it.
                z[i] += Complex64::new(1e-8 * radius, 1e-8 * radius);
            }
        }
        if all {
            break;
        }
    }

    refine_clusters(coeffs, &mut z, radius);
    polish(coeffs, &mut z);

    let residual = z
        .iter()
        .map(|&r| backward_error(coeffs, r))
        .fold(0.0, f64::max);
    if !(residual <= ROOT_RESIDUAL_TOL) {
        return Err(GaussLucasError::RootConvergenceFailure {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }
    Ok(RootSet { roots: z, residual })
}

/// Single-linkage groups of indices whose members are chained by gaps `≤ t`.
fn linkage_groups(z: &[Complex64], live: &[bool], t: f64) -> Vec<Vec<usize>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut i = i;
        while parent[i] != r {
            let next = parent[i];
            parent[i] = r;
            i = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if live[i] && live[j] && (z[i] - z[j]).norm() <= t {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        if live[i] {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
    }
    groups.into_values().filter(|g| g.len() > 1).collect()
}

/// Coefficients of the `k`-th derivative.
fn derive(coeffs: &[Complex64], k: usize) -> Vec<Complex64> {
    (k..coeffs.len())
        .map(|l| {
            let f: f64 = ((l - k + 1)..=l).map(|v| v as f64).product();
            coeffs[l] * f
        })
        .collect()
}

/// Replaces each cluster that is a genuine `j`-fold root by a single point
/// found as the simple root of `p⁽ʲ⁻¹⁾` near the cluster centroid.
fn refine_clusters(coeffs: &[Complex64], z: &mut [Complex64], radius: f64) {
    let n = z.len();
    let mut live = vec![true; n];
    let mut t = 0.25 * radius;
    while t > 1e-9 * radius {
        for group in linkage_groups(z, &live, t) {
            let j = group.len();
            let centroid = group.iter().map(|&i| z[i]).sum::<Complex64>() / j as f64;
            let d_lo = derive(coeffs, j - 1);
            let mut w = centroid;
            for _ in 0..60 {
                let (f, df, _) = eval_with_scale(&d_lo, w);
                let step = f / df;
                if !step.is_finite() {
                    break;
                }
                w -= step;
                if step.norm() <= 1e-15 * w.norm().max(1e-300) {
                    break;
                }
            }
            if (w - centroid).norm() > t {
                continue;
            }
            let multiple = (0..j).all(|i| {
                let d = derive(coeffs, i);
                backward_error(&d, w) <= 1e-10
            });
            if multiple {
                for &i in &group {
                    z[i] = w;
                    live[i] = false;
                }
            }
        }
        t *= 0.1;
    }
}

/// Newton steps on isolated roots, kept only when they lower the residual.
fn polish(coeffs: &[Complex64], z: &mut [Complex64]) {
    for i in 0..z.len() {
        if z.iter().enumerate().any(|(j, &w)| j != i && w == z[i]) {
            continue;
        }
        for _ in 0..3 {
            let (p, dp, _) = eval_with_scale(coeffs, z[i]);
            let cand = z[i] - p / dp;
            if cand.is_finite() && backward_error(coeffs, cand) < backward_error(coeffs, z[i]) {
                z[i] = cand;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn quadratic_and_cubic() {
        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let r = sorted(complex_roots(&p).unwrap().roots);
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-12);

        let p = ComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0]).unwrap();
        let r = complex_roots(&p).unwrap();
        for w in [c(1.0, 0.0), c(-0.5, 0.75f64.sqrt()), c(-0.5, -(0.75f64.sqrt()))] {
            assert!(r.roots.iter().any(|z| (z - w).norm() < 1e-12), "missing {w}");
        }
    }

    #[test]
    fn quadruple_root_symmetric_functions() {
        // (z − 2)⁴ = z⁴ − 8z³ + 24z² − 32z + 16
        let p = ComplexPoly::from_real(&[16.0, -32.0, 24.0, -8.0, 1.0]).unwrap();
        let r = complex_roots(&p).unwrap();
        for z in &r.roots {
            assert!((z - c(2.0, 0.0)).norm() < 1e-2);
        }
        let sum: Complex64 = r.roots.iter().sum();
        let prod: Complex64 = r.roots.iter().product();
        assert!((sum - c(8.0, 0.0)).norm() < 1e-9);
        assert!((prod - c(16.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn high_multiplicity_clusters_snap() {
        let p = ComplexPoly::from_roots(&vec![c(1.0, 0.0); 12]);
        let mut q = p.clone();
        for w in [c(-0.5, 0.75f64.sqrt()), c(-0.5, -(0.75f64.sqrt()))] {
            q = q.mul(&ComplexPoly::from_roots(&vec![w; 12]));
        }
        let r = complex_roots(&q).unwrap();
        for z in &r.roots {
            assert!((z.norm() - 1.0).abs() < 1e-6, "{z}");
        }
    }

    #[test]
    fn monomial_has_centred_roots() {
        let r = complex_roots(&ComplexPoly::from_roots(&vec![c(0.0, 0.0); 6])).unwrap();
        assert!(r.roots.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn deterministic() {
        let p = ComplexPoly::new(vec![c(0.3, -1.0), c(2.0, 0.5), c(-1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(complex_roots(&p).unwrap(), complex_roots(&p).unwrap());
    }
}
