use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SubmatrixError;

const HERMITIAN_TOL: f64 = 1e-12;
const QL_ITERATIONS: usize = 50;

/// Dense `n × n` complex Hermitian matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates `entries[i][j] = conj(entries[j][i])` within `1e-12` and
    /// stores the exactly Hermitian average.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self, SubmatrixError> {
        if n == 0 {
            return Err(SubmatrixError::Empty);
        }
        if data.len() != n * n {
            return Err(SubmatrixError::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.is_finite()) {
            return Err(SubmatrixError::NonFinite);
        }
        let mut out = data.clone();
        for i in 0..n {
            for j in i..n {
                let (a, b) = (data[i * n + j], data[j * n + i].conj());
                let gap = (a - b).norm();
                if gap > HERMITIAN_TOL {
                    return Err(SubmatrixError::NotHermitian { i, j, gap });
                }
                let m = 0.5 * (a + b);
                out[i * n + j] = m;
                out[j * n + i] = m.conj();
            }
        }
        Ok(Self { n, data: out })
    }

    pub fn from_real(n: usize, data: &[f64]) -> Result<Self, SubmatrixError> {
        Self::new(n, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SubmatrixError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SubmatrixError::DimensionMismatch {
                expected: n,
                got: rows.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0),
            });
        }
        Self::from_real(n, &rows.concat())
    }

    pub fn diag(d: &[f64]) -> Result<Self, SubmatrixError> {
        let n = d.len();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &x) in d.iter().enumerate() {
            data[i * n + i] = Complex64::new(x, 0.0);
        }
        Self::new(n, data)
    }

    pub fn identity(n: usize) -> Result<Self, SubmatrixError> {
        Self::diag(&vec![1.0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// `A_S`: rows and columns in `idx`, in that order.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let m = idx.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                data.push(self.get(i, j));
            }
        }
        Self { n: m, data }
    }

    /// Defect-1 submatrix deleting row and column `k`.
    pub fn without(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        self.principal(&idx)
    }

    /// `scale · A + shift · I`.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        let mut data: Vec<Complex64> = self.data.iter().map(|z| z * scale).collect();
        for i in 0..self.n {
            data[i * self.n + i] += shift;
        }
        Self { n: self.n, data }
    }

    /// `P A Pᵀ` where row `i` of the result is row `perm[i]` of `A`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.principal(perm)
    }

    /// Normalised trace `Tr(A)/n`.
    pub fn tr(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum::<f64>() / self.n as f64
    }

    /// Normalised `Tr(A²)/n = Σ|aᵢⱼ|²/n`.
    pub fn tr_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.n as f64
    }

    pub fn max_abs_diagonal(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).norm()).fold(0.0, f64::max)
    }

    /// Ascending eigenvalues by Householder tridiagonalisation and implicit QL.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, SubmatrixError> {
        let (mut d, mut e) = tridiagonalize(self);
        tql(&mut d, &mut e)?;
        d.sort_by(f64::total_cmp);
        Ok(d)
    }

    pub fn lambda_max(&self) -> Result<f64, SubmatrixError> {
        Ok(*self.eigenvalues()?.last().expect("n ≥ 1"))
    }

    pub fn lambda_min(&self) -> Result<f64, SubmatrixError> {
        Ok(self.eigenvalues()?[0])
    }

    pub fn spectral_norm(&self) -> Result<f64, SubmatrixError> {
        let ev = self.eigenvalues()?;
        Ok(ev[0].abs().max(ev[ev.len() - 1].abs()))
    }
}

/// Reduces `A` to a real symmetric tridiagonal matrix with the same
/// spectrum: returns the diagonal and the moduli of the off-diagonal.
fn tridiagonalize(m: &HermitianMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.n;
    let mut a = m.data.clone();
    let idx = |i: usize, j: usize| i * n + j;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| a[idx(i, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        let norm = (x[0].norm_sqr() + tail).sqrt();
        d[k] = a[idx(k, k)].re;
        if tail == 0.0 {
            e[k] = x[0].norm();
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * norm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;
        let m2 = n - k - 1;
        // p = τ A₂₂ v
        let p: Vec<Complex64> = (0..m2)
            .map(|i| {
                (0..m2)
                    .map(|j| a[idx(k + 1 + i, k + 1 + j)] * v[j])
                    .sum::<Complex64>()
                    * tau
            })
            .collect();
        let vp: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let kk = 0.5 * tau * vp;
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - kk * vi).collect();
        for i in 0..m2 {
            for j in 0..m2 {
                a[idx(k + 1 + i, k + 1 + j)] -= v[i] * w[j].conj() + w[i] * v[j].conj();
            }
        }
        e[k] = norm;
    }
    d[n - 1] = a[idx(n - 1, n - 1)].re;
    (d, e)
}

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix;
/// `e[i]` couples `d[i]` and `d[i + 1]`. Eigenvalues overwrite `d`.
fn tql(d: &mut [f64], e: &mut [f64]) -> Result<(), SubmatrixError> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == QL_ITERATIONS {
                return Err(SubmatrixError::ConvergenceFailure { index: l });
            }
            iter += 1;
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Dense linear operator `T: ℂ^cols → ℂ^rows`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectOperator {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Complex64>,
}

impl RectOperator {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, SubmatrixError> {
        if rows == 0 || cols == 0 {
            return Err(SubmatrixError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(SubmatrixError::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(SubmatrixError::NonFinite);
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, SubmatrixError> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `T*T`, the `cols × cols` Gram matrix.
    pub fn gram(&self) -> HermitianMatrix {
        let (r, c) = (self.rows, self.cols);
        let mut data = vec![Complex64::new(0.0, 0.0); c * c];
        for i in 0..c {
            for j in i..c {
                let s: Complex64 = (0..r)
                    .map(|k| self.entries[k * c + i].conj() * self.entries[k * c + j])
                    .sum();
                data[i * c + j] = s;
                data[j * c + i] = s.conj();
            }
        }
        for i in 0..c {
            data[i * c + i].im = 0.0;
        }
        HermitianMatrix { n: c, data }
    }

    /// Schatten-2 (Frobenius) norm.
    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}
