//! Seeded instance generators. Every generator draws from a caller-supplied
//! RNG; [`trial_rng`] gives each trial of a seeded run its own stream.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::realroot::RealRootedPoly;
use crate::submatrix::{HermitianMatrix, RectOperator};

/// Independent, replayable stream `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

/// Gaussian unitary ensemble sample (unnormalised).
pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> HermitianMatrix {
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        data[i * n + i] = Complex64::new(gaussian(rng), 0.0);
        for j in i + 1..n {
            let z = complex_gaussian(rng);
            data[i * n + j] = z;
            data[j * n + i] = z.conj();
        }
    }
    HermitianMatrix::new(n, data).expect("constructed Hermitian")
}

fn scale_to_unit_norm(a: &HermitianMatrix) -> HermitianMatrix {
    let norm = a.spectral_norm().expect("eigenvalues of a small dense matrix");
    a.affine(1.0 / norm, 0.0)
}

/// Trace-zero Hermitian matrix with spectral norm 1.
pub fn traceless<R: Rng>(rng: &mut R, n: usize) -> HermitianMatrix {
    let a = hermitian(rng, n);
    scale_to_unit_norm(&a.affine(1.0, -a.tr()))
}

/// Zero-diagonal Hermitian matrix with spectral norm 1.
pub fn zero_diagonal<R: Rng>(rng: &mut R, n: usize) -> HermitianMatrix {
    let a = hermitian(rng, n);
    let mut data = a.data().to_vec();
    for i in 0..n {
        data[i * n + i] = Complex64::new(0.0, 0.0);
    }
    scale_to_unit_norm(&HermitianMatrix::new(n, data).expect("Hermitian"))
}

/// `GG*/‖GG*‖` for a complex Gaussian `n × r` matrix `G` with `r` drawn
/// from `[n/4, n]`; spectrum in `[0, 1]` with top eigenvalue 1.
pub fn positive_contraction<R: Rng>(rng: &mut R, n: usize) -> HermitianMatrix {
    let r = rng.random_range((n / 4).max(1)..=n);
    let g: Vec<Complex64> = (0..n * r).map(|_| complex_gaussian(rng)).collect();
    // (GG*) is the Gram matrix of Gᴴ.
    let gh: Vec<Complex64> = (0..r * n).map(|k| g[(k % n) * r + k / n].conj()).collect();
    let gram = RectOperator::new(r, n, gh).expect("finite").gram();
    scale_to_unit_norm(&gram)
}

/// `n` roots drawn uniformly from `[lo, hi]`.
pub fn real_rooted<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> RealRootedPoly {
    RealRootedPoly::from_roots((0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .expect("finite roots")
}

/// `n` points uniform in the closed unit disc.
pub fn disc_roots<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r: f64 = rng.random::<f64>().sqrt();
            Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

/// Disc roots shifted to mean zero and shrunk back into the unit disc.
pub fn centered_disc_roots<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let roots = disc_roots(rng, n);
    let mean = roots.iter().sum::<Complex64>() / n as f64;
    let shifted: Vec<Complex64> = roots.iter().map(|z| z - mean).collect();
    let top = shifted.iter().map(|z| z.norm()).fold(1.0, f64::max);
    shifted.iter().map(|z| z / top).collect()
}

/// Real Gaussian `rows × cols` operator.
pub fn gaussian_operator<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> RectOperator {
    let e: Vec<f64> = (0..rows * cols).map(|_| gaussian(rng)).collect();
    RectOperator::from_real(rows, cols, &e).expect("finite")
}
