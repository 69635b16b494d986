//! Root geometry of complex polynomials under repeated differentiation:
//! real-part polynomials and majorization, convex hulls of root sets, and
//! checks of the quantitative Gauss–Lucas bounds.
//!
//! Derivative counts follow each claim's conservative direction: area claims
//! differentiate `⌈cn⌉` times, spread and disc claims `⌊cn⌋` times. Reports
//! carry the count actually used.

mod hull;
mod roots;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::realroot::{RealRootError, RealRootedPoly};
use crate::tolerance::{ceil_count, floor_count};

pub use hull::{directional_spread, hull, hull_of_points, DirectionalWidth, HullReport};
pub use roots::{complex_roots, RootSet, ROOT_RESIDUAL_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaussLucasError {
    #[error("polynomial has degree {degree}, need at least {needed}")]
    DegreeTooSmall { degree: usize, needed: usize },
    #[error("coefficient {0} is not finite")]
    NonFiniteCoefficient(usize),
    #[error("coefficient arrays differ in length ({re} real, {im} imaginary)")]
    LengthMismatch { re: usize, im: usize },
    #[error("root finder did not converge in {sweeps} sweeps (residual {residual:e})")]
    RootConvergenceFailure { sweeps: usize, residual: f64 },
    #[error("convex hull of the roots is degenerate; use the spread check")]
    DegenerateHull,
    #[error("fraction c = {0} outside [1/2, 1]")]
    CRange(f64),
    #[error("roots must lie in the closed unit disc (max modulus {0})")]
    NotInUnitDisc(f64),
    #[error("root average {0} is not at the origin")]
    NotCentered(f64),
    #[error("derivative order {k} must be smaller than the degree {degree}")]
    OrderTooLarge { k: usize, degree: usize },
    #[error(transparent)]
    RealRoot(#[from] RealRootError),
}

/// Polynomial `Σ aₗ zˡ` with complex coefficients, constant term first and
/// trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ComplexPolyJson {
    coeffs_re: Vec<f64>,
    #[serde(default)]
    coeffs_im: Vec<f64>,
}

impl Serialize for ComplexPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComplexPolyJson {
            coeffs_re: self.coeffs.iter().map(|c| c.re).collect(),
            coeffs_im: self.coeffs.iter().map(|c| c.im).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ComplexPolyJson::deserialize(d)?;
        let im = if j.coeffs_im.is_empty() {
            vec![0.0; j.coeffs_re.len()]
        } else {
            j.coeffs_im
        };
        if im.len() != j.coeffs_re.len() {
            return Err(serde::de::Error::custom(GaussLucasError::LengthMismatch {
                re: j.coeffs_re.len(),
                im: im.len(),
            }));
        }
        let coeffs = j.coeffs_re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)).collect();
        ComplexPoly::new(coeffs).map_err(serde::de::Error::custom)
    }
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self, GaussLucasError> {
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(GaussLucasError::NonFiniteCoefficient(i));
        }
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == Complex64::new(0.0, 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, GaussLucasError> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic `∏ (z − rᵢ)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    /// `(z³ − 1)ᵐ` by binomial expansion.
    pub fn cube_roots_power(m: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 3 * m + 1];
        let mut binom = 1.0f64;
        for j in 0..=m {
            let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
            coeffs[3 * j] = Complex64::new(sign * binom, 0.0);
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self { coeffs: c }
    }

    /// `k`-fold derivative in coefficient space.
    pub fn derivative(&self, k: usize) -> Self {
        if k > self.degree() {
            return Self {
                coeffs: vec![Complex64::new(0.0, 0.0)],
            };
        }
        let coeffs = (k..self.coeffs.len())
            .map(|l| {
                let f: f64 = ((l - k + 1)..=l).map(|v| v as f64).product();
                self.coeffs[l] * f
            })
            .collect();
        Self { coeffs }
    }

    /// Average of the roots, `−a_{n−1} / (n aₙ)`, read from the coefficients.
    pub fn root_mean(&self) -> Complex64 {
        let n = self.degree();
        -self.coeffs[n - 1] / (self.coeffs[n] * n as f64)
    }
}

/// `R(p)`: the monic polynomial whose roots are the real parts of `p`'s.
pub fn real_part_poly(p: &ComplexPoly) -> Result<RealRootedPoly, GaussLucasError> {
    let rs = complex_roots(p)?;
    Ok(RealRootedPoly::from_roots(rs.roots.iter().map(|z| z.re).collect())?)
}

/// `μ ≺ λ`: sorted-descending partial sums of `mu` never exceed those of
/// `lambda`, and the totals agree, within `1e-8` of the magnitude scale.
pub fn majorizes(mu: &[f64], lambda: &[f64]) -> Result<bool, GaussLucasError> {
    if mu.len() != lambda.len() {
        return Err(GaussLucasError::LengthMismatch {
            re: mu.len(),
            im: lambda.len(),
        });
    }
    let desc = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    };
    let (m, l) = (desc(mu), desc(lambda));
    let scale = m.iter().chain(&l).map(|x| x.abs()).sum::<f64>().max(1.0);
    let tol = 1e-8 * scale;
    let (mut sm, mut sl) = (0.0, 0.0);
    for (a, b) in m.iter().zip(&l) {
        sm += a;
        sl += b;
        if sm > sl + tol {
            return Ok(false);
        }
    }
    Ok((sm - sl).abs() <= tol)
}

fn real_parts(rs: &RootSet) -> Vec<f64> {
    rs.roots.iter().map(|z| z.re).collect()
}

/// `σ(R(p′)) ≺ σ(R(p)′)`.
pub fn check_pereira(p: &ComplexPoly) -> Result<bool, GaussLucasError> {
    check_chain(p, 1)
}

/// The chain `σ(R D⁽ᵏ⁾p) ≺ σ(D⁽ʲ⁾ R D⁽ᵏ⁻ʲ⁾p) ≺ σ(D⁽ᵏ⁾ R p)`, checked
/// between every consecutive pair `j, j + 1`.
pub fn check_chain(p: &ComplexPoly, k: usize) -> Result<bool, GaussLucasError> {
    let n = p.degree();
    if k == 0 || k >= n {
        return Err(GaussLucasError::OrderTooLarge { k, degree: n });
    }
    let mut links = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let q = p.derivative(k - j);
        let r = RealRootedPoly::from_roots(real_parts(&complex_roots(&q)?))?;
        links.push(r.nth_derivative(j)?.into_roots());
    }
    for pair in links.windows(2) {
        if !majorizes(&pair[0], &pair[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Area ratio `|K(p⁽ᵏ⁾)| / |K(p)|` at `k = ⌈cn⌉`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaRatioReport {
    pub degree: usize,
    pub derivative_order: usize,
    pub ratio: f64,
    /// `4(c − c²)` at the requested `c`.
    pub bound: f64,
    /// `4(c′ − c′²)` at the realised `c′ = k/n`.
    pub bound_realized: f64,
    pub holds: bool,
    pub area_before: f64,
    pub area_after: f64,
}

fn check_c(c: f64) -> Result<(), GaussLucasError> {
    if !(0.5..=1.0).contains(&c) {
        return Err(GaussLucasError::CRange(c));
    }
    Ok(())
}

fn area_ratio_at(p: &ComplexPoly, k: usize) -> Result<(f64, f64, f64), GaussLucasError> {
    let before = hull(&complex_roots(p)?);
    let span = before
        .hull_vertices
        .iter()
        .flat_map(|a| before.hull_vertices.iter().map(move |b| (a[0] - b[0]).hypot(a[1] - b[1])))
        .fold(0.0, f64::max);
    if before.degenerate || before.area <= 1e-10 * span * span {
        return Err(GaussLucasError::DegenerateHull);
    }
    let q = p.derivative(k);
    let after = if q.degree() >= 1 {
        hull(&complex_roots(&q)?).area
    } else {
        0.0
    };
    Ok((after / before.area, before.area, after))
}

/// Quantitative Gauss–Lucas area check, `|K(p⁽⌈ᶜⁿ⌉⁾)| ≤ 4(c − c²)|K(p)|`.
pub fn gl_area_ratio(p: &ComplexPoly, c: f64) -> Result<AreaRatioReport, GaussLucasError> {
    check_c(c)?;
    let n = p.degree();
    if n < 4 {
        return Err(GaussLucasError::DegreeTooSmall { degree: n, needed: 4 });
    }
    let k = ceil_count(c, n);
    let (ratio, before, after) = area_ratio_at(p, k)?;
    let bound = 4.0 * (c - c * c);
    let cr = k as f64 / n as f64;
    Ok(AreaRatioReport {
        degree: n,
        derivative_order: k,
        ratio,
        bound,
        bound_realized: 4.0 * (cr - cr * cr),
        holds: ratio <= bound + 1e-6,
        area_before: before,
        area_after: after,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub degree: usize,
    pub derivative_order: usize,
    pub ratio: f64,
    /// `2√(c − c²)`.
    pub bound: f64,
    pub holds: bool,
}

/// Root-span ratio after `⌊cn⌋` derivatives of a real-rooted polynomial;
/// zero when the original span is zero or no roots survive.
pub fn rr_spread_ratio(p: &RealRootedPoly, c: f64) -> Result<SpreadReport, GaussLucasError> {
    check_c(c)?;
    let n = p.degree();
    let k = floor_count(c, n);
    let ratio = if p.span() == 0.0 || k >= n {
        0.0
    } else {
        p.nth_derivative(k)?.span() / p.span()
    };
    let bound = 2.0 * (c - c * c).sqrt();
    Ok(SpreadReport {
        degree: n,
        derivative_order: k,
        ratio,
        bound,
        holds: ratio <= bound + 1e-8,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscReport {
    pub degree: usize,
    pub derivative_order: usize,
    pub max_modulus: f64,
    /// `2√(c − c²)`.
    pub bound: f64,
    pub holds: bool,
}

/// For centred `p` with roots in the unit disc, the roots of `p⁽⌊ᶜⁿ⌋⁾` lie
/// in the disc of radius `2√(c − c²)`.
pub fn disc_containment(p: &ComplexPoly, c: f64) -> Result<DiscReport, GaussLucasError> {
    check_c(c)?;
    let n = p.degree();
    if n < 1 {
        return Err(GaussLucasError::DegreeTooSmall { degree: n, needed: 1 });
    }
    let rs = complex_roots(p)?;
    let modulus = rs.max_modulus();
    if modulus > 1.0 + 1e-8 {
        return Err(GaussLucasError::NotInUnitDisc(modulus));
    }
    let mean = p.root_mean().norm();
    if mean > 1e-8 {
        return Err(GaussLucasError::NotCentered(mean));
    }
    let k = floor_count(c, n);
    let max_modulus = if k >= n {
        0.0
    } else {
        complex_roots(&p.derivative(k))?.max_modulus()
    };
    let bound = 2.0 * (c - c * c).sqrt();
    Ok(DiscReport {
        degree: n,
        derivative_order: k,
        max_modulus,
        bound,
        holds: max_modulus <= bound + 1e-6,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub m: usize,
    pub derivative_order: usize,
    pub ratio: f64,
    /// `(1 − c)^{4/3}`, the asymptotic value of the ratio.
    pub asymptotic: f64,
    /// `4(c − c²)`.
    pub upper: f64,
}

/// Area ratio of `(z³ − 1)ᵐ` after `3⌊cm⌋` derivatives; the count is a
/// multiple of three so the derivative keeps the threefold symmetry and has
/// no root at the origin.
pub fn sharpness_experiment(m: usize, c: f64) -> Result<SharpnessReport, GaussLucasError> {
    check_c(c)?;
    if 3 * m < 4 {
        return Err(GaussLucasError::DegreeTooSmall { degree: 3 * m, needed: 4 });
    }
    let p = ComplexPoly::cube_roots_power(m);
    let k = 3 * floor_count(c, m);
    let (ratio, _, _) = area_ratio_at(&p, k)?;
    Ok(SharpnessReport {
        m,
        derivative_order: k,
        ratio,
        asymptotic: (1.0 - c).powf(4.0 / 3.0),
        upper: 4.0 * (c - c * c),
    })
}

/// Long-form CSV of root scatters and closed hull polylines:
/// `series,kind,index,re,im` with `kind` either `root` or `hull`.
pub fn scatter_csv(series: &[(&str, &RootSet)]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["series", "kind", "index", "re", "im"])?;
    for (name, rs) in series {
        for (i, z) in rs.roots.iter().enumerate() {
            w.write_record([name, "root", i.to_string().as_str(), format!("{:?}", z.re).as_str(), format!("{:?}", z.im).as_str()])?;
        }
        let h = hull(rs);
        let closing = h.hull_vertices.first().copied();
        for (i, v) in h.hull_vertices.iter().chain(closing.as_ref()).enumerate() {
            w.write_record([name, "hull", i.to_string().as_str(), format!("{:?}", v[0]).as_str(), format!("{:?}", v[1]).as_str()])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
