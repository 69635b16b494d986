//! Convex hulls of root sets (Andrew's monotone chain) and directional widths.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RootSet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionalWidth {
    pub theta: f64,
    pub width: f64,
}

/// Convex hull of a root multiset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    /// Strictly convex vertices, counterclockwise.
    pub hull_vertices: Vec<[f64; 2]>,
    pub area: f64,
    /// Mean of the roots (with multiplicity), not of the vertices.
    pub centroid: [f64; 2],
    /// Fewer than three non-collinear points.
    pub degenerate: bool,
    /// Filled by [`HullReport::with_widths`].
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub widths: Vec<DirectionalWidth>,
}

impl HullReport {
    /// Records the projected width of the hull at each angle.
    pub fn with_widths(mut self, thetas: &[f64]) -> Self {
        let pts: Vec<Complex64> = self
            .hull_vertices
            .iter()
            .map(|v| Complex64::new(v[0], v[1]))
            .collect();
        self.widths = thetas
            .iter()
            .map(|&theta| DirectionalWidth {
                theta,
                width: spread(&pts, theta),
            })
            .collect();
        self
    }

    /// Whether `z` lies in the hull, up to `tol` outside any edge.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let v = &self.hull_vertices;
        match v.len() {
            0 => false,
            1 => (z - Complex64::new(v[0][0], v[0][1])).norm() <= tol,
            2 => segment_distance(z, v[0], v[1]) <= tol,
            m => (0..m).all(|i| {
                let (a, b) = (v[i], v[(i + 1) % m]);
                let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
                let len = ex.hypot(ey);
                let cross = ex * (z.im - a[1]) - ey * (z.re - a[0]);
                cross / len >= -tol
            }),
        }
    }
}

fn segment_distance(z: Complex64, a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((z.re - a[0]) * dx + (z.im - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    (z.re - a[0] - t * dx).hypot(z.im - a[1] - t * dy)
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull, shoelace area and root centroid of `rs`.
pub fn hull(rs: &RootSet) -> HullReport {
    hull_of_points(&rs.roots)
}

pub fn hull_of_points(points: &[Complex64]) -> HullReport {
    let centroid = if points.is_empty() {
        [0.0, 0.0]
    } else {
        let m = points.iter().sum::<Complex64>() / points.len() as f64;
        [m.re, m.im]
    };
    let mut pts: Vec<[f64; 2]> = points.iter().map(|z| [z.re, z.im]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    let scale = pts
        .iter()
        .map(|p| p[0].abs().max(p[1].abs()))
        .fold(1.0, f64::max);
    // Turns with |cross| below this are treated as collinear.
    let tol = 1e-12 * scale * scale;

    let vertices = if pts.len() < 3 {
        pts.clone()
    } else {
        let mut lower: Vec<[f64; 2]> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= tol {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<[f64; 2]> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= tol {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    };
    let area = shoelace(&vertices);
    HullReport {
        degenerate: vertices.len() < 3 || area <= tol,
        hull_vertices: vertices,
        area,
        centroid,
        widths: Vec::new(),
    }
}

fn shoelace(v: &[[f64; 2]]) -> f64 {
    if v.len() < 3 {
        return 0.0;
    }
    let twice: f64 = (0..v.len())
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    (0.5 * twice).max(0.0)
}

fn spread(points: &[Complex64], theta: f64) -> f64 {
    let rot = Complex64::from_polar(1.0, -theta);
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| {
        let x = (rot * z).re;
        (lo.min(x), hi.max(x))
    });
    if points.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// `max − min` of `Re(e^{−iθ} z)` over the roots.
pub fn directional_spread(rs: &RootSet, theta: f64) -> f64 {
    spread(&rs.roots, theta)
}
