//! Matrix input: `{"n", "re", "im"}` JSON or Matrix Market (coordinate or
//! array; real, integer or complex; general, symmetric or hermitian).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{HermitianMatrix, SubmatrixError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(a: &HermitianMatrix) -> Self {
        let n = a.n();
        let grid = |f: fn(Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|i| (0..n).map(|j| f(a.get(i, j))).collect()).collect()
        };
        let im = grid(|z| z.im);
        Self {
            n,
            re: grid(|z| z.re),
            im: im.iter().flatten().any(|&x| x != 0.0).then_some(im),
        }
    }

    pub fn to_matrix(&self) -> Result<HermitianMatrix, SubmatrixError> {
        let n = self.n;
        let rows_ok = |g: &Vec<Vec<f64>>| g.len() == n && g.iter().all(|r| r.len() == n);
        if !rows_ok(&self.re) || self.im.as_ref().is_some_and(|g| !rows_ok(g)) {
            return Err(SubmatrixError::Parse(format!("expected {n}×{n} re/im grids")));
        }
        let data = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let im = self.im.as_ref().map_or(0.0, |g| g[i][j]);
                Complex64::new(self.re[i][j], im)
            })
            .collect();
        HermitianMatrix::new(n, data)
    }
}

pub fn read_matrix_json(text: &str) -> Result<HermitianMatrix, SubmatrixError> {
    serde_json::from_str::<MatrixJson>(text)
        .map_err(|e| SubmatrixError::Parse(e.to_string()))?
        .to_matrix()
}

pub fn read_matrix_market(text: &str) -> Result<HermitianMatrix, SubmatrixError> {
    let bad = |msg: &str| SubmatrixError::Parse(msg.to_string());
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty input"))?.to_ascii_lowercase();
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(bad("missing %%MatrixMarket matrix header"));
    }
    let (layout, field, symmetry) = (words[2], words[3], words[4]);
    let complex = match field {
        "real" | "integer" | "double" => false,
        "complex" => true,
        other => return Err(bad(&format!("unsupported field {other}"))),
    };
    if !matches!(symmetry, "general" | "symmetric" | "hermitian") {
        return Err(bad(&format!("unsupported symmetry {symmetry}")));
    }
    let mut body = lines.map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('%'));
    let size: Vec<usize> = body
        .next()
        .ok_or_else(|| bad("missing size line"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("bad size line")))
        .collect::<Result<_, _>>()?;
    let (rows, cols) = (size.first().copied().unwrap_or(0), size.get(1).copied().unwrap_or(0));
    if rows != cols || rows == 0 {
        return Err(bad("matrix must be square and non-empty"));
    }
    let n = rows;
    let num = |t: Option<&str>| -> Result<f64, SubmatrixError> {
        t.ok_or_else(|| bad("truncated entry"))?
            .parse()
            .map_err(|_| bad("bad number"))
    };
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    let mirror = symmetry != "general";
    let mut put = |i: usize, j: usize, z: Complex64| {
        data[i * n + j] = z;
        if mirror && i != j {
            data[j * n + i] = if symmetry == "hermitian" { z.conj() } else { z };
        }
    };
    let parse_value = |toks: &mut std::str::SplitWhitespace| -> Result<Complex64, SubmatrixError> {
        let re = num(toks.next())?;
        let im = if complex { num(toks.next())? } else { 0.0 };
        Ok(Complex64::new(re, im))
    };
    match layout {
        "coordinate" => {
            let nnz = *size.get(2).ok_or_else(|| bad("missing entry count"))?;
            for _ in 0..nnz {
                let line = body.next().ok_or_else(|| bad("fewer entries than declared"))?;
                let mut toks = line.split_whitespace();
                let i = num(toks.next())? as usize;
                let j = num(toks.next())? as usize;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(bad("index out of range"));
                }
                put(i - 1, j - 1, parse_value(&mut toks)?);
            }
        }
        "array" => {
            // Column-major; symmetric layouts list the lower triangle only.
            for j in 0..n {
                let start = if mirror { j } else { 0 };
                for i in start..n {
                    let line = body.next().ok_or_else(|| bad("fewer entries than declared"))?;
                    put(i, j, parse_value(&mut line.split_whitespace())?);
                }
            }
        }
        other => return Err(bad(&format!("unsupported layout {other}"))),
    }
    HermitianMatrix::new(n, data)
}

/// Dispatches on the Matrix Market banner, falling back to JSON.
pub fn read_matrix(text: &str) -> Result<HermitianMatrix, SubmatrixError> {
    if text.trim_start().to_ascii_lowercase().starts_with("%%matrixmarket") {
        read_matrix_market(text.trim_start())
    } else {
        read_matrix_json(text)
    }
}
