use serde::Serialize;

use super::twisted::MomentSample;
use crate::error::{Error, Result};

/// `Q T^eta (log T)^beta`, majorizing the samples it was fitted to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    #[serde(rename = "Q")]
    pub q: f64,
    pub eta: f64,
    pub beta: f64,
    /// Largest log-excess of a sample over the least-squares curve.
    pub residual: f64,
}

impl GrowthFit {
    pub fn bound(&self, t: f64) -> f64 {
        self.q * t.powf(self.eta) * t.ln().powf(self.beta)
    }
}

pub fn fit_growth(samples: &[MomentSample], beta_fixed: Option<f64>) -> Result<GrowthFit> {
    let pts: Vec<(f64, f64)> = samples.iter().map(|s| (s.t, s.abs)).collect();
    fit_growth_points(&pts, beta_fixed)
}

/// Least-squares fit of `log v` against `1, log T, log log T` on `(T, v)` pairs.
pub fn fit_growth_points(points: &[(f64, f64)], beta_fixed: Option<f64>) -> Result<GrowthFit> {
    if points.len() < 4 {
        return Err(Error::Precondition(format!(
            "need at least 4 samples, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(t, v)| !(t > 1.0) || !(v > 0.0) || !v.is_finite())
    {
        return Err(Error::Precondition(
            "samples need T > 1 and positive finite values".into(),
        ));
    }
    let tmin = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let tmax = points.iter().map(|p| p.0).fold(0.0, f64::max);
    if tmax < 8.0 * tmin {
        return Err(Error::Precondition(format!(
            "samples span a factor {:.3} in T, need at least 8",
            tmax / tmin
        )));
    }
    let rows: Vec<([f64; 3], f64)> = points
        .iter()
        .map(|&(t, v)| ([1.0, t.ln(), t.ln().ln()], v.ln()))
        .collect();

    let (c0, eta, beta) = match beta_fixed {
        Some(beta) => {
            let r: Vec<([f64; 2], f64)> = rows
                .iter()
                .map(|(x, y)| ([x[0], x[1]], y - beta * x[2]))
                .collect();
            let sol = least_squares::<2>(&r)?;
            (sol[0], sol[1], beta)
        }
        None => {
            let sol = least_squares::<3>(&rows)?;
            (sol[0], sol[1], sol[2])
        }
    };
    let residual = rows
        .iter()
        .map(|(x, y)| y - (c0 + eta * x[1] + beta * x[2]))
        .fold(0.0, f64::max);
    Ok(GrowthFit {
        q: (c0 + residual).exp() * (1.0 + 1e-12),
        eta,
        beta,
        residual,
    })
}

fn least_squares<const K: usize>(rows: &[([f64; K], f64)]) -> Result<[f64; K]> {
    let mut a = [[0.0; K]; K];
    let mut b = [0.0; K];
    for (x, y) in rows {
        for i in 0..K {
            b[i] += x[i] * y;
            for j in 0..K {
                a[i][j] += x[i] * x[j];
            }
        }
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..K {
        let piv = (col..K)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        a.swap(col, piv);
        b.swap(col, piv);
        let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        if a[col][col].abs() <= 1e-12 * scale {
            return Err(Error::Precondition("degenerate sample spread".into()));
        }
        for r in (col + 1)..K {
            let f = a[r][col] / a[col][col];
            for c in col..K {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; K];
    for i in (0..K).rev() {
        let s: f64 = ((i + 1)..K).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Ok(x)
}
