//! Adaptive Gauss-Kronrod (7, 15) quadrature on fixed-width panels.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Values the integrator can accumulate.
pub trait QuadValue:
    Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    /// Widest initial panel.
    pub max_panel: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth inside one panel.
    pub max_depth: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            max_panel: 1.0,
            rel_tol: 1e-6,
            abs_tol: 1e-12,
            max_depth: 24,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature<V> {
    pub value: V,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn gk15<V: QuadValue, F: Fn(f64) -> Result<V>>(f: &F, a: f64, b: f64) -> Result<(V, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x)? + f(c + x)?;
        k = k + s * WGK[j];
        if j % 2 == 1 {
            g = g + s * WG[j / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    Ok((k, (k - g).magnitude()))
}

fn refine<V: QuadValue, F: Fn(f64) -> Result<V>>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    max_depth: u32,
) -> Result<(V, f64, usize)> {
    let (k, err) = gk15(f, a, b)?;
    if err <= tol.max(f64::EPSILON * 64.0 * k.magnitude()) || depth >= max_depth {
        return Ok((k, err, 15));
    }
    let m = 0.5 * (a + b);
    let (v1, e1, n1) = refine(f, a, m, 0.5 * tol, depth + 1, max_depth)?;
    let (v2, e2, n2) = refine(f, m, b, 0.5 * tol, depth + 1, max_depth)?;
    Ok((v1 + v2, e1 + e2, n1 + n2 + 15))
}

/// Integrates `f` over `[a, b]`.
///
/// Panels are evaluated in parallel and summed in order, so results do not
/// depend on the thread count.
pub fn integrate<V, F>(f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<Quadrature<V>>
where
    V: QuadValue,
    F: Fn(f64) -> Result<V> + Sync,
{
    if !(b >= a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("bad interval [{a}, {b}]")));
    }
    if !(opts.max_panel > 0.0) {
        return Err(Error::InvalidArgument("max_panel must be positive".into()));
    }
    if b == a {
        return Ok(Quadrature {
            value: V::zero(),
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let panels = ((b - a) / opts.max_panel).ceil().max(1.0) as usize;
    let width = (b - a) / panels as f64;

    // First pass fixes the scale used by the relative tolerance.
    let coarse: Vec<(V, f64)> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let lo = a + i as f64 * width;
            let hi = if i + 1 == panels { b } else { lo + width };
            gk15(&f, lo, hi)
        })
        .collect::<Result<_>>()?;
    let scale: f64 = coarse.iter().map(|(v, _)| v.magnitude()).sum();
    let total_tol = opts.abs_tol.max(opts.rel_tol * scale);
    let panel_tol = total_tol / panels as f64;

    let refined: Vec<(V, f64, usize)> = coarse
        .into_par_iter()
        .enumerate()
        .map(|(i, (k, err))| {
            if err <= panel_tol {
                return Ok((k, err, 15));
            }
            let lo = a + i as f64 * width;
            let hi = if i + 1 == panels { b } else { lo + width };
            refine(&f, lo, hi, panel_tol, 0, opts.max_depth).map(|(v, e, n)| (v, e, n + 15))
        })
        .collect::<Result<_>>()?;

    let mut value = V::zero();
    let mut error = 0.0;
    let mut evaluations = 0;
    for (v, e, n) in refined {
        value = value + v;
        error += e;
        evaluations += n;
    }
    let tol = opts
        .abs_tol
        .max(opts.rel_tol * value.magnitude().max(scale * 1e-3));
    if !(error <= tol) {
        return Err(Error::NonConvergence {
            what: format!("quadrature on [{a}, {b}]"),
            achieved: error,
        });
    }
    Ok(Quadrature {
        value,
        error_estimate: error,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = integrate(
            |x: f64| Ok(x * x * x),
            0.0,
            2.0,
            &QuadratureOptions::default(),
        )
        .unwrap();
        assert!((q.value - 4.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory() {
        let opts = QuadratureOptions {
            max_panel: 0.1,
            ..Default::default()
        };
        let q = integrate(
            |x: f64| Ok(Complex64::new(0.0, 30.0 * x).exp()),
            0.0,
            10.0,
            &opts,
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 300.0).exp() - 1.0) / Complex64::new(0.0, 30.0);
        assert!((q.value - exact).norm() < 1e-13);
    }
}
