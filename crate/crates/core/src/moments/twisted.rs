use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::quadrature::{integrate, QuadratureOptions};
use crate::arith::CyclotomicField;
use crate::error::{Error, Result};
use crate::lfunctions::{CyclotomicZeta, EvalOptions};

/// Largest `T` accepted by the moment routines.
pub const MAX_HEIGHT: f64 = 2000.0;

/// Something that can be evaluated on a vertical line.
pub trait LEvaluator: Sync {
    fn eval(&self, s: Complex64) -> Result<Complex64>;
}

impl<F> LEvaluator for F
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        self(s)
    }
}

/// `zeta_K(s)` for a cyclotomic field.
pub struct DedekindEvaluator {
    zeta: CyclotomicZeta,
    opts: EvalOptions,
}

impl DedekindEvaluator {
    pub fn new(field: CyclotomicField, opts: EvalOptions) -> Result<Self> {
        Ok(DedekindEvaluator {
            zeta: CyclotomicZeta::new(field)?,
            opts,
        })
    }

    /// Riemann zeta with default options.
    pub fn riemann() -> Self {
        Self::new(CyclotomicField::full(1), EvalOptions::default()).expect("Q is supported")
    }
}

impl LEvaluator for DedekindEvaluator {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        self.zeta.eval(s, &self.opts).map(|e| e.value)
    }
}

/// Finite Dirichlet polynomial `sum c_n n^{-s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletPolynomial {
    pub terms: Vec<(u64, Complex64)>,
}

impl LEvaluator for DirichletPolynomial {
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        Ok(self
            .terms
            .iter()
            .map(|&(n, c)| c * (-s * (n as f64).ln()).exp())
            .sum())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentSample {
    pub sigma: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "Z")]
    pub z: f64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

impl MomentSample {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Panel width for integrands oscillating like `Z^{it}` on the line `sigma`.
pub fn panel_width(sigma: f64, z: f64) -> f64 {
    let base: f64 = if sigma <= 1.0 { 0.25 } else { 1.0 };
    let lz = z.ln().abs();
    if lz > 0.0 {
        base.min(PI / (4.0 * lz))
    } else {
        base
    }
}

/// `int_T^{2T} L(sigma + it) Z^{it} dt` to relative error `1e-6`.
pub fn twisted_moment(l: &dyn LEvaluator, sigma: f64, t: f64, z: f64) -> Result<MomentSample> {
    twisted_moment_with(l, sigma, t, z, 1e-6)
}

pub fn twisted_moment_with(
    l: &dyn LEvaluator,
    sigma: f64,
    t: f64,
    z: f64,
    rel_tol: f64,
) -> Result<MomentSample> {
    if !(t >= E) {
        return Err(Error::Domain(format!("T = {t} below e")));
    }
    if t > MAX_HEIGHT {
        return Err(Error::Domain(format!("T = {t} above {MAX_HEIGHT}")));
    }
    if !(z >= E / 2.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Z = {z} below e/2")));
    }
    let lz = z.ln();
    let opts = QuadratureOptions {
        max_panel: panel_width(sigma, z),
        rel_tol,
        abs_tol: 1e-14,
        ..Default::default()
    };
    let q = integrate(
        |tt: f64| {
            let v = l.eval(Complex64::new(sigma, tt))?;
            Ok(v * Complex64::new(0.0, tt * lz).exp())
        },
        t,
        2.0 * t,
        &opts,
    )?;
    Ok(MomentSample {
        sigma,
        t,
        z,
        re: q.value.re,
        im: q.value.im,
        abs: q.value.norm(),
    })
}

/// `I(sigma) = int_0^T |zeta_K(sigma + it)|^{power} dt` to relative error `1e-4`.
///
/// `power` is `2m`; negative and odd values are allowed.
pub fn integral_moment(d: u64, power: f64, sigma: f64, t: f64) -> Result<f64> {
    integral_moment_with(CyclotomicField::full(d), power, sigma, t, 1e-4)
}

pub fn integral_moment_with(
    field: CyclotomicField,
    power: f64,
    sigma: f64,
    t: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(t >= 0.0) || t > MAX_HEIGHT {
        return Err(Error::Domain(format!("T = {t} outside [0, {MAX_HEIGHT}]")));
    }
    if power == 0.0 {
        return Ok(t);
    }
    if sigma == 1.0 {
        return Err(Error::Pole(format!("{sigma} + 0i lies on the path")));
    }
    let ev = DedekindEvaluator::new(
        field,
        EvalOptions {
            target_abs_error: 1e-10,
            ..Default::default()
        },
    )?;
    let opts = QuadratureOptions {
        max_panel: panel_width(sigma, 1.0),
        rel_tol,
        abs_tol: 1e-12,
        ..Default::default()
    };
    let q = integrate(
        |tt: f64| Ok(ev.eval(Complex64::new(sigma, tt))?.norm().powf(power)),
        0.0,
        t,
        &opts,
    )?;
    Ok(q.value)
}
