use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hypotheses of the explicit Tauberian theorem for one counting function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauberParams {
    pub sigma_a: f64,
    pub delta: f64,
    #[serde(rename = "T0")]
    pub t0: f64,
    pub eta: f64,
    pub eta_tilde: f64,
    pub beta: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub b: u32,
    /// `sup |L(s, N)/s|` over the detour contour.
    pub sup_gamma: f64,
}

impl TauberParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.sigma_a,
            self.delta,
            self.t0,
            self.eta,
            self.eta_tilde,
            self.beta,
            self.q,
            self.sup_gamma,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidArgument(
                "non-finite Tauberian parameter".into(),
            ));
        }
        if !(self.delta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "delta = {} must be positive",
                self.delta
            )));
        }
        if !(self.t0 >= std::f64::consts::E) {
            return Err(Error::InvalidArgument(format!("T0 = {} below e", self.t0)));
        }
        if !(self.beta >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "beta = {} is negative",
                self.beta
            )));
        }
        if !(self.q > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "Q = {} must be positive",
                self.q
            )));
        }
        if self.b < 1 {
            return Err(Error::InvalidArgument("b must be at least 1".into()));
        }
        if !(self.sup_gamma >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "sup_gamma = {} is negative",
                self.sup_gamma
            )));
        }
        Ok(())
    }

    /// The left edge `sigma_a - delta` of the continuation strip.
    pub fn left_edge(&self) -> f64 {
        self.sigma_a - self.delta
    }
}

/// One residue `X^z R_z(log X)` of `L(s, N) X^s / s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarTerm {
    pub z: Complex64,
    /// Coefficients of `R_z`, constant term first.
    pub coeffs: Vec<Complex64>,
}

impl PolarTerm {
    pub fn new(z: Complex64, coeffs: Vec<Complex64>) -> Self {
        PolarTerm { z, coeffs }
    }

    /// A real pole with real coefficients.
    pub fn real(z: f64, coeffs: &[f64]) -> Self {
        PolarTerm {
            z: Complex64::new(z, 0.0),
            coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    fn r_at(&self, l: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * l + c)
    }

    fn r_abs_at(&self, l: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * l + c.norm())
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() != 0.0)
    }
}

fn check_x(x: f64) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("X = {x} below 1")));
    }
    Ok(x.ln())
}

/// `S^0(X) = sum X^z R_z(log X)`.
pub fn polar_sum(terms: &[PolarTerm], x: f64) -> Result<Complex64> {
    let l = check_x(x)?;
    Ok(terms.iter().map(|t| (t.z * l).exp() * t.r_at(l)).sum())
}

/// `R(X) = sum X^{Re z} R_z^abs(log X)`.
pub fn abs_polar(terms: &[PolarTerm], x: f64) -> Result<f64> {
    let l = check_x(x)?;
    Ok(terms
        .iter()
        .map(|t| (t.z.re * l).exp() * t.r_abs_at(l))
        .sum())
}

/// Coefficient of the dominant `X^sigma (log X)^{b-1}` growth; `1` for no poles.
pub fn leading_coefficient(terms: &[PolarTerm]) -> Complex64 {
    let best = terms
        .iter()
        .filter_map(|t| t.degree().map(|d| (t.z.re, d)))
        .fold(None::<(f64, usize)>, |acc, k| match acc {
            Some(a) if a.0 > k.0 || (a.0 == k.0 && a.1 >= k.1) => Some(a),
            _ => Some(k),
        });
    match best {
        None => Complex64::new(1.0, 0.0),
        Some((re, d)) => terms
            .iter()
            .filter(|t| t.z.re == re && t.coeffs.len() > d)
            .map(|t| t.coeffs[d])
            .sum(),
    }
}
