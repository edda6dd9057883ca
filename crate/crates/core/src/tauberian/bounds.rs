use serde::Serialize;

use super::params::{abs_polar, polar_sum, PolarTerm, TauberParams};
use crate::error::{Error, Result};

/// Smallest `T` allowed by the explicit theorem.
pub const MIN_T: f64 = 6.0;

/// `k = ceil(max(2, eta_tilde - 2, 3 eta - 3))`.
pub fn smoothing_order(eta: f64, eta_tilde: f64) -> u32 {
    let m = 2.0f64.max(eta_tilde - 2.0).max(3.0 * eta - 3.0);
    m.ceil() as u32
}

/// `(g(u), h(u))` from bounding `int t^{eta-2} (log t)^beta dt`.
pub fn gh_helpers(eta: f64, beta: f64, u: f64) -> Result<(f64, f64)> {
    if !(u > 1.0) {
        return Err(Error::InvalidArgument(format!("u = {u} must exceed 1")));
    }
    let l = u.ln();
    if eta == 1.0 {
        return Ok((l.powf(beta + 1.0), 1.0));
    }
    let inv = 1.0 / (eta - 1.0).abs();
    let g = inv * l.powf(beta);
    let h = if eta < 1.0 {
        inv * u.powf(eta - 1.0) * l.powf(beta)
    } else {
        inv * (eta - 1.0).exp()
    };
    Ok((g, h))
}

/// `(E_1(X, T), E_2)`; `r_abs` is `R_{N, sigma_a - delta}(X)`.
pub fn error_terms(p: &TauberParams, x: f64, t: f64, r_abs: f64) -> Result<(f64, f64)> {
    p.validate()?;
    if !(x >= std::f64::consts::E) {
        return Err(Error::InvalidArgument(format!("X = {x} below e")));
    }
    if !(t >= MIN_T) {
        return Err(Error::InvalidArgument(format!("T = {t} below {MIN_T}")));
    }
    if !(r_abs >= 0.0) {
        return Err(Error::InvalidArgument(format!("R = {r_abs} is negative")));
    }
    let k = smoothing_order(p.eta, p.eta_tilde) as f64;
    let kk = k.powf(k);
    let lt = t.ln();
    let (e1, e2) = if p.eta < 1.0 {
        (0.0, p.sup_gamma)
    } else if p.eta == 1.0 {
        let first = (x.powf(p.delta) / t) * r_abs / x.powf(p.sigma_a);
        let second = (kk / lt + 2f64.powf(p.delta + 1.0) * p.q) * lt.powf(p.beta + 1.0);
        (first + second, p.q + p.sup_gamma)
    } else {
        let xd = x.powf(p.delta / p.eta);
        let first = (xd / t) * r_abs / x.powf(p.sigma_a);
        let c = kk + 2f64.powf(p.delta) * p.eta / (p.eta - 1.0) * p.q;
        let second = c * (t / xd).powf(p.eta - 1.0) * lt.powf(p.beta);
        (
            first + second,
            (p.eta - 1.0).exp() * p.q / (p.eta - 1.0) + p.sup_gamma,
        )
    };
    Ok((e1, e2))
}

/// The order-of-magnitude optimal `T` before the `T >= 6` floor.
pub fn optimal_t_raw(p: &TauberParams, x: f64) -> Result<f64> {
    if !(x >= std::f64::consts::E) {
        return Err(Error::InvalidArgument(format!("X = {x} below e")));
    }
    let l = x.ln();
    let b1 = p.b as f64 - 1.0;
    Ok(if p.eta <= 1.0 {
        x.powf(p.delta) * l.powf(b1)
    } else {
        x.powf(p.delta / p.eta) * l.powf((b1 - p.beta) / p.eta)
    })
}

/// [`optimal_t_raw`] floored at [`MIN_T`].
pub fn optimal_t(p: &TauberParams, x: f64) -> Result<f64> {
    Ok(optimal_t_raw(p, x)?.max(MIN_T))
}

/// Power of `log X` in the final error term.
pub fn theta_exponent(eta: f64, beta: f64, b: u32) -> f64 {
    if eta < 1.0 {
        0.0
    } else if eta == 1.0 {
        beta + 1.0
    } else {
        (b as f64 - 1.0) * (1.0 - 1.0 / eta) + beta / eta
    }
}

/// The explicit bound `X^{sigma_a - delta/max(eta,1)} E_1 + 2^delta E_2 X^{sigma_a - delta}`.
pub fn optimized_envelope(p: &TauberParams, terms: &[PolarTerm], x: f64, t: f64) -> Result<f64> {
    let r = abs_polar(terms, x)?;
    let (e1, e2) = error_terms(p, x, t, r)?;
    let xe = x.powf(p.sigma_a - p.delta / p.eta.max(1.0));
    Ok(xe * e1 + 2f64.powf(p.delta) * e2 * x.powf(p.left_edge()))
}

/// The unoptimized bound with `y = 3X/(kT)`, valid for `T >= max(T0, 6)`.
pub fn unoptimized_envelope(p: &TauberParams, terms: &[PolarTerm], x: f64, t: f64) -> Result<f64> {
    p.validate()?;
    if !(t >= p.t0.max(MIN_T)) {
        return Err(Error::InvalidArgument(format!(
            "T = {t} below max(T0, {MIN_T})"
        )));
    }
    let k = smoothing_order(p.eta, p.eta_tilde) as i32;
    let y = 3.0 * x / (k as f64 * t);
    let r = abs_polar(terms, x)?;
    let lt = t.ln();
    let (g, _) = gh_helpers(p.eta, p.beta, t)?;
    let (_, h0) = gh_helpers(p.eta, p.beta, p.t0)?;
    let xl = x.powf(p.left_edge());
    let two_d = 2f64.powf(p.delta);
    let first = k as f64 * y * r / x;
    let second = 3f64.powi(k)
        * y.powi(-k)
        * xl
        * x.powi(k)
        * t.powf(p.eta - k as f64 - 1.0)
        * lt.powf(p.beta);
    let third = two_d * p.q * xl * t.powf(p.eta - 1.0) * (lt.powf(p.beta) + g);
    let fourth = two_d * (p.q * h0 + p.sup_gamma) * xl;
    Ok(first + second + third + fourth)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    Optimized,
    Unoptimized,
}

/// Implied constant and growth of the observed error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "C")]
    pub c: f64,
    /// Log-log regression slope of `|N(X) - S^0(X)|`.
    pub slope: f64,
    #[serde(rename = "worst_X")]
    pub worst_x: f64,
}

/// Fits the smallest `C` with `|N(X) - S^0(X)| <= C * bound(X)` at every sample.
///
/// `majorant` carries samples and parameters of a nondecreasing `N^` with
/// `|N| <= N^`; its error terms are added to those of `N`.
pub fn bound_check(
    samples: &[(f64, f64)],
    terms: &[PolarTerm],
    p: &TauberParams,
    mode: BoundMode,
    majorant: Option<(&[PolarTerm], &TauberParams)>,
) -> Result<BoundReport> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    if samples.iter().any(|&(x, _)| !(x >= std::f64::consts::E)) {
        return Err(Error::InvalidArgument("samples below X = e".into()));
    }
    let xmin = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let xmax = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    if xmax < 100.0 * xmin {
        return Err(Error::Precondition(format!(
            "samples span a factor {:.3} in X, need at least 100",
            xmax / xmin
        )));
    }
    let envelope = |terms: &[PolarTerm], p: &TauberParams, x: f64| -> Result<f64> {
        match mode {
            BoundMode::Optimized => optimized_envelope(p, terms, x, optimal_t(p, x)?),
            BoundMode::Unoptimized => unoptimized_envelope(p, terms, x, optimal_t(p, x)?.max(p.t0)),
        }
    };
    let mut c = 0.0f64;
    let mut worst_x = samples[0].0;
    let mut pts = Vec::with_capacity(samples.len());
    for &(x, n) in samples {
        let d = (n - polar_sum(terms, x)?.re).abs();
        let mut env = envelope(terms, p, x)?;
        if let Some((mt, mp)) = majorant {
            env += envelope(mt, mp, x)?;
        }
        let ratio = d / env;
        if ratio > c {
            c = ratio;
            worst_x = x;
        }
        if d > 0.0 {
            pts.push((x.ln(), d.ln()));
        }
    }
    Ok(BoundReport {
        c,
        slope: regression_slope(&pts),
        worst_x,
    })
}

/// Least-squares slope; `0` with fewer than two points.
pub fn regression_slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::E;

    use super::*;

    fn params(eta: f64, beta: f64, b: u32) -> TauberParams {
        TauberParams {
            sigma_a: 1.0,
            delta: 0.5,
            t0: E,
            eta,
            eta_tilde: eta,
            beta,
            q: 1.0,
            b,
            sup_gamma: 0.0,
        }
    }

    #[test]
    fn orders() {
        assert_eq!(smoothing_order(1.0, 1.0), 2);
        assert_eq!(smoothing_order(1.0, 5.0), 3);
        assert_eq!(smoothing_order(2.0, 2.0), 3);
    }

    #[test]
    fn optimal_heights() {
        let x = E.powi(4);
        assert!((optimal_t_raw(&params(1.0, 0.0, 1), x).unwrap() - E * E).abs() < 1e-12);
        assert!((optimal_t_raw(&params(2.0, 0.0, 1), x).unwrap() - E).abs() < 1e-12);
        assert_eq!(optimal_t(&params(2.0, 0.0, 1), x).unwrap(), 6.0);
    }

    #[test]
    fn thetas() {
        assert_eq!(theta_exponent(0.5, 3.0, 1), 0.0);
        assert_eq!(theta_exponent(1.0, 3.0, 1), 4.0);
        assert_eq!(theta_exponent(2.0, 0.0, 2), 0.5);
    }

    #[test]
    fn below_one_has_no_first_term() {
        let mut p = params(0.5, 0.0, 1);
        p.sup_gamma = 2.5;
        assert_eq!(error_terms(&p, 10.0, 10.0, 7.0).unwrap(), (0.0, 2.5));
    }

    #[test]
    fn exact_model_has_zero_constant() {
        let terms = [PolarTerm::real(1.0, &[0.6])];
        let samples: Vec<(f64, f64)> = [10.0, 100.0, 1000.0, 1e4]
            .iter()
            .map(|&x| (x, 0.6 * x))
            .collect();
        let r = bound_check(
            &samples,
            &terms,
            &params(1.0, 0.0, 1),
            BoundMode::Optimized,
            None,
        )
        .unwrap();
        assert!(r.c < 1e-12);
    }
}
