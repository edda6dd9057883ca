use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::bernoulli::{scaled_even_bernoulli, MAX_BERNOULLI_PAIRS};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Controls for Euler-Maclaurin summation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Minimum number of directly summed terms.
    pub euler_maclaurin_terms: usize,
    /// Highest Bernoulli index `2B` used in the correction.
    pub bernoulli_order: usize,
    /// Requested bound on the truncation error.
    pub target_abs_error: f64,
    /// Hard cap on directly summed terms.
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            euler_maclaurin_terms: 50,
            bernoulli_order: 30,
            target_abs_error: 1e-13,
            max_terms: 20_000_000,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if self.bernoulli_order < 2 || !self.bernoulli_order.is_multiple_of(2) {
            return Err(Error::InvalidArgument(
                "bernoulli_order must be even and at least 2".into(),
            ));
        }
        if self.bernoulli_order / 2 > MAX_BERNOULLI_PAIRS {
            return Err(Error::InvalidArgument(format!(
                "bernoulli_order above {}",
                2 * MAX_BERNOULLI_PAIRS
            )));
        }
        if !(self.target_abs_error > 0.0) {
            return Err(Error::InvalidArgument(
                "target_abs_error must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A value together with a bound on its truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation<T> {
    pub value: Complex<T>,
    pub error_bound: f64,
}

/// `zeta(s, a) = sum_{k >= 0} (k + a)^{-s}`.
pub fn hurwitz_zeta<T: Real>(s: Complex<T>, a: T, opts: &EvalOptions) -> Result<Complex<T>> {
    hurwitz_zeta_eval(s, a, opts).map(|e| e.value)
}

/// Riemann zeta function.
pub fn zeta<T: Real>(s: Complex<T>, opts: &EvalOptions) -> Result<Complex<T>> {
    hurwitz_zeta(s, T::one(), opts)
}

/// Hurwitz zeta with an explicit bound on the Euler-Maclaurin remainder.
///
/// The number of summed terms grows until the first omitted correction term
/// falls below the target; for large `|Im s|` this needs roughly
/// `|s| / (2 pi)` terms.
pub fn hurwitz_zeta_eval<T: Real>(
    s: Complex<T>,
    a: T,
    opts: &EvalOptions,
) -> Result<Evaluation<T>> {
    opts.validate()?;
    let (sr, si) = (s.re.to_f64_lossy(), s.im.to_f64_lossy());
    if !(a > T::zero()) {
        return Err(Error::Domain(format!(
            "Hurwitz parameter a = {a} must be positive"
        )));
    }
    if sr == 1.0 && si == 0.0 {
        return Err(Error::Pole("1".into()));
    }
    if sr < -2.0 {
        return Err(Error::Domain(format!("Re s = {sr} below -2")));
    }
    let af = a.to_f64_lossy();
    let b = opts.bernoulli_order / 2;
    let bern = scaled_even_bernoulli();
    let s_abs = sr.hypot(si);

    // |(s)_{2B+1}| and the remainder factor |s + 2B + 1| / (sigma + 2B + 1).
    let mut poch = 1.0f64;
    for j in 0..(2 * b + 1) {
        poch *= (sr + j as f64).hypot(si);
    }
    let rem_factor = (sr + 2.0 * b as f64 + 1.0).hypot(si) / (sr + 2.0 * b as f64 + 1.0);
    let next = bern[b].abs();
    let estimate = |n: f64| next * poch * rem_factor * (n + af).powf(-(sr + 2.0 * b as f64 + 1.0));

    let mut n = opts.euler_maclaurin_terms.max(1) as f64;
    let n_min = (s_abs / std::f64::consts::TAU).ceil();
    n = n.max(n_min);
    while estimate(n) > opts.target_abs_error {
        n *= 2.0;
        if n > opts.max_terms as f64 {
            return Err(Error::NonConvergence {
                what: format!("Euler-Maclaurin for zeta({sr} + {si}i, {af})"),
                achieved: estimate(opts.max_terms as f64),
            });
        }
    }
    // Shrink back while the target still holds.
    let (mut lo, mut hi) = (
        (n / 2.0).max(opts.euler_maclaurin_terms as f64).max(n_min),
        n,
    );
    while hi - lo > 1.0 {
        let mid = ((lo + hi) / 2.0).floor();
        if estimate(mid) <= opts.target_abs_error {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let n_terms = if estimate(lo) <= opts.target_abs_error {
        lo
    } else {
        hi
    } as usize;

    let minus_s = -s;
    let mut sum = Complex::new(T::zero(), T::zero());
    for k in 0..n_terms {
        let x = T::of(k as f64) + a;
        sum = sum + (minus_s * x.ln()).exp();
    }
    let na = T::of(n_terms as f64) + a;
    let ln_na = na.ln();
    let na_ms = (minus_s * ln_na).exp();
    let one = Complex::new(T::one(), T::zero());
    sum = sum + na_ms * Complex::new(na, T::zero()) / (s - one);
    sum = sum + na_ms * T::of(0.5);

    // sum_{j=1}^B B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}
    let inv_na = T::one() / na;
    let inv_na2 = inv_na * inv_na;
    let mut rising = s; // (s)_{1}
    let mut pw = na_ms * inv_na; // (N+a)^{-s-1}
    for j in 1..=b {
        let coef = T::of(bern[j - 1]);
        sum = sum + rising * pw * coef;
        let t1 = s + T::of((2 * j - 1) as f64);
        let t2 = s + T::of((2 * j) as f64);
        rising = rising * t1 * t2;
        pw = pw * inv_na2;
    }
    let rounding =
        n_terms as f64 * f64::EPSILON.max(T::epsilon().to_f64_lossy()) * (1.0 + af.powf(-sr));
    Ok(Evaluation {
        value: sum,
        error_bound: estimate(n_terms as f64) + rounding,
    })
}

/// Digamma function for real `x > 0`.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!(
            "digamma argument {x} must be positive"
        )));
    }
    let mut x = x;
    let mut acc = T::zero();
    let shift = T::of(12.0);
    while x < shift {
        acc = acc - x.recip();
        x = x + T::one();
    }
    let bern = scaled_even_bernoulli();
    // psi(x) ~ ln x - 1/(2x) - sum B_{2k} / (2k x^{2k})
    let inv2 = (x * x).recip();
    let mut pw = inv2;
    let mut series = T::zero();
    let mut fact = T::one(); // (2k-1)!
    for k in 1..=10usize {
        let b2k = T::of(bern[k - 1]) * fact * T::of((2 * k) as f64);
        series = series + b2k / T::of((2 * k) as f64) * pw;
        pw = pw * inv2;
        fact = fact * T::of((2 * k) as f64) * T::of((2 * k + 1) as f64);
    }
    Ok(acc + x.ln() - (x + x).recip() - series)
}
