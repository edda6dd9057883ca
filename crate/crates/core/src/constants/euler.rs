//! Euler products over primes in residue classes, accelerated by factoring
//! out zeta and L-values.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::ops::Mul;

use crate::arith::{primes_up_to, TruncPoly};
use crate::error::{Error, Result};
use crate::fields::DirichletCharacter;
use crate::lfunctions::{dirichlet_l_eval, hurwitz_zeta_eval, EvalOptions};

/// A value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

impl std::ops::Mul for Estimate {
    type Output = Estimate;

    fn mul(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value * o.value,
            error_bound: self.error_bound * o.value.abs()
                + o.error_bound * self.value.abs()
                + self.error_bound * o.error_bound,
        }
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;

    fn add(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error_bound: self.error_bound + o.error_bound,
        }
    }
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            error_bound: 0.0,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Estimate {
            value: self.value * c,
            error_bound: self.error_bound * c.abs(),
        }
    }

    /// `self^e` for positive values.
    pub fn powf(self, e: f64) -> Result<Self> {
        if !(self.value > self.error_bound) {
            return Err(Error::Domain(format!(
                "real power of {} +- {} which may be nonpositive",
                self.value, self.error_bound
            )));
        }
        let v = self.value.powf(e);
        let rel = self.error_bound / self.value;
        let worst = ((1.0 + rel).powf(e) - 1.0)
            .abs()
            .max((1.0 - (1.0 - rel).powf(e)).abs());
        Ok(Estimate {
            value: v,
            error_bound: v * worst + v.abs() * 4.0 * f64::EPSILON,
        })
    }

    pub fn recip(self) -> Result<Self> {
        self.powf(-1.0)
    }
}

/// Primes `p` with `p mod modulus` in `residues`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeClasses {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl PrimeClasses {
    pub fn all() -> Self {
        PrimeClasses {
            modulus: 1,
            residues: vec![0],
        }
    }

    pub fn odd() -> Self {
        PrimeClasses {
            modulus: 2,
            residues: vec![1],
        }
    }

    pub fn mod4(r: u64) -> Self {
        PrimeClasses {
            modulus: 4,
            residues: vec![r],
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.residues.contains(&(p % self.modulus))
    }

    fn canonical(&self) -> Self {
        let mut r: Vec<u64> = self.residues.iter().map(|r| r % self.modulus).collect();
        r.sort_unstable();
        r.dedup();
        if self.modulus == 4 && r == [1, 3] {
            return Self::odd();
        }
        PrimeClasses {
            modulus: self.modulus,
            residues: r,
        }
    }
}

/// `prod_{p in classes} num(x)/den(x)` with `x = p^{-1/root}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassEulerProduct {
    pub classes: PrimeClasses,
    /// Coefficients in `x`, constant term first.
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
    pub root: u32,
    /// Primes up to this bound are multiplied directly.
    pub truncation: u64,
    /// Factors `(1 - x^j)` with `j` up to this degree are split off and
    /// evaluated through zeta and L-values.
    pub accelerate: usize,
}

impl ClassEulerProduct {
    pub fn new(classes: PrimeClasses, numerator: &[i64], denominator: &[i64], root: u32) -> Self {
        ClassEulerProduct {
            classes,
            numerator: numerator.to_vec(),
            denominator: denominator.to_vec(),
            root,
            truncation: 1_000_000,
            accelerate: 12,
        }
    }

    /// The product of the reciprocal terms.
    pub fn reciprocal(&self) -> Self {
        ClassEulerProduct {
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
            ..self.clone()
        }
    }

    fn term(&self, p: u64) -> f64 {
        let x = (p as f64).powf(-1.0 / self.root as f64);
        horner(&self.numerator, x) / horner(&self.denominator, x)
    }
}

fn horner(c: &[i64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v as f64)
}

/// Power series of `num/den` to degree `trunc`; requires `den(0) = 1`.
fn series_quotient(num: &[i64], den: &[i64], trunc: usize) -> Result<Vec<BigInt>> {
    if den.first() != Some(&1) {
        return Err(Error::Precondition(
            "denominator must have constant term 1".into(),
        ));
    }
    let mut out = vec![BigInt::zero(); trunc + 1];
    for j in 0..=trunc {
        let mut v = BigInt::from(num.get(j).copied().unwrap_or(0));
        for i in 1..=j.min(den.len().saturating_sub(1)) {
            v -= &out[j - i] * den[i];
        }
        out[j] = v;
    }
    Ok(out)
}

/// Exponents `b_j` with `t(x) = prod_j (1 - x^j)^{b_j} * r(x)`, `r = 1 + O(x^{J+1})`,
/// and the series of `r` to degree `trunc`.
fn cyclotomic_exponents(
    t: &[BigInt],
    j_max: usize,
    trunc: usize,
) -> Result<(Vec<(usize, i64)>, TruncPoly)> {
    let mut cur = TruncPoly::new(t.to_vec(), trunc);
    if cur.coeff(0) != BigInt::from(1) {
        return Err(Error::Precondition(
            "Euler term must equal 1 at x = 0".into(),
        ));
    }
    let mut b = Vec::new();
    for j in 1..=j_max.min(trunc) {
        let c = cur
            .coeff(j)
            .to_i64()
            .ok_or(Error::Overflow("cyclotomic exponent"))?;
        if c != 0 {
            // (1 - x^j)^{-c} contributes -c x^j, so b_j = -c.
            b.push((j, -c));
            cur = cur.mul(&TruncPoly::binomial_power(1, j, c, trunc)?);
        }
    }
    Ok((b, cur))
}

/// `sum ln(term(p))` over primes in the classes up to the truncation.
fn direct_log_product(
    spec: &ClassEulerProduct,
    strip: &[(usize, i64)],
    primes: &[u64],
) -> (f64, usize) {
    let root = spec.root as f64;
    let logs: Vec<(f64, usize)> = primes
        .par_chunks(4096)
        .map(|chunk| {
            let mut acc = 0.0;
            let mut count = 0;
            for &p in chunk.iter().filter(|&&p| spec.classes.contains(p)) {
                let lp = (p as f64).ln();
                let mut v = spec.term(p).ln();
                for &(j, bj) in strip {
                    v -= bj as f64 * (-(-(j as f64) / root * lp).exp()).ln_1p();
                }
                acc += v;
                count += 1;
            }
            (acc, count)
        })
        .collect();
    logs.into_iter()
        .fold((0.0, 0), |(a, c), (v, n)| (a + v, c + n))
}

/// Evaluates the product with a rigorous-in-form tail bound.
pub fn class_euler_product(spec: &ClassEulerProduct) -> Result<Estimate> {
    if spec.root == 0 {
        return Err(Error::InvalidArgument("root must be positive".into()));
    }
    if spec.truncation < 3 {
        return Err(Error::InvalidArgument("truncation below 3".into()));
    }
    let trimmed = |c: &[i64]| c.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1);
    if spec.numerator[..trimmed(&spec.numerator)] == spec.denominator[..trimmed(&spec.denominator)]
    {
        return Ok(Estimate::exact(1.0));
    }
    let root = spec.root as usize;
    let trunc = spec.accelerate + 6 * root;
    let t = series_quotient(&spec.numerator, &spec.denominator, trunc)?;
    let (strip, rem) = cyclotomic_exponents(&t, spec.accelerate, trunc)?;

    // Leading decay of the remainder beyond the stripped degrees.
    let m = rem
        .terms()
        .map(|(j, _)| j)
        .find(|&j| j > 0)
        .unwrap_or(trunc + 1);
    let w = m as f64 / spec.root as f64;
    if !(w > 1.0) {
        return Err(Error::Precondition(format!(
            "Euler term decays like p^-{w}, need an exponent above 1"
        )));
    }
    let pp = spec.truncation as f64;
    let mut c = 0.0;
    for (j, v) in rem.terms().filter(|&(j, _)| j >= m) {
        c += v.to_f64().unwrap_or(f64::INFINITY).abs()
            * pp.powf(-((j - m) as f64) / spec.root as f64);
    }
    let c = 2.0 * c.max(1.0);
    if c * pp.powf(-w) > 0.5 {
        return Err(Error::Precondition(
            "truncation too small for the tail estimate".into(),
        ));
    }
    let tail = 2.0 * c * pp.powf(1.0 - w) / (w - 1.0);

    let primes = primes_up_to(spec.truncation);
    let (log_sum, count) = direct_log_product(spec, &strip, &primes);
    let direct = log_sum.exp();
    let direct_err = direct * ((tail).exp_m1() + 8.0 * f64::EPSILON * (count as f64 + 1.0));
    let mut est = Estimate {
        value: direct,
        error_bound: direct_err,
    };

    for &(j, bj) in &strip {
        let s = j as f64 / spec.root as f64;
        if !(s > 1.0) {
            return Err(Error::Precondition(format!(
                "factor (1 - p^-{s}) cannot be split off: exponent not above 1"
            )));
        }
        let f = class_zeta_inverse(&spec.classes, s)?;
        est = est.mul(f.powf(bj as f64)?);
    }
    Ok(est)
}

fn riemann(s: f64) -> Result<Estimate> {
    let opts = EvalOptions::default();
    let e = hurwitz_zeta_eval(Complex64::new(s, 0.0), 1.0, &opts)?;
    Ok(Estimate {
        value: e.value.re,
        error_bound: e.error_bound,
    })
}

fn l_chi4(s: f64) -> Result<Estimate> {
    let chi = DirichletCharacter::all(4)?
        .into_iter()
        .find(|c| !c.is_principal())
        .ok_or(Error::Precondition("no character modulo 4".into()))?;
    let e = dirichlet_l_eval(Complex64::new(s, 0.0), &chi, &EvalOptions::default())?;
    Ok(Estimate {
        value: e.value.re,
        error_bound: e.error_bound,
    })
}

/// `prod_{p in classes} (1 - p^{-s})` for `s > 1`.
pub fn class_zeta_inverse(classes: &PrimeClasses, s: f64) -> Result<Estimate> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("s = {s} not above 1")));
    }
    // Far right the direct product converges fast enough.
    if s >= 8.0 {
        let pp = 10_000u64;
        let mut v = 1.0;
        for p in primes_up_to(pp)
            .into_iter()
            .filter(|&p| classes.contains(p))
        {
            v *= 1.0 - (p as f64).powf(-s);
        }
        let tail = 2.0 * (pp as f64).powf(1.0 - s) / (s - 1.0);
        return Ok(Estimate {
            value: v,
            error_bound: v * tail.exp_m1() + 1e3 * f64::EPSILON,
        });
    }
    let classes = classes.canonical();
    let two = 1.0 - 2f64.powf(-s);
    match (classes.modulus, classes.residues.as_slice()) {
        (1, [0]) => riemann(s)?.recip(),
        (2, [1]) => Ok(riemann(s)?.scale(two).recip()?),
        (4, [r @ (1 | 3)]) => {
            let z = riemann(s)?.scale(two);
            let l = l_chi4(s)?;
            let q3 = class_zeta_inverse(&PrimeClasses::mod4(3), 2.0 * s)?;
            // zeta(s)(1 - 2^-s) = 1/(P1 P3) and L(s, chi_4) = P3/(P1 Q3(2s)).
            if *r == 1 {
                z.mul(l).mul(q3).powf(-0.5)
            } else {
                q3.mul(l).mul(z.recip()?).powf(0.5)
            }
        }
        _ => Err(Error::InvalidArgument(format!(
            "no L-function splitting for classes {:?} modulo {}",
            classes.residues, classes.modulus
        ))),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn constant_term_product() {
        let spec = ClassEulerProduct::new(PrimeClasses::all(), &[1], &[1], 1);
        let e = class_euler_product(&spec).unwrap();
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn inverse_zeta_two() {
        let spec = ClassEulerProduct::new(PrimeClasses::all(), &[1, 0, -1], &[1], 1);
        let e = class_euler_product(&spec).unwrap();
        assert!((e.value - 6.0 / (PI * PI)).abs() < 1e-14);
        assert!(e.error_bound < 1e-9);
    }

    #[test]
    fn split_classes_recombine() {
        let p1 = class_zeta_inverse(&PrimeClasses::mod4(1), 2.0).unwrap();
        let p3 = class_zeta_inverse(&PrimeClasses::mod4(3), 2.0).unwrap();
        let odd = class_zeta_inverse(&PrimeClasses::odd(), 2.0).unwrap();
        assert!((p1.value * p3.value - odd.value).abs() < 1e-14);
    }
}
