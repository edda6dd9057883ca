//! Truncated power series in one variable with exact integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in `u` known modulo `u^(trunc + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    coeffs: Vec<BigInt>,
    trunc: usize,
}

impl TruncPoly {
    pub fn new(coeffs: Vec<BigInt>, trunc: usize) -> Self {
        let mut p = TruncPoly { coeffs, trunc };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64], trunc: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Self::from_i64(&[1], trunc)
    }

    pub fn zero(trunc: usize) -> Self {
        Self::new(Vec::new(), trunc)
    }

    /// `c * u^k`.
    pub fn monomial(c: i64, k: usize, trunc: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self::new(v, trunc)
    }

    fn normalize(&mut self) {
        self.coeffs.truncate(self.trunc + 1);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn coeff_i64(&self, j: usize) -> Result<i64> {
        self.coeff(j).to_i64().ok_or(Error::Overflow("coefficient"))
    }

    /// Degree of the highest nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero `(degree, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Smallest positive degree carrying a nonzero coefficient.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms().map(|(j, _)| j).find(|&j| j > 0)
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        Self::new(self.coeffs.clone(), trunc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len).map(|j| self.coeff(j) + other.coeff(j)).collect();
        Self::new(v, trunc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len).map(|j| self.coeff(j) - other.coeff(j)).collect();
        Self::new(v, trunc)
    }

    /// Product truncated at the smaller of the two truncation degrees.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        if self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(trunc + 1);
        let mut v = vec![BigInt::zero(); len];
        for (i, a) in self.terms() {
            if i >= len {
                break;
            }
            for (j, b) in other.terms() {
                if i + j >= len {
                    break;
                }
                v[i + j] += a * b;
            }
        }
        Self::new(v, trunc)
    }

    /// `(1 - c u^k)^e` for integer `e`, expanded as a truncated series.
    pub fn binomial_power(c: i64, k: usize, e: i64, trunc: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("binomial_power needs k >= 1".into()));
        }
        let series = rational_binomial_series(&BigRational::from_integer(e.into()), trunc / k);
        let mut v = vec![BigInt::zero(); trunc + 1];
        let mut cpow = BigInt::one();
        let c = BigInt::from(c);
        for (i, b) in series.iter().enumerate() {
            if !b.is_integer() {
                return Err(Error::Precondition(
                    "non-integral binomial coefficient".into(),
                ));
            }
            v[i * k] = b.to_integer() * &cpow;
            cpow *= &c;
        }
        Ok(Self::new(v, trunc))
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients as `i64`, failing on overflow.
    pub fn to_i64_vec(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| c.to_i64().ok_or(Error::Overflow("coefficient")))
            .collect()
    }

    /// Sum of `|c_j|` over `j >= from`.
    pub fn abs_tail(&self, from: usize) -> BigInt {
        self.coeffs.iter().skip(from).map(|c| c.abs()).sum()
    }
}

/// First `terms + 1` coefficients of `(1 - y)^e` for rational `e`.
pub fn rational_binomial_series(e: &BigRational, terms: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(terms + 1);
    let mut c = BigRational::one();
    out.push(c.clone());
    for j in 0..terms {
        let j = BigRational::from_integer(BigInt::from(j as i64));
        // coefficient of y^(j+1) in (1 - y)^e is (-1)^(j+1) binom(e, j+1)
        c = -c * (e - &j) / (j + BigRational::one());
        out.push(c.clone());
    }
    out
}

/// Exponent-valued `Ratio<i64>` reduced to an integer if possible.
pub fn ratio_to_integer(r: Ratio<i64>) -> Option<i64> {
    r.is_integer().then(|| r.to_integer())
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{a}u")?,
                (_, true) => write!(f, "u^{j}")?,
                (_, false) => write!(f, "{a}u^{j}")?,
            }
        }
        Ok(())
    }
}
