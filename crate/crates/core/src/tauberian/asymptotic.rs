//! Leading-order algebra on monomials `c X^a (log X)^b` with rational exponents.

use std::cmp::Ordering;
use std::ops::{Add, Mul};

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: f64,
    pub x_power: Q,
    pub log_power: Q,
}

impl Monomial {
    pub fn new(coeff: f64, x_power: Q, log_power: Q) -> Self {
        Monomial {
            coeff,
            x_power,
            log_power,
        }
    }

    pub fn constant(c: f64) -> Self {
        Monomial::new(c, Q::zero(), Q::zero())
    }

    pub fn x_pow(a: Q) -> Self {
        Monomial::new(1.0, a, Q::zero())
    }

    pub fn log_pow(b: Q) -> Self {
        Monomial::new(1.0, Q::zero(), b)
    }

    pub fn powr(self, e: Q) -> Result<Self> {
        if self.coeff <= 0.0 {
            return Err(Error::Domain(
                "rational power of a nonpositive coefficient".into(),
            ));
        }
        let ef = e.to_f64().ok_or(Error::Overflow("exponent"))?;
        Ok(Monomial::new(
            self.coeff.powf(ef),
            self.x_power * e,
            self.log_power * e,
        ))
    }

    /// Leading term of `log(c X^a (log X)^b)`, which is `a log X` for `a != 0`.
    pub fn log(self) -> Result<Self> {
        if self.x_power.is_zero() {
            return Err(Error::Domain(
                "log of a pure log-power is not a monomial".into(),
            ));
        }
        let a = self.x_power.to_f64().ok_or(Error::Overflow("exponent"))?;
        Ok(Monomial::new(a, Q::zero(), Q::one()))
    }

    fn growth(&self) -> (Q, Q) {
        (self.x_power, self.log_power)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(
            self.coeff * o.coeff,
            self.x_power + o.x_power,
            self.log_power + o.log_power,
        )
    }
}

/// A finite sum of monomials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expr {
    pub terms: Vec<Monomial>,
}

impl Add for Expr {
    type Output = Expr;

    fn add(mut self, o: Expr) -> Expr {
        self.terms.extend(o.terms);
        self
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;

    fn mul(self, o: &Expr) -> Expr {
        let terms = self
            .terms
            .iter()
            .flat_map(|a| o.terms.iter().map(move |b| *a * *b))
            .collect();
        Expr { terms }
    }
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn from(m: Monomial) -> Self {
        Expr { terms: vec![m] }
    }

    /// The fastest-growing term with its coefficients of equal growth summed.
    pub fn dominant(&self) -> Option<Monomial> {
        let top = self
            .terms
            .iter()
            .filter(|m| m.coeff != 0.0)
            .map(|m| m.growth())
            .max_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))?;
        let c: f64 = self
            .terms
            .iter()
            .filter(|m| m.growth() == top)
            .map(|m| m.coeff)
            .sum();
        Some(Monomial::new(c, top.0, top.1))
    }
}

/// Exact exponents describing one Tauberian input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolicParams {
    pub sigma_a: Q,
    pub delta: Q,
    pub eta: Q,
    pub beta: Q,
    pub b: i64,
    pub q: f64,
    pub k: u32,
    /// Leading coefficient of `R(X) ~ rho X^{sigma_a} (log X)^{b-1}`.
    pub rho: f64,
}

/// `E_1(X, T)` with `T` set to the optimal height, as a monomial sum.
pub fn e1_at_optimal_t(p: &SymbolicParams) -> Result<Expr> {
    if p.eta < Q::one() {
        return Ok(Expr::zero());
    }
    if !p.delta.is_positive() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let b1 = Q::from_integer(p.b - 1);
    let r = Monomial::new(p.rho, p.sigma_a, b1);
    let kk = (p.k as f64).powi(p.k as i32);
    let delta_f = p.delta.to_f64().ok_or(Error::Overflow("delta"))?;
    let eta_f = p.eta.to_f64().ok_or(Error::Overflow("eta"))?;
    if p.eta == Q::one() {
        let t = Monomial::new(1.0, p.delta, b1);
        let lt = t.log()?;
        let first = Monomial::x_pow(p.delta)
            .mul(t.powr(-Q::one())?)
            .mul(r)
            .mul(Monomial::x_pow(-p.sigma_a));
        let second = Expr::from(Monomial::constant(kk).mul(lt.powr(p.beta)?)).add(Expr::from(
            Monomial::constant(2f64.powf(delta_f + 1.0) * p.q).mul(lt.powr(p.beta + Q::one())?),
        ));
        Ok(Expr::from(first).add(second))
    } else {
        let xd = Monomial::x_pow(p.delta / p.eta);
        let t = Monomial::new(1.0, p.delta / p.eta, (b1 - p.beta) / p.eta);
        let lt = t.log()?;
        let first = xd
            .mul(t.powr(-Q::one())?)
            .mul(r)
            .mul(Monomial::x_pow(-p.sigma_a));
        let c = kk + 2f64.powf(delta_f) * eta_f / (eta_f - 1.0) * p.q;
        let ratio = t.mul(xd.powr(-Q::one())?);
        let second = Monomial::constant(c)
            .mul(ratio.powr(p.eta - Q::one())?)
            .mul(lt.powr(p.beta)?);
        Ok(Expr::from(first).add(Expr::from(second)))
    }
}

/// The `log X` power of `E_1` at the optimal height; `X` must cancel exactly.
pub fn theta_from_optimal_t(p: &SymbolicParams) -> Result<Q> {
    match e1_at_optimal_t(p)?.dominant() {
        None => Ok(Q::zero()),
        Some(m) => match m.x_power.cmp(&Q::zero()) {
            Ordering::Equal => Ok(m.log_power),
            _ => Err(Error::Precondition(format!("E_1 retains X^{}", m.x_power))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_sums_ties() {
        let e = Expr::from(Monomial::log_pow(Q::from_integer(2)))
            .add(Expr::from(Monomial::new(
                3.0,
                Q::zero(),
                Q::from_integer(2),
            )))
            .add(Expr::from(Monomial::log_pow(Q::one())));
        let d = e.dominant().unwrap();
        assert_eq!((d.coeff, d.log_power), (4.0, Q::from_integer(2)));
    }
}
