use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::scalar::OrderedField;

fn factorial<T: OrderedField>(k: u32) -> T {
    (1..=k as i64).fold(T::one(), |acc, j| acc * T::from_i64(j))
}

fn pow<T: OrderedField>(x: &T, k: u32) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

/// `A^k(X) = (1/k!) sum_{lambda <= X} a (X - lambda)^k` for the step function
/// with the given jumps. `k = 0` is the summatory function.
pub fn riesz_mean<T: OrderedField>(jumps: &[(T, T)], k: u32, x: &T) -> T {
    let mut acc = T::zero();
    for (lambda, a) in jumps {
        if lambda <= x {
            acc = acc + a.clone() * pow(&(x.clone() - lambda.clone()), k);
        }
    }
    acc / factorial::<T>(k)
}

/// `Delta_y^{(k)} f(x) = sum_j (-1)^{k-j} C(k, j) f(x + j y)`.
pub fn finite_difference<T, F>(f: F, y: &T, k: u32, x: &T) -> T
where
    T: OrderedField,
    F: Fn(&T) -> T,
{
    let mut acc = T::zero();
    let mut shift = x.clone();
    for j in 0..=k {
        let c = T::from_i64(binomial(k as u64, j as u64) as i64);
        let term = c * f(&shift);
        acc = if (k - j).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        };
        shift = shift + y.clone();
    }
    acc
}

/// The three quantities of the unsmoothing sandwich at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Sandwich<T> {
    pub lower: T,
    pub smoothed: T,
    pub upper: T,
}

impl<T: OrderedField> Sandwich<T> {
    pub fn holds(&self) -> bool {
        self.lower <= self.smoothed && self.smoothed <= self.upper
    }
}

/// `A^0(X) <= y^{-k} Delta_y^{(k)} A^k(X) <= A^0(X + k y)` for nonnegative jumps.
pub fn sandwich<T: OrderedField>(jumps: &[(T, T)], k: u32, y: &T, x: &T) -> Result<Sandwich<T>> {
    if !(y > &T::zero()) {
        return Err(Error::InvalidArgument("step y must be positive".into()));
    }
    if jumps.iter().any(|(_, a)| a < &T::zero()) {
        return Err(Error::Precondition("jumps must be nonnegative".into()));
    }
    let diff = finite_difference(|t| riesz_mean(jumps, k, t), y, k, x);
    let smoothed = diff / pow(y, k);
    let reach = x.clone() + T::from_i64(k as i64) * y.clone();
    Ok(Sandwich {
        lower: riesz_mean(jumps, 0, x),
        smoothed,
        upper: riesz_mean(jumps, 0, &reach),
    })
}
