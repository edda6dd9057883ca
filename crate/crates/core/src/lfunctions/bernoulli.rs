use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Number of even-index Bernoulli numbers kept in the cache.
pub const MAX_BERNOULLI_PAIRS: usize = 60;

/// Exact `B_0, ..., B_n` (with `B_1 = +1/2`) by the Akiyama-Tanigawa algorithm.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m as u64 + 1)));
        for j in (1..=m).rev() {
            let jj = BigRational::from_integer(BigInt::from(j as u64));
            a[j - 1] = jj * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

/// `B_{2j} / (2j)!` for `j = 1..=MAX_BERNOULLI_PAIRS`, as `f64`.
pub fn scaled_even_bernoulli() -> &'static [f64] {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let b = bernoulli_numbers(2 * MAX_BERNOULLI_PAIRS + 2);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(MAX_BERNOULLI_PAIRS + 1);
        for (k, bk) in b.iter().enumerate().skip(1) {
            fact *= BigInt::from(k as u64);
            if k % 2 == 0 {
                let v = bk / BigRational::from_integer(fact.clone());
                out.push(if v.is_zero() {
                    0.0
                } else {
                    v.to_f64().unwrap_or(0.0)
                });
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], BigRational::new(1.into(), 2.into()));
        assert_eq!(b[2], BigRational::new(1.into(), 6.into()));
        assert_eq!(b[4], BigRational::new((-1).into(), 30.into()));
        assert!(b[7].is_zero());
        assert!((scaled_even_bernoulli()[0] - 1.0 / 12.0).abs() < 1e-17);
    }
}
