use crate::arith::primes_up_to;
use crate::error::{Error, Result};

use super::local::LocalFactorSystem;

/// Largest `X` accepted by [`coefficient_sieve`].
pub const MAX_SIEVE_BOUND: u64 = 200_000_000;

/// Dense Dirichlet coefficients `a(1..=X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffArray {
    x: u64,
    a: Vec<i64>,
}

impl CoeffArray {
    pub fn bound(&self) -> u64 {
        self.x
    }

    /// `a(m)`, zero outside `1..=X`.
    pub fn get(&self, m: u64) -> i64 {
        if m == 0 || m > self.x {
            0
        } else {
            self.a[m as usize]
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.a
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &v)| v != 0)
            .map(|(m, &v)| (m as u64, v))
    }

    /// `S(m) = sum_{j <= m} a(j)` for every `m <= X`.
    pub fn prefix_sums(&self) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.a.len());
        let mut acc = 0i64;
        for &v in &self.a {
            acc = acc
                .checked_add(v)
                .ok_or(Error::Overflow("summatory function"))?;
            out.push(acc);
        }
        Ok(out)
    }
}

/// Coefficients of `prod_p F_p(p^{-s})` up to `X`.
///
/// Primes are processed in increasing order; for each one the array is swept
/// downwards so every entry is multiplied by the local factor exactly once.
pub fn coefficient_sieve(system: &LocalFactorSystem, x: u64) -> Result<CoeffArray> {
    if x == 0 {
        return Err(Error::InvalidArgument("X must be positive".into()));
    }
    if x > MAX_SIEVE_BOUND {
        return Err(Error::Domain(format!("X = {x} exceeds {MAX_SIEVE_BOUND}")));
    }
    let n = x as usize;
    let mut a = vec![0i64; n + 1];
    a[1] = 1;
    for p in primes_up_to(x) {
        let factor = system.factor(p);
        let terms: Vec<(usize, i64)> = factor
            .to_i64_vec()?
            .into_iter()
            .enumerate()
            .filter(|&(j, c)| j > 0 && c != 0)
            .collect();
        let Some(&(j0, _)) = terms.first() else {
            continue;
        };
        let Some(pj0) = (p as usize).checked_pow(j0 as u32).filter(|&v| v <= n) else {
            continue;
        };
        // Powers p^j for the exponents present, capped at X.
        let powers: Vec<(usize, i64)> = terms
            .iter()
            .filter_map(|&(j, c)| {
                (p as usize)
                    .checked_pow(j as u32)
                    .filter(|&v| v <= n)
                    .map(|v| (v, c))
            })
            .collect();
        for m in (1..=n / pj0).rev() {
            let am = a[m];
            if am == 0 {
                continue;
            }
            for &(pj, c) in &powers {
                let Some(idx) = m.checked_mul(pj).filter(|&i| i <= n) else {
                    break;
                };
                let add = am
                    .checked_mul(c)
                    .ok_or(Error::Overflow("coefficient sieve"))?;
                a[idx] = a[idx]
                    .checked_add(add)
                    .ok_or(Error::Overflow("coefficient sieve"))?;
            }
        }
    }
    Ok(CoeffArray { x, a })
}

/// `sum_{m <= X} a(m)`.
pub fn summatory(c: &CoeffArray, x: u64) -> Result<i64> {
    if x > c.bound() {
        return Err(Error::InvalidArgument(format!(
            "X = {x} exceeds the sieve bound {}",
            c.bound()
        )));
    }
    c.a[1..=x as usize]
        .iter()
        .try_fold(0i64, |acc, &v| acc.checked_add(v))
        .ok_or(Error::Overflow("summatory function"))
}
