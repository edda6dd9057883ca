//! Invariants of finite abelian groups and cyclotomic fields.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ntheory::{divisors, euler_phi, factorize, multiplicative_order, order_mod_sign};
use crate::error::{Error, Result};

/// Invariants of the cyclic group `C_n` controlling its discriminant-counting
/// series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub n: u64,
    /// Smallest prime dividing `n`.
    pub ell: u64,
    /// `n (1 - 1/ell)`.
    pub a: u64,
    /// `(|G[ell]| - 1) / phi(ell)`.
    pub b: u64,
    /// `|G_d|` (elements of exact order `d`) for each `d | n`.
    pub gd_sizes: BTreeMap<u64, u64>,
}

impl GroupInvariants {
    /// `k_d = n (1 - 1/d)`.
    pub fn k(&self, d: u64) -> u64 {
        self.n - self.n / d
    }

    pub fn divisors(&self) -> Vec<u64> {
        self.gd_sizes.keys().copied().collect()
    }
}

/// Invariants of the cyclic group of order `n >= 2`.
pub fn group_invariants(n: u64) -> Result<GroupInvariants> {
    if n < 2 {
        return Err(Error::UnsupportedGroup {
            n,
            reason: "the group must be nontrivial".into(),
        });
    }
    let ell = factorize(n)[0].0;
    let gd_sizes = divisors(n).into_iter().map(|d| (d, euler_phi(d))).collect();
    // G[ell] is cyclic of order ell.
    let b = (ell - 1) / euler_phi(ell);
    Ok(GroupInvariants {
        n,
        ell,
        a: n - n / ell,
        b,
        gd_sizes,
    })
}

/// `Q(zeta_d)` or its maximal real subfield.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclotomicField {
    pub conductor: u64,
    pub real: bool,
}

impl CyclotomicField {
    pub fn full(d: u64) -> Self {
        CyclotomicField {
            conductor: d,
            real: false,
        }
    }

    pub fn real_subfield(d: u64) -> Self {
        CyclotomicField {
            conductor: d,
            real: true,
        }
    }

    pub fn degree(&self) -> u64 {
        let phi = euler_phi(self.conductor.max(1));
        if self.real && self.conductor > 2 {
            phi / 2
        } else {
            phi
        }
    }

    /// Splitting data `(f, g)` at `p`: the Euler factor is `(1 - p^{-f s})^{-g}`.
    pub fn local_data(&self, p: u64) -> Result<(u64, u64)> {
        let mut d = self.conductor.max(1);
        while p > 1 && d.is_multiple_of(p) {
            d /= p;
        }
        if d <= 2 {
            return Ok((1, 1));
        }
        if self.real {
            let f = order_mod_sign(p % d, d)?;
            Ok((f, euler_phi(d) / 2 / f))
        } else {
            let f = multiplicative_order(p % d, d)?;
            Ok((f, euler_phi(d) / f))
        }
    }

    pub fn label(&self) -> String {
        match (self.conductor, self.real) {
            (0..=2, _) => "Q".to_string(),
            (d, false) => format!("Q(zeta_{d})"),
            (d, true) => format!("Q(zeta_{d})^+"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_c4() {
        let g = group_invariants(4).unwrap();
        assert_eq!((g.ell, g.a, g.b), (2, 2, 1));
        assert_eq!(g.gd_sizes.get(&4), Some(&2));
        assert!(group_invariants(1).is_err());
    }

    #[test]
    fn local_splitting() {
        let k = CyclotomicField::full(4);
        assert_eq!(k.local_data(5).unwrap(), (1, 2));
        assert_eq!(k.local_data(3).unwrap(), (2, 1));
        assert_eq!(k.local_data(2).unwrap(), (1, 1));
        let r = CyclotomicField::real_subfield(7);
        assert_eq!(r.degree(), 3);
        assert_eq!(r.local_data(13).unwrap(), (1, 3));
        assert_eq!(r.local_data(2).unwrap(), (3, 1));
    }
}
