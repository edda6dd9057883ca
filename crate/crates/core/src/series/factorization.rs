use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{group_invariants, CyclotomicField, TruncPoly};
use crate::error::{Error, Result};

use super::local::tame_local_factor;

/// `zeta_K(k s)^exponent`, one factor of the main-term decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaFactor {
    pub field: CyclotomicField,
    pub multiplier: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub exponent: Ratio<i64>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Zeta factors `Z` with `D(s) = H(s) * prod Z`, where `H` converges
/// absolutely for `Re s > 1/(2a + 1)`.
///
/// For odd `ell`, primes `p = +-1 (mod ell)` split into several primes of
/// `Q(zeta_ell)` and its real subfield, so the exponents of the `2a s` terms
/// carry a division by `phi(ell)`.
pub fn zeta_factors(n: u64) -> Result<Vec<ZetaFactor>> {
    build_factors(n, true)
}

/// The same decomposition with the `2a s` exponents taken without the
/// division by `phi(ell)`. Agrees with [`zeta_factors`] when `ell = 2`.
pub fn published_zeta_factors(n: u64) -> Result<Vec<ZetaFactor>> {
    build_factors(n, false)
}

fn build_factors(n: u64, split_multiplicity: bool) -> Result<Vec<ZetaFactor>> {
    let g = group_invariants(n)?;
    let ell = g.ell as i64;
    let gl = g.gd_sizes[&g.ell] as i64;
    // For ell = 2 the classes 1 and -1 coincide and no correction is needed.
    let split_multiplicity = split_multiplicity && ell > 2;
    let scale = if split_multiplicity { ell - 1 } else { 1 };
    let mut out: Vec<ZetaFactor> = Vec::new();
    let mut push = |field: CyclotomicField, multiplier: u64, exponent: Ratio<i64>| {
        let field = if field.conductor <= 2 {
            CyclotomicField::full(1)
        } else {
            field
        };
        match out
            .iter_mut()
            .find(|z| z.field == field && z.multiplier == multiplier)
        {
            Some(z) => z.exponent += exponent,
            None => out.push(ZetaFactor {
                field,
                multiplier,
                exponent,
            }),
        }
    };
    for (&d, &size) in &g.gd_sizes {
        if d > 1 {
            let phi = crate::arith::euler_phi(d) as i64;
            push(
                CyclotomicField::full(d),
                g.k(d),
                Ratio::new(size as i64, phi),
            );
        }
    }
    let real = if split_multiplicity {
        Ratio::new(-gl, ell - 1)
    } else {
        Ratio::new(-gl, 2)
    };
    push(CyclotomicField::real_subfield(g.ell), 2 * g.a, real);
    let e = -Ratio::new(2 * ell - 3, 2 * ell - 2) * gl * gl + Ratio::new(ell - 2, 2) * gl;
    push(CyclotomicField::full(g.ell), 2 * g.a, e / scale);
    out.retain(|z| !z.exponent.is_zero());
    Ok(out)
}

/// Euler factor of `H` at `p` given the factor `D_p` of the series.
///
/// `p` is the prime itself when it divides `n`; otherwise any representative
/// of its class modulo `n`.
pub fn quotient_local_factor(n: u64, p: u64, d_p: &TruncPoly, trunc: usize) -> Result<TruncPoly> {
    quotient_with(&zeta_factors(n)?, p, d_p, trunc)
}

/// Euler factor of `D_p / prod Z_p` for an arbitrary list of zeta factors.
pub fn quotient_with(
    factors: &[ZetaFactor],
    p: u64,
    d_p: &TruncPoly,
    trunc: usize,
) -> Result<TruncPoly> {
    // Collect (1 - u^m)^e exponents by m.
    let mut exps: BTreeMap<u64, Ratio<i64>> = BTreeMap::new();
    for z in factors {
        let (f, g) = z.field.local_data(p)?;
        *exps.entry(z.multiplier * f).or_insert_with(Ratio::zero) += z.exponent * g as i64;
    }
    let mut h = d_p.with_trunc(trunc);
    for (m, e) in exps {
        if e.is_zero() {
            continue;
        }
        if !e.is_integer() {
            return Err(Error::Precondition(format!(
                "non-integral local exponent {e} at p = {p}"
            )));
        }
        h = h.mul(&TruncPoly::binomial_power(
            1,
            m as usize,
            e.to_integer(),
            trunc,
        )?);
    }
    Ok(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassResidual {
    pub modulus: u64,
    pub residue: u64,
    pub local_factor: String,
    pub residual: String,
    /// Degrees in `1..=2a` with a nonzero residual coefficient.
    pub failures: Vec<(usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub n: u64,
    pub a: u64,
    pub trunc: usize,
    pub classes: Vec<ClassResidual>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.failures.is_empty())
    }

    /// Converts the first failure into an error.
    pub fn into_result(self) -> Result<Self> {
        for c in &self.classes {
            if let Some((degree, value)) = c.failures.first() {
                return Err(Error::FactorizationFailure {
                    modulus: c.modulus,
                    residue: c.residue,
                    degree: *degree,
                    value: value.clone(),
                });
            }
        }
        Ok(self)
    }
}

/// Checks that the tame local factors of `D` agree with the zeta factorization
/// up to `O(u^{2a+1})` for every unit class modulo `n`.
pub fn zeta_factorization_check(n: u64, trunc: usize) -> Result<FactorizationReport> {
    factorization_check_with(n, &zeta_factors(n)?, trunc)
}

/// [`zeta_factorization_check`] against an explicit list of zeta factors.
pub fn factorization_check_with(
    n: u64,
    factors: &[ZetaFactor],
    trunc: usize,
) -> Result<FactorizationReport> {
    let g = group_invariants(n)?;
    let two_a = 2 * g.a as usize;
    if trunc < two_a {
        return Err(Error::InvalidArgument(format!(
            "truncation {trunc} is below 2a = {two_a}"
        )));
    }
    let mut classes = Vec::new();
    for r in 1..n.max(2) {
        if r.gcd(&n) != 1 {
            continue;
        }
        let d_p = tame_local_factor(n, r)?;
        let h = quotient_with(factors, r, &d_p, trunc)?;
        let failures = (1..=two_a)
            .map(|j| (j, h.coeff(j)))
            .filter(|(_, c)| *c != BigInt::zero())
            .map(|(j, c)| (j, c.to_string()))
            .collect();
        classes.push(ClassResidual {
            modulus: n,
            residue: r,
            local_factor: d_p.to_string(),
            residual: h.to_string(),
            failures,
        });
    }
    Ok(FactorizationReport {
        n,
        a: g.a,
        trunc,
        classes,
    })
}
