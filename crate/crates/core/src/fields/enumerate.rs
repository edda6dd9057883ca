use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::character::{conductor_exponents, mixed_radix, DirichletCharacter};
use super::units::{unit_group_structure, UnitComponent, UnitGroup};
use crate::arith::{
    divisors, euler_phi, factorize_with, integer_root, spf_sieve, valuation, TruncPoly,
};
use crate::error::{invalid, Error, Result};

/// Largest conductor the enumerator will scan.
pub const MAX_CONDUCTOR: u64 = 50_000_000;

/// All characters modulo `m` of exact order `n`.
pub fn characters_of_exact_order(m: u64, n: u64) -> Result<Vec<DirichletCharacter>> {
    if n == 0 {
        return invalid("order must be positive");
    }
    let group = Arc::new(unit_group_structure(m)?);
    // a_i must be a multiple of ord_i / gcd(n, ord_i).
    let steps: Vec<u64> = group
        .components
        .iter()
        .map(|c| c.order / n.gcd(&c.order))
        .collect();
    let counts: Vec<u64> = group
        .components
        .iter()
        .zip(&steps)
        .map(|(c, s)| c.order / s)
        .collect();
    let mut out = Vec::new();
    for idx in mixed_radix(&counts) {
        let exps = idx.iter().zip(&steps).map(|(i, s)| i * s).collect();
        let chi = DirichletCharacter::new(group.clone(), exps)?;
        if chi.order() == n {
            out.push(chi);
        }
    }
    Ok(out)
}

/// A Galois orbit of primitive characters of exact order `n`, i.e. one cyclic
/// field of degree `n`.
#[derive(Clone, Debug)]
pub struct CharacterOrbit {
    pub n: u64,
    pub conductor: u64,
    /// Absolute value of the field discriminant.
    pub discriminant: u64,
    pub orbit_size: u64,
    pub representative: DirichletCharacter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldRow {
    pub n: u64,
    pub disc: u64,
    pub conductor: u64,
    pub orbit_size: u64,
}

impl CharacterOrbit {
    pub fn row(&self) -> FieldRow {
        FieldRow {
            n: self.n,
            disc: self.discriminant,
            conductor: self.conductor,
            orbit_size: self.orbit_size,
        }
    }
}

/// Cyclic degree-`n` fields with discriminant at most `x`, sorted by
/// discriminant.
pub fn count_fields(n: u64, x: u64) -> Result<Vec<CharacterOrbit>> {
    if n < 2 {
        return invalid("degree must be at least 2");
    }
    let phi = euler_phi(n);
    let bound = integer_root(x, phi.min(u32::MAX as u64) as u32);
    count_fields_with_bound(n, x, bound)
}

/// As [`count_fields`], scanning conductors up to `max_conductor`; any bound
/// at least `x^(1/phi(n))` gives the same result.
pub fn count_fields_with_bound(n: u64, x: u64, max_conductor: u64) -> Result<Vec<CharacterOrbit>> {
    if n < 2 {
        return invalid("degree must be at least 2");
    }
    if max_conductor > MAX_CONDUCTOR {
        return Err(Error::SearchBound(format!(
            "conductor bound {max_conductor} exceeds {MAX_CONDUCTOR}"
        )));
    }
    let f_max = max_conductor as usize;
    let spf = spf_sieve(f_max);
    let phi_n = euler_phi(n);
    let units: Vec<u64> = (1..n).filter(|k| k.gcd(&n) == 1).collect();
    let mut local_cache: BTreeMap<(u64, u32), Vec<Vec<u64>>> = BTreeMap::new();
    let mut out = Vec::new();

    for f in 2..=max_conductor {
        let fac = factorize_with(f, &spf);
        let mut locals = Vec::with_capacity(fac.len());
        let mut ok = true;
        for &(p, e) in &fac {
            let l = local_cache
                .entry((p, e))
                .or_insert_with(|| local_primitive_exponents(p, e, n));
            if l.is_empty() {
                ok = false;
                break;
            }
            locals.push(l.clone());
        }
        if !ok {
            continue;
        }
        let group = Arc::new(unit_group_structure(f)?);
        let sizes: Vec<u64> = locals.iter().map(|l| l.len() as u64).collect();
        for pick in mixed_radix(&sizes) {
            let exps: Vec<u64> = pick
                .iter()
                .zip(&locals)
                .flat_map(|(&i, l)| l[i as usize].iter().copied())
                .collect();
            if order_of(&group, &exps) != n {
                continue;
            }
            let canonical = units.iter().all(|&k| power_exps(&group, &exps, k) >= exps);
            if !canonical {
                continue;
            }
            let Some(disc) = discriminant(&group, &exps, n, x)? else {
                continue;
            };
            out.push(CharacterOrbit {
                n,
                conductor: f,
                discriminant: disc,
                orbit_size: phi_n,
                representative: DirichletCharacter::new(group.clone(), exps)?,
            });
        }
    }
    out.sort_by(|a, b| {
        (a.discriminant, a.conductor, a.representative.exponents()).cmp(&(
            b.discriminant,
            b.conductor,
            b.representative.exponents(),
        ))
    });
    Ok(out)
}

/// Number of homomorphisms from the absolute Galois group of `Q` to `C_n`
/// whose etale algebra has discriminant at most `x`.
pub fn hom_count(n: u64, x: u64) -> Result<u64> {
    let mut total = 0u64;
    for d in divisors(n) {
        if d == 1 {
            total += 1;
            continue;
        }
        let bound = integer_root(x, (n / d) as u32);
        let fields = count_fields(d, bound)?;
        total += euler_phi(d) * fields.len() as u64;
    }
    Ok(total)
}

/// Local Euler factor at `p` of the discriminant series of `C_n`-etale
/// algebras, from enumerating characters of `Z_p^*` of order dividing `n`.
pub fn local_factor_from_characters(n: u64, p: u64) -> Result<TruncPoly> {
    if n < 2 {
        return invalid("degree must be at least 2");
    }
    let k = valuation(n, p) + 2;
    let m = p.checked_pow(k).ok_or(Error::Overflow("local modulus"))?;
    let group = Arc::new(unit_group_structure(m)?);
    let mut exponents = Vec::new();
    for d in divisors(n) {
        for chi in characters_of_exact_order(m, d)? {
            let mut s = 0u64;
            let mut c = chi.clone();
            for _ in 0..d {
                s += conductor_exponents(&group, c.exponents())
                    .first()
                    .map_or(0, |&(_, e)| e as u64);
                c = c.mul(&chi);
            }
            exponents.push((n / d * s) as usize);
        }
    }
    let deg = exponents.iter().copied().max().unwrap_or(0);
    let mut coeffs = vec![0i64; deg + 1];
    for e in exponents {
        coeffs[e] += 1;
    }
    Ok(TruncPoly::from_i64(&coeffs, deg))
}

impl DirichletCharacter {
    /// Pointwise product of two characters with the same modulus.
    pub fn mul(&self, other: &Self) -> Self {
        let exps = self
            .exponents()
            .iter()
            .zip(other.exponents())
            .zip(&self.group().components)
            .map(|((a, b), c)| (a + b) % c.order)
            .collect();
        DirichletCharacter::new(self.group().clone(), exps).expect("same group")
    }
}

/// Exponent vectors (on the components of `p^e`) of primitive characters of
/// `(Z/p^e)^*` with order dividing `n`.
fn local_primitive_exponents(p: u64, e: u32, n: u64) -> Vec<Vec<u64>> {
    let Ok(group) = unit_group_structure(p.pow(e)) else {
        return Vec::new();
    };
    let steps: Vec<u64> = group
        .components
        .iter()
        .map(|c| c.order / n.gcd(&c.order))
        .collect();
    let counts: Vec<u64> = group
        .components
        .iter()
        .zip(&steps)
        .map(|(c, s)| c.order / s)
        .collect();
    mixed_radix(&counts)
        .map(|idx| {
            idx.iter()
                .zip(&steps)
                .map(|(i, s)| i * s)
                .collect::<Vec<u64>>()
        })
        .filter(|exps| conductor_exponents(&group, exps) == vec![(p, e)])
        .collect()
}

fn order_of(group: &UnitGroup, exps: &[u64]) -> u64 {
    exps.iter()
        .zip(&group.components)
        .fold(1, |l, (&a, c)| l.lcm(&(c.order / a.gcd(&c.order))))
}

fn power_exps(group: &UnitGroup, exps: &[u64], k: u64) -> Vec<u64> {
    exps.iter()
        .zip(&group.components)
        .map(|(&a, c): (&u64, &UnitComponent)| a * k % c.order)
        .collect()
}

/// Conductor-discriminant product, or `None` once it exceeds `x`.
fn discriminant(group: &UnitGroup, exps: &[u64], n: u64, x: u64) -> Result<Option<u64>> {
    let mut disc = 1u64;
    for k in 1..n {
        let f: u64 = conductor_exponents(group, &power_exps(group, exps, k))
            .into_iter()
            .map(|(p, e)| p.pow(e))
            .product();
        disc = match disc.checked_mul(f) {
            Some(v) if v <= x => v,
            _ => return Ok(None),
        };
    }
    Ok(Some(disc))
}
