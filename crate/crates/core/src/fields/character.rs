use std::sync::Arc;

use num_complex::Complex;
use num_integer::Integer;

use super::units::{unit_group_structure, UnitGroup};
use crate::arith::{mul_mod, pow_mod, valuation};
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Dirichlet character given by exponents on the generators of `(Z/mZ)^*`:
/// `chi(g_i) = exp(2 pi i a_i / ord_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
}

impl DirichletCharacter {
    pub fn new(group: Arc<UnitGroup>, exps: Vec<u64>) -> Result<Self> {
        if exps.len() != group.components.len() {
            return invalid("exponent vector length does not match the unit group");
        }
        if exps
            .iter()
            .zip(&group.components)
            .any(|(a, c)| *a >= c.order)
        {
            return invalid("exponent out of range");
        }
        Ok(DirichletCharacter { group, exps })
    }

    pub fn principal(m: u64) -> Result<Self> {
        let group = Arc::new(unit_group_structure(m)?);
        let exps = vec![0; group.components.len()];
        Ok(DirichletCharacter { group, exps })
    }

    /// Every character modulo `m`.
    pub fn all(m: u64) -> Result<Vec<Self>> {
        let group = Arc::new(unit_group_structure(m)?);
        let orders = group.orders();
        Ok(mixed_radix(&orders)
            .map(|exps| DirichletCharacter {
                group: group.clone(),
                exps,
            })
            .collect())
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// Exponent of the unit group: every value is a power of `exp(2 pi i / e)`.
    pub fn value_denominator(&self) -> u64 {
        self.group.orders().into_iter().fold(1, |l, o| l.lcm(&o))
    }

    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.group.components)
            .fold(1, |l, (&a, c)| l.lcm(&(c.order / a.gcd(&c.order))))
    }

    pub fn pow(&self, k: u64) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.components)
            .map(|(&a, c)| ((a as u128 * k as u128) % c.order as u128) as u64)
            .collect();
        DirichletCharacter {
            group: self.group.clone(),
            exps,
        }
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    /// `(p, f_p)` with `p^{f_p}` the exact power of `p` in the conductor.
    pub fn conductor_exponents(&self) -> Vec<(u64, u32)> {
        conductor_exponents(&self.group, &self.exps)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor_exponents()
            .into_iter()
            .map(|(p, e)| p.pow(e))
            .product()
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// Values as numerators over [`Self::value_denominator`]; `None` where
    /// `gcd(r, m) > 1`. Indexed by residue `0..m`.
    pub fn value_table(&self) -> Vec<Option<u64>> {
        let m = self.modulus();
        let den = self.value_denominator();
        let mut table = vec![None; m as usize];
        let comps = &self.group.components;
        let orders = self.group.orders();
        for e in mixed_radix(&orders) {
            let mut r = 1 % m;
            let mut angle = 0u64;
            for (i, c) in comps.iter().enumerate() {
                r = mul_mod(r, pow_mod(c.generator, e[i], m), m);
                angle = (angle + self.exps[i] * e[i] % c.order * (den / c.order)) % den;
            }
            table[r as usize] = Some(angle);
        }
        if m == 1 {
            table[0] = Some(0);
        }
        table
    }

    pub fn value<T: Real>(&self, r: u64) -> Complex<T> {
        let den = self.value_denominator();
        match self.value_table()[(r % self.modulus()) as usize] {
            None => Complex::new(T::zero(), T::zero()),
            Some(a) => root_of_unity(a, den),
        }
    }

    pub fn is_even(&self) -> bool {
        let m = self.modulus();
        m <= 2 || self.value_table()[(m - 1) as usize] == Some(0)
    }

    pub fn is_real(&self) -> bool {
        self.order() <= 2
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Result<Self> {
        let f = self.conductor();
        let m = self.modulus();
        if f == m {
            return Ok(self.clone());
        }
        let table = self.value_table();
        let den = self.value_denominator();
        let group = Arc::new(unit_group_structure(f)?);
        let mut exps = Vec::with_capacity(group.components.len());
        for c in &group.components {
            let mut r = c.generator % f.max(1);
            while r.gcd(&m) != 1 || r == 0 {
                r += f;
            }
            let angle = table[(r % m) as usize].expect("lift is a unit");
            let num = angle * c.order;
            if !num.is_multiple_of(den) {
                return invalid("character does not factor through its conductor");
            }
            exps.push(num / den % c.order);
        }
        DirichletCharacter::new(group, exps)
    }
}

pub(crate) fn root_of_unity<T: Real>(num: u64, den: u64) -> Complex<T> {
    let num = num % den;
    // Exact values at the quarter turns keep real characters real.
    match (4 * num).checked_rem(den) {
        Some(0) => match 4 * num / den {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        },
        _ => {
            let theta = T::TAU() * T::of(num as f64) / T::of(den as f64);
            Complex::new(theta.cos(), theta.sin())
        }
    }
}

pub(crate) fn conductor_exponents(group: &UnitGroup, exps: &[u64]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut sign2 = false;
    let mut five2 = 1u64;
    let mut has2 = false;
    for (c, &a) in group.components.iter().zip(exps) {
        let o = c.order / a.gcd(&c.order);
        if c.prime == 2 {
            has2 = true;
            if c.sign {
                sign2 = a != 0;
            } else {
                five2 = o;
            }
        } else if o > 1 {
            out.push((c.prime, 1 + valuation(o, c.prime)));
        }
    }
    if has2 {
        let e = if five2 > 1 {
            valuation(five2, 2) + 2
        } else if sign2 {
            2
        } else {
            0
        };
        if e > 0 {
            out.insert(0, (2, e));
        }
    }
    out
}

/// Iterates all exponent vectors in `prod [0, orders_i)`.
pub(crate) fn mixed_radix(orders: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let total: u64 = orders.iter().product();
    (0..total).map(move |mut idx| {
        orders
            .iter()
            .map(|&o| {
                let d = idx % o;
                idx /= o;
                d
            })
            .collect()
    })
}
