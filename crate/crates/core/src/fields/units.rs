use serde::Serialize;

use crate::arith::{crt, factorize, primitive_root_prime_power};
use crate::error::{invalid, Result};

/// One cyclic factor of `(Z/mZ)^*`, attached to the prime power it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitComponent {
    pub prime: u64,
    pub exponent: u32,
    /// Generator as a residue modulo the full modulus.
    pub generator: u64,
    pub order: u64,
    /// `true` for the `-1` factor of `(Z/2^e)^*`, `false` otherwise.
    pub sign: bool,
}

/// Cyclic decomposition of `(Z/mZ)^*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGroup {
    pub modulus: u64,
    pub components: Vec<UnitComponent>,
}

impl UnitGroup {
    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.order).collect()
    }

    pub fn order(&self) -> u64 {
        self.components.iter().map(|c| c.order).product()
    }
}

/// Decomposes `(Z/mZ)^*` into cyclic factors, one (or two at the prime 2)
/// per prime power dividing `m`.
pub fn unit_group_structure(m: u64) -> Result<UnitGroup> {
    if m == 0 {
        return invalid("modulus must be positive");
    }
    let mut components = Vec::new();
    for (p, e) in factorize(m) {
        let pe = p.pow(e);
        let rest = m / pe;
        let lift = |g: u64| crt(&[(g, pe), (1, rest)]);
        if p == 2 {
            if e >= 2 {
                components.push(UnitComponent {
                    prime: 2,
                    exponent: e,
                    generator: lift(pe - 1),
                    order: 2,
                    sign: true,
                });
            }
            if e >= 3 {
                components.push(UnitComponent {
                    prime: 2,
                    exponent: e,
                    generator: lift(5),
                    order: 1 << (e - 2),
                    sign: false,
                });
            }
        } else {
            let g = primitive_root_prime_power(p, e)?;
            components.push(UnitComponent {
                prime: p,
                exponent: e,
                generator: lift(g),
                order: pe / p * (p - 1),
                sign: false,
            });
        }
    }
    Ok(UnitGroup {
        modulus: m,
        components,
    })
}
