use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::euler::{class_euler_product, ClassEulerProduct, Estimate, PrimeClasses};
use crate::arith::{divisors, group_invariants, primes_up_to, CyclotomicField, TruncPoly};
use crate::error::{Error, Result};
use crate::lfunctions::{hurwitz_zeta_eval, CyclotomicZeta, EvalOptions};
use crate::series::{
    quotient_with, zeta_factors, LocalFactorSystem, WildSource, WildTable, ZetaFactor,
};

/// A named constant with the factors it was assembled from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantReport {
    pub name: String,
    pub value: f64,
    pub error_bound: f64,
    pub factors: BTreeMap<String, f64>,
}

impl ConstantReport {
    fn new(name: &str, e: Estimate, factors: &[(&str, f64)]) -> Self {
        ConstantReport {
            name: name.to_string(),
            value: e.value,
            error_bound: e.error_bound,
            factors: factors.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

fn zeta_real(s: f64) -> Result<Estimate> {
    let e = hurwitz_zeta_eval(Complex64::new(s, 0.0), 1.0, &EvalOptions::default())?;
    Ok(Estimate {
        value: e.value.re,
        error_bound: e.error_bound,
    })
}

/// The coefficients of `X^{1/2}` and `X^{1/3}` in the count of
/// `C_4`-etale algebras, built from a dyadic Euler factor `W`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C4Constants {
    /// Residue of `D(s) X^s / s` at `s = 1/2`, divided by `X^{1/2}`.
    pub residue_half: ConstantReport,
    /// `residue_half - 1/zeta(2)`.
    pub c2: ConstantReport,
    pub c3: ConstantReport,
}

/// Constants for the dyadic factor of `source`.
pub fn c4_constants(source: &WildSource) -> Result<C4Constants> {
    let w = LocalFactorSystem::new(4, source)?.factor(2).clone();
    c4_constants_with(&w, 1_000_000)
}

/// Constants for an explicit dyadic factor `W(u)`, `u = 2^{-s}`.
pub fn c4_constants_with(w: &TruncPoly, truncation: u64) -> Result<C4Constants> {
    let z2 = zeta_real(2.0)?;
    let inv_z2 = z2.recip()?;

    let u2 = 2f64.powf(-0.5);
    let pre2 = w.eval_f64(u2) * (1.0 - u2 * u2) * (4.0 / 3.0);
    let mut prod2 = ClassEulerProduct::new(
        PrimeClasses::mod4(1),
        &[1, 0, 0, 2, -1, -2],
        &[1, 0, 0, 0, -1],
        2,
    );
    prod2.truncation = truncation;
    let prod2 = class_euler_product(&prod2)?;
    let residue = inv_z2.scale(pre2).mul(prod2);
    let c2 = residue.add(inv_z2.scale(-1.0));

    let u3 = 2f64.powf(-1.0 / 3.0);
    let pre3 = w.eval_f64(u3) * (1.0 - u3 * u3) * (1.0 - u3 * u3 * u3);
    let z23 = zeta_real(2.0 / 3.0)?;
    let l1 = CyclotomicZeta::new(CyclotomicField::full(4))?.residue()?;
    let l1 = Estimate {
        value: l1.value.re,
        error_bound: l1.error_bound,
    };
    let mut a = ClassEulerProduct::new(
        PrimeClasses::odd(),
        &[1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1],
        &[1],
        3,
    );
    a.truncation = truncation;
    let a = class_euler_product(&a)?;
    let mut b = ClassEulerProduct::new(
        PrimeClasses::mod4(1),
        &[1, 0, 0, 0, -1, -2, -3, 2, 4, 2, -1, -2],
        &[1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1],
        3,
    );
    b.truncation = truncation;
    let b = class_euler_product(&b)?;
    let c3 = z23.mul(l1).scale(pre3).mul(a).mul(b);

    Ok(C4Constants {
        residue_half: ConstantReport::new(
            "residue_half_C4",
            residue,
            &[
                ("prefactor", pre2),
                ("inverse_zeta_2", inv_z2.value),
                ("product_1_mod_4", prod2.value),
            ],
        ),
        c2: ConstantReport::new(
            "c2_C4",
            c2,
            &[
                ("prefactor", pre2),
                ("inverse_zeta_2", inv_z2.value),
                ("product_1_mod_4", prod2.value),
            ],
        ),
        c3: ConstantReport::new(
            "c3_C4",
            c3,
            &[
                ("zeta_2_3", z23.value),
                ("L_1_chi_4", l1.value),
                ("prefactor", pre3),
                ("product_odd", a.value),
                ("product_1_mod_4", b.value),
            ],
        ),
    })
}

/// The published closed form of `c_2(C_4)`.
pub fn c2_c4() -> Result<ConstantReport> {
    Ok(c4_constants_with(
        WildTable::published_c4()
            .get(4, 2)
            .expect("table has (4, 2)"),
        1_000_000,
    )?
    .c2)
}

/// The published closed form of `c_3(C_4)`.
pub fn c3_c4() -> Result<ConstantReport> {
    Ok(c4_constants_with(
        WildTable::published_c4()
            .get(4, 2)
            .expect("table has (4, 2)"),
        1_000_000,
    )?
    .c3)
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Coefficient of `X^{1/a}` in the count of `C_n`-etale algebras, for groups
/// whose leading pole is simple.
pub fn leading_residue(n: u64, source: &WildSource) -> Result<ConstantReport> {
    leading_residue_with(n, source, 1_000_000)
}

pub fn leading_residue_with(
    n: u64,
    source: &WildSource,
    truncation: u64,
) -> Result<ConstantReport> {
    let g = group_invariants(n)?;
    if g.b != 1 {
        return Err(Error::UnsupportedGroup {
            n,
            reason: format!(
                "leading pole has order {}; only simple poles are handled",
                g.b
            ),
        });
    }
    let a = g.a;
    let factors = zeta_factors(n)?;
    let s0 = 1.0 / a as f64;
    let mut value = Estimate::exact(1.0);
    let mut parts: Vec<(String, f64)> = Vec::new();
    for z in &factors {
        let zeta = CyclotomicZeta::new(z.field)?;
        if z.multiplier == a {
            if z.exponent != Ratio::from_integer(1) {
                return Err(Error::Precondition(format!(
                    "leading factor has exponent {}",
                    z.exponent
                )));
            }
            // Res_{s=1/a} zeta_K(a s) X^s / s = res_K X^{1/a}.
            let r = zeta.residue()?;
            let r = Estimate {
                value: r.value.re,
                error_bound: r.error_bound,
            };
            parts.push((format!("residue_{}", z.field.label()), r.value));
            value = value.mul(r);
        } else {
            let arg = z.multiplier as f64 * s0;
            let e = zeta.eval(Complex64::new(arg, 0.0), &EvalOptions::default())?;
            let e = Estimate {
                value: e.value.re,
                error_bound: e.error_bound,
            }
            .powf(ratio_f64(z.exponent))?;
            parts.push((
                format!("{}({}s)^{}", z.field.label(), z.multiplier, z.exponent),
                e.value,
            ));
            value = value.mul(e);
        }
    }
    let sys = LocalFactorSystem::new(n, source)?;
    let h = euler_product_h(n, &factors, &sys, a, truncation)?;
    parts.push(("H".into(), h.value));
    value = value.mul(h);
    let parts: Vec<(&str, f64)> = parts.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    Ok(ConstantReport::new(
        &format!("leading_residue_C{n}"),
        value,
        &parts,
    ))
}

/// `H(1/a) = prod_p D_p(u) prod_Z (1 - u^{k f})^{g e}` at `u = p^{-1/a}`.
fn euler_product_h(
    n: u64,
    factors: &[ZetaFactor],
    sys: &LocalFactorSystem,
    a: u64,
    truncation: u64,
) -> Result<Estimate> {
    let modulus = factors
        .iter()
        .fold(n, |m, z| num_integer::lcm(m, z.field.conductor.max(1)));
    // Per residue class: the (1 - u^m)^e exponents.
    let mut classes: BTreeMap<u64, Vec<(u64, f64)>> = BTreeMap::new();
    let mut tail_c = 0.0f64;
    let mut decay = usize::MAX;
    let trunc = (4 * a + 4) as usize;
    let pp = truncation as f64;
    for r in (1..modulus).filter(|r| num_integer::gcd(*r, modulus) == 1) {
        let mut exps: BTreeMap<u64, Ratio<i64>> = BTreeMap::new();
        for z in factors {
            let (f, gg) = z.field.local_data(r)?;
            *exps.entry(z.multiplier * f).or_default() += z.exponent * gg as i64;
        }
        classes.insert(r, exps.iter().map(|(&m, &e)| (m, ratio_f64(e))).collect());
        let hp = quotient_with(factors, r, sys.factor(r % n), trunc)?;
        if let Some(m) = hp.min_positive_degree() {
            decay = decay.min(m);
            let c: f64 = hp
                .terms()
                .filter(|&(j, _)| j >= m)
                .map(|(j, v)| {
                    v.to_f64().unwrap_or(f64::INFINITY).abs()
                        * pp.powf(-((j - m) as f64) / a as f64)
                })
                .sum();
            tail_c = tail_c.max(c);
        }
    }
    let w = if decay == usize::MAX {
        (trunc + 1) as f64 / a as f64
    } else {
        decay as f64 / a as f64
    };
    if !(w > 1.0) {
        return Err(Error::Precondition(format!("H decays like p^-{w}")));
    }
    let c = 2.0 * tail_c.max(1.0);
    let tail = 2.0 * c * pp.powf(1.0 - w) / (w - 1.0);

    let local = |p: u64| -> Result<f64> {
        let u = (p as f64).powf(-1.0 / a as f64);
        let d = sys.factor(p).eval_f64(u);
        let mut v = d.ln();
        if n.is_multiple_of(p) {
            for z in factors {
                let (f, gg) = z.field.local_data(p)?;
                let e = ratio_f64(z.exponent) * gg as f64;
                v += e * (-u.powi((z.multiplier * f) as i32)).ln_1p();
            }
        } else {
            for &(m, e) in &classes[&(p % modulus)] {
                v += e * (-u.powf(m as f64)).ln_1p();
            }
        }
        Ok(v)
    };
    let primes = primes_up_to(truncation);
    let logs: Vec<f64> = primes
        .par_chunks(4096)
        .map(|chunk| chunk.iter().map(|&p| local(p)).sum::<Result<f64>>())
        .collect::<Result<_>>()?;
    let v = logs.iter().sum::<f64>().exp();
    Ok(Estimate {
        value: v,
        error_bound: v * (tail.exp_m1() + 8.0 * f64::EPSILON * primes.len() as f64),
    })
}

/// Values entering the nonvanishing criterion for the `X^{1/(n(1-1/d))}` term.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonvanishingReport {
    pub n: u64,
    pub d: u64,
    /// `(m, argument, value, error_bound)` for each `zeta_{Q(zeta_m)}` factor.
    pub factors: Vec<(u64, f64, f64, f64)>,
    pub product: f64,
    pub error_bound: f64,
    pub nonvanishing: bool,
}

/// `prod_{m | n, 1 < m < d} zeta_{Q(zeta_m)}((1 - 1/m)/(1 - 1/d))`, certified
/// nonzero when `|value| > 10 * error`.
pub fn nonvanishing_check(n: u64, d: u64) -> Result<NonvanishingReport> {
    if d <= 1 || !n.is_multiple_of(d) {
        return Err(Error::InvalidArgument(format!(
            "{d} is not a divisor of {n} above 1"
        )));
    }
    let mut est = Estimate::exact(1.0);
    let mut factors = Vec::new();
    for m in divisors(n).into_iter().filter(|&m| m > 1 && m < d) {
        let arg = (1.0 - 1.0 / m as f64) / (1.0 - 1.0 / d as f64);
        assert!(arg < 1.0, "argument reaches the pole");
        let e = CyclotomicZeta::new(CyclotomicField::full(m))?
            .eval(Complex64::new(arg, 0.0), &EvalOptions::default())?;
        let e = Estimate {
            value: e.value.re,
            error_bound: e.error_bound + e.value.im.abs(),
        };
        factors.push((m, arg, e.value, e.error_bound));
        est = est.mul(e);
    }
    Ok(NonvanishingReport {
        n,
        d,
        factors,
        product: est.value,
        error_bound: est.error_bound,
        nonvanishing: est.value.abs() > 10.0 * est.error_bound,
    })
}
