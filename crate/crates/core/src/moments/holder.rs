use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{group_invariants, is_prime, CyclotomicField};
use crate::error::{Error, Result};

/// One Holder factor `(int_0^T |zeta_K(k s)|^{power} dt)^{weight}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderFactor {
    pub field: CyclotomicField,
    pub multiplier: u64,
    /// `2m`.
    pub power: i64,
    #[serde(serialize_with = "ser_ratio")]
    pub weight: Ratio<i64>,
    /// Power of `log T` in the moment bound at `sigma = 1/(2a)`.
    #[serde(serialize_with = "ser_ratio")]
    pub log_power: Ratio<i64>,
}

impl HolderFactor {
    /// Exponent of `zeta_K(k s)` this factor accounts for.
    pub fn zeta_exponent(&self) -> Ratio<i64> {
        self.weight * self.power
    }
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderBudget {
    pub n: u64,
    pub factors: Vec<HolderFactor>,
    pub eta: f64,
    pub beta: i64,
    /// `|zeta(2a s)|^{-1} << log T` is used instead of a moment.
    pub uses_pointwise_log: bool,
}

/// Log-power of `int_0^T |zeta_K(sigma' + it)|^{2m} dt` from the mean-value
/// bounds: `m^2 [K:Q]` exactly on the line `sigma' = 1 - 1/(m [K:Q])`, zero to
/// its right, and zero for negative powers on `sigma' >= 1`.
pub fn moment_log_power(
    field: CyclotomicField,
    power: i64,
    sigma: Ratio<i64>,
) -> Result<Ratio<i64>> {
    let degree = field.degree() as i64;
    if power < 0 {
        if sigma < Ratio::one() {
            return Err(Error::Domain(format!(
                "negative moment of {} left of the 1-line",
                field.label()
            )));
        }
        return Ok(Ratio::zero());
    }
    if power == 0 {
        return Ok(Ratio::zero());
    }
    let m = Ratio::new(power, 2);
    let edge = Ratio::one() - (m * degree).recip();
    if sigma > edge {
        Ok(Ratio::zero())
    } else if sigma == edge {
        Ok(m * m * degree)
    } else {
        Err(Error::Domain(format!(
            "moment {power} of {} at sigma = {sigma} lies left of {edge}",
            field.label()
        )))
    }
}

/// Field, multiplier, power and weight of one Holder factor.
type FactorPlan = (CyclotomicField, u64, i64, Ratio<i64>);

/// The Holder decomposition bounding `int_0^T |D(sigma + it)| dt` at
/// `sigma = 1/(2a)` for `C_n`, `n in {3, 4, 6, 8, 16}` or `n = 2p`, `p >= 5`.
pub fn holder_budget(n: u64) -> Result<HolderBudget> {
    let q = CyclotomicField::full;
    let w = Ratio::new;
    let (plan, pointwise): (Vec<FactorPlan>, bool) = match n {
        3 => (
            vec![
                (q(3), 2, 2, w(1, 2)),
                (q(1), 4, -4, w(1, 4)),
                (q(3), 4, -4, w(1, 4)),
            ],
            false,
        ),
        4 => (
            vec![
                (q(1), 2, 4, w(1, 4)),
                (q(4), 3, 4, w(1, 4)),
                (q(1), 4, -2, w(1, 2)),
            ],
            false,
        ),
        6 => (
            vec![
                (q(1), 3, 4, w(1, 4)),
                (q(3), 4, 2, w(1, 2)),
                (q(3), 5, 6, w(1, 6)),
                (q(1), 6, -12, w(1, 12)),
            ],
            false,
        ),
        8 => (
            vec![
                (q(1), 4, 4, w(1, 4)),
                (q(4), 6, 4, w(1, 4)),
                (q(8), 7, 4, w(1, 4)),
                (q(1), 8, -4, w(1, 4)),
            ],
            false,
        ),
        16 => (
            vec![
                (q(1), 8, 4, w(1, 4)),
                (q(4), 12, 4, w(1, 4)),
                (q(8), 14, 4, w(1, 4)),
                (q(16), 15, 4, w(1, 4)),
            ],
            true,
        ),
        _ if n.is_multiple_of(2) && n / 2 >= 5 && is_prime(n / 2) => {
            let p = n / 2;
            (
                vec![
                    (q(1), p, 4, w(1, 4)),
                    (q(p), 2 * p - 2, 2, w(1, 2)),
                    (q(p), 2 * p - 1, 4, w(1, 4)),
                ],
                true,
            )
        }
        _ => {
            return Err(Error::UnsupportedGroup {
                n,
                reason: "Holder budgets exist for n in {3, 4, 6, 8, 16} and n = 2p, p >= 5".into(),
            })
        }
    };
    let a = group_invariants(n)?.a as i64;
    let mut factors = Vec::with_capacity(plan.len());
    for (field, multiplier, power, weight) in plan {
        let sigma = Ratio::new(multiplier as i64, 2 * a);
        let log_power = moment_log_power(field, power, sigma)?;
        factors.push(HolderFactor {
            field,
            multiplier,
            power,
            weight,
            log_power,
        });
    }
    let total: Ratio<i64> = factors.iter().map(|f| f.weight).sum();
    if total != Ratio::one() {
        return Err(Error::Precondition(format!(
            "Holder weights sum to {total}"
        )));
    }
    let beta = factors
        .iter()
        .map(|f| f.weight * f.log_power)
        .sum::<Ratio<i64>>()
        + if pointwise {
            Ratio::one()
        } else {
            Ratio::zero()
        };
    if !beta.is_integer() {
        return Err(Error::Precondition(format!(
            "non-integral log-power {beta}"
        )));
    }
    Ok(HolderBudget {
        n,
        factors,
        eta: 1.0,
        beta: beta.to_integer(),
        uses_pointwise_log: pointwise,
    })
}
