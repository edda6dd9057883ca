use std::collections::BTreeMap;

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};

/// Weights turning field counts into homomorphism counts: `w_d = phi(d)`,
/// the number of surjections from a cyclic field group onto `C_d`.
pub fn hom_weights(n: u64) -> BTreeMap<u64, u64> {
    divisors(n).into_iter().map(|d| (d, euler_phi(d))).collect()
}

/// `sum_{d | n} w_d * #F(C_d)` with the trivial algebra counted once for `d = 1`.
///
/// `field_counts[d]` is the number of `C_d` fields contributing (the caller
/// applies the bound `disc^{n/d} <= X`); entries for `d = 1` are ignored.
pub fn etale_field_decomposition(
    n: u64,
    field_counts: &BTreeMap<u64, u64>,
    weights: &BTreeMap<u64, u64>,
) -> Result<u64> {
    let mut total = 0u64;
    for d in divisors(n) {
        let w = *weights
            .get(&d)
            .ok_or_else(|| Error::InvalidArgument(format!("missing weight for d = {d}")))?;
        let c = if d == 1 {
            1
        } else {
            *field_counts
                .get(&d)
                .ok_or_else(|| Error::InvalidArgument(format!("missing field count for d = {d}")))?
        };
        total = w
            .checked_mul(c)
            .and_then(|v| total.checked_add(v))
            .ok_or(Error::Overflow("etale decomposition"))?;
    }
    Ok(total)
}
