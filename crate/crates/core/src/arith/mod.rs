//! Primes, truncated polynomials and group invariants.

mod group;
mod ntheory;
mod poly;

pub use group::{group_invariants, CyclotomicField, GroupInvariants};
pub use ntheory::{
    binomial, checked_pow, crt, divisors, euler_phi, factorize, factorize_with, integer_root,
    is_prime, mod_inverse, mul_mod, multiplicative_order, order_mod_sign, pow_mod, primes_up_to,
    primitive_root_prime_power, spf_sieve, valuation,
};
pub use poly::{ratio_to_integer, rational_binomial_series, TruncPoly};
