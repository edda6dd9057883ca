//! The discriminant-counting Dirichlet series of cyclic `C_n`-etale algebras.

mod etale;
mod factorization;
mod local;
mod sieve;

pub use etale::{etale_field_decomposition, hom_weights};
pub use factorization::{
    factorization_check_with, published_zeta_factors, quotient_local_factor, quotient_with,
    zeta_factorization_check, zeta_factors, ClassResidual, FactorizationReport, ZetaFactor,
};
pub use local::{tame_local_factor, wild_local_factor, LocalFactorSystem, WildSource, WildTable};
pub use sieve::{coefficient_sieve, summatory, CoeffArray, MAX_SIEVE_BOUND};
