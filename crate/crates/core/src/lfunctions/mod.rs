//! Hurwitz zeta, Dirichlet L-functions and Dedekind zeta functions of
//! cyclotomic fields.

mod bernoulli;
mod dirichlet;
mod hurwitz;

pub use bernoulli::{bernoulli_numbers, scaled_even_bernoulli, MAX_BERNOULLI_PAIRS};
pub use dirichlet::{
    dedekind_residue, dedekind_zeta_cyclotomic, dirichlet_l, dirichlet_l_eval,
    dirichlet_l_imprimitive, CyclotomicZeta,
};
pub use hurwitz::{digamma, hurwitz_zeta, hurwitz_zeta_eval, zeta, EvalOptions, Evaluation};
