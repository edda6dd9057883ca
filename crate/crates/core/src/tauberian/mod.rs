//! Explicit Tauberian error terms from twisted-moment bounds.

mod asymptotic;
mod bounds;
mod params;
mod smoothing;

pub use asymptotic::{e1_at_optimal_t, theta_from_optimal_t, Expr, Monomial, SymbolicParams};
pub use bounds::{
    bound_check, error_terms, gh_helpers, optimal_t, optimal_t_raw, optimized_envelope,
    regression_slope, smoothing_order, theta_exponent, unoptimized_envelope, BoundMode,
    BoundReport, MIN_T,
};
pub use params::{abs_polar, leading_coefficient, polar_sum, PolarTerm, TauberParams};
pub use smoothing::{finite_difference, riesz_mean, sandwich, Sandwich};
