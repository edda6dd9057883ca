//! Integral and twisted moments on vertical lines, growth fits and Holder
//! budgets.

mod fit;
mod holder;
mod quadrature;
mod twisted;

pub use fit::{fit_growth, fit_growth_points, GrowthFit};
pub use holder::{holder_budget, moment_log_power, HolderBudget, HolderFactor};
pub use quadrature::{integrate, QuadValue, Quadrature, QuadratureOptions};
pub use twisted::{
    integral_moment, integral_moment_with, panel_width, twisted_moment, twisted_moment_with,
    DedekindEvaluator, DirichletPolynomial, LEvaluator, MomentSample, MAX_HEIGHT,
};
