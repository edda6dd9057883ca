//! Constants of the asymptotic expansions.

mod euler;
mod residues;

pub use euler::{
    class_euler_product, class_zeta_inverse, ClassEulerProduct, Estimate, PrimeClasses,
};
pub use residues::{
    c2_c4, c3_c4, c4_constants, c4_constants_with, leading_residue, leading_residue_with,
    nonvanishing_check, C4Constants, ConstantReport, NonvanishingReport,
};
