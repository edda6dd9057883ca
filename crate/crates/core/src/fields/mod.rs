//! Dirichlet characters and enumeration of cyclic fields by discriminant.

mod character;
mod enumerate;
mod units;

pub use character::DirichletCharacter;
pub use enumerate::{
    characters_of_exact_order, count_fields, count_fields_with_bound, hom_count,
    local_factor_from_characters, CharacterOrbit, FieldRow, MAX_CONDUCTOR,
};
pub use units::{unit_group_structure, UnitComponent, UnitGroup};
