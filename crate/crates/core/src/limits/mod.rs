//! Direct limits of stationary towers and their canonical names.

mod expr;
mod les;
mod tower;

pub use expr::{iso_check, radical, GroupExpr};
pub use les::{commutes, limit_injective, limit_les, limit_les_labeled, LesReport};
pub use tower::{charpoly, classify, eventual_restriction, torsion_section, TowerGroup};
