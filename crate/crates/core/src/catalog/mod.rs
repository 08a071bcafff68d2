//! Named spaces, factor paths, the expected-value table and the verification suites.

mod compute;
mod golden;
mod id;
mod verify;

pub use compute::{
    cohomology, dynamics, factor_map, lattice_path, path_quotient, path_realizations, quotient, shortcut_agrees,
    Realization,
};
pub use golden::{GoldenEntry, GoldenTable, Kind, GOLDEN_TSV};
pub use id::{FactorPath, PathWord, SpaceId};
pub use verify::{consistency_cross_checks, verify_all, Check, Report, Scope, DEFAULT_GRID};
