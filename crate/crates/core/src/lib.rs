//! Exact Čech cohomology and quotient cohomology of substitution tiling spaces.
//!
//! The pipeline is: substitution rule → Anderson–Putnam approximant complex with its
//! substitution-induced self-map → cohomology of the approximant → direct limit under the
//! induced endomorphism → canonical group expression. Factor maps between tiling spaces are
//! realized as cellular quotient maps, which gives quotient cochain complexes and their long
//! exact sequences.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod catalog;
pub mod cli;
pub mod complex;
pub mod error;
pub mod limits;
pub mod subst1d;
pub mod subst2d;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision integer matrix.
pub type IntMatrix = abelian::Matrix<Int>;

pub use abelian::{FgAbGroup, GroupHom};
pub use limits::{GroupExpr, TowerGroup};
