//! Cochain complexes of approximants, cellular maps and quotient complexes.

mod cochain;
mod map;
mod quotient;

pub use cochain::{cohomology, CochainComplex};
pub use map::{pullback, CellularMap, DynamicalComplex, FactorMap};
pub use quotient::{lemma1_shortcut, les_quotient, quotient_complex, Lemma1, QuotientComplex, QuotientLes};
