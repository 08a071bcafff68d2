//! One-dimensional substitutions: Thue–Morse, period doubling and solenoids, their collared
//! approximants, and the sliding block factor maps between them.

mod ap;
mod family;
mod word;

pub use ap::{ap_complex_1d, ap_complex_collared, Space1D};
pub use family::{
    factor_map_1d, factor_map_phi, factor_map_psi, quotient_cohomology_1d, sliding_block_map, times2_sequence,
    verify_times2_ses, Family1D, Times2Sequence, Times2Verdict,
};
pub use word::{border_forcing_1d, legal_words, CollaredSystem1D, Substitution1D, Word};
