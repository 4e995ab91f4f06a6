//! Multisequence R-extensions over prime fields.
//!
//! The crate models multisequences by their matrix states, synthesizes
//! multisequences whose R-extensions have maximum dimension, turns them into
//! word-based LFSR feedback configurations (m-companion matrices), and
//! evaluates the associated counting formulas next to exhaustive oracles.

pub mod cli;
pub mod counting;
pub mod error;
pub mod field;
pub mod hankel;
pub mod lfsr;
pub mod matrix;
pub mod multiseq;
pub mod oracle;
pub mod poly;
pub mod road;
pub mod synthesis;

pub use counting::{
    count_by_dimension, count_independent, count_lfsr, count_max_extension, count_nr,
    grassmannian_size, CountReport,
};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use hankel::{
    count_fullrank_hankel, enumerate_fullrank_hankel, fullrank_via_extension, hankel_from_vector,
    HankelVec,
};
pub use lfsr::{
    feedback_blocks, lfsr_state_of, period, stacked_state, transition_from_multiseq, verify_lfsr,
    LfsrReport, LfsrSpec, MCompanion,
};
pub use matrix::{companion_matrix, Mat};
pub use multiseq::{minimal_poly_oracle, MultiseqState, RVector};
pub use oracle::{
    compositions, oracle_by_dimension, oracle_lfsr, oracle_max_extension, oracle_nr, road_counts,
};
pub use poly::{find_primitive, primitive_polys, Poly};
pub use road::{active_coordinate, backward_traverse, phi, road};
pub use synthesis::{
    find_f, lift, realign, synthesize, ChoiceScript, Choices, PolyLadder, Synthesis,
    SynthesisConfig,
};
