//! Positive-direction constructions: pattern products, the two sequence
//! builders, the finite Ramsey search and the witness constructors built on
//! them.

pub mod pattern;
pub mod ramsey;
pub mod sequences;
pub mod witnesses;

use crate::group::Element;
use crate::search::Witness;

/// Output of a witness constructor.
#[derive(Clone, Debug)]
pub struct Construction {
    /// The verified witness, elements sorted.
    pub witness: Witness,
    /// Each constructed point with its label (`x_k` or `f=...`), in construction order.
    pub labelled: Vec<(String, Element)>,
    /// Sequence or basis indices the construction used.
    pub indices: Vec<usize>,
    /// Replayable description of the choices made.
    pub log: Vec<String>,
}

pub use pattern::{pattern_apply, PatternVec};
pub use ramsey::{ramsey_monochromatic_subset, MonochromaticSet};
pub use sequences::{
    all_functions, build_lemma23_sequence, build_lemma24_sequence, delta_pattern, epsilon_delta_point,
    epsilon_pattern, verify_epsilon_delta, verify_independence_124, IndependentSequence, SequenceKind,
};
pub use witnesses::{
    leader_russell_construct, leader_russell_requirement, order2_construct, prop42_construct, s_pattern,
};
