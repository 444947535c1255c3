//! Gromov density model sampling, the letter Markov chain and its constants,
//! and the genericity experiment.
//!
//! Every random draw comes from [`stream_rng`]: ChaCha8 keyed from
//! `(seed, ℓ)` by SplitMix64, with the stream number set to the trial or
//! relator index.

mod chain;
mod constants;
mod experiment;
mod rng;
mod sampling;

pub use chain::{chain_spectral, transition_matrix, ChainSpectrum};
pub use constants::{
    c_m, chernoff_bound, cyclically_reduced_count, d_m, model_constants, GapChoice, ModelConstants, UnionBounds,
};
pub use experiment::{
    genericity_experiment, genericity_experiment_with_threads, run_trial, word_outcome, ExperimentParams,
    GenericityReport, GenericityRow, TrialOutcome, CSV_HEADER,
};
pub use rng::{stream_rng, uniform_below};
pub use sampling::{
    sample_cyclically_reduced_word, sample_presentation, sample_reduced_word, DensityModelParams, MAX_RELATORS,
};

pub(crate) fn ser_rational<S: serde::Serializer>(r: &num_rational::Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}
