//! Volume entropy of weighted word metrics on finitely presented groups.
//!
//! The crate covers small cancellation analysis of presentations
//! ([`presentation`]), counting words that avoid a forbidden set
//! ([`avoidance`]), entropy of free groups and bounds for translation-apparent
//! presentations ([`entropy`]), random groups in the density model
//! ([`random`]), the text formats ([`io`]) and the command-line front end
//! ([`cli`]).

pub mod avoidance;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod io;
pub mod presentation;
pub mod random;
pub mod words;

pub use error::{Error, Result};
pub use words::{Letter, Presentation, WeightVector, Word};
