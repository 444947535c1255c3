use thiserror::Error;

use crate::words::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {value} is outside the alphabet of size {m}")]
    LetterOutOfRange { value: i32, m: usize },

    #[error("relator {0} is not cyclically reduced (or is empty)")]
    NotCyclicallyReduced(Word),

    #[error("word {0} is not freely reduced")]
    NotReduced(Word),

    #[error("presentation must be symmetrized first")]
    NotSymmetrized,

    #[error("weights must be positive integers")]
    NonIntegralWeights,

    #[error("weight vector has {got} entries, expected {expected}")]
    WeightArity { expected: usize, got: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("presentation is not {lambda}-translation-apparent: {reason}")]
    NotTranslationApparent { lambda: String, reason: String },

    #[error("linear system is singular at z = {0}")]
    SingularSystem(f64),

    #[error("z = {z} is not above the growth rate {growth}")]
    OutsideConvergence { z: f64, growth: f64 },

    #[error("resource cap exceeded: more than {limit} group elements")]
    ResourceCap { limit: usize },

    #[error("no convergence after {iterations} iterations (projected gradient norm {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
