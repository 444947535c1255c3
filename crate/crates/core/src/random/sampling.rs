use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rand_core::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::random::rng::{stream_rng, uniform_below};
use crate::words::{Letter, Presentation, Word};

/// Largest presentation `sample_presentation` will materialize.
pub const MAX_RELATORS: u64 = 1 << 22;

/// A uniformly distributed reduced word of length `ell` over `m` generators:
/// the first letter is uniform over all `2m`, each later one uniform over the
/// `2m − 1` letters that do not cancel it.
pub fn sample_reduced_word<R: RngCore + ?Sized>(m: usize, ell: usize, rng: &mut R) -> Word {
    let k = 2 * m as u32;
    let mut letters: Vec<Letter> = Vec::with_capacity(ell);
    for i in 0..ell {
        let next = if i == 0 {
            Letter::from_index(uniform_below(rng, k) as usize)
        } else {
            let forbidden = letters[i - 1].inverse().index() as u32;
            let mut j = uniform_below(rng, k - 1);
            if j >= forbidden {
                j += 1;
            }
            Letter::from_index(j as usize)
        };
        letters.push(next);
    }
    Word::new(letters)
}

/// Rejection sampling over reduced words; uniform over cyclically reduced
/// words of length `ell`.
pub fn sample_cyclically_reduced_word<R: RngCore + ?Sized>(m: usize, ell: usize, rng: &mut R) -> Word {
    loop {
        let w = sample_reduced_word(m, ell, rng);
        if w.is_cyclically_reduced() {
            return w;
        }
    }
}

/// Parameters of Gromov's density model.
#[derive(Clone, Debug, Serialize)]
pub struct DensityModelParams {
    pub m: usize,
    pub ell: usize,
    #[serde(serialize_with = "crate::random::ser_rational")]
    pub density: Rational64,
    pub relator_count_override: Option<u64>,
    pub seed: u64,
}

impl DensityModelParams {
    pub fn new(m: usize, ell: usize, density: Rational64, seed: u64) -> DensityModelParams {
        DensityModelParams {
            m,
            ell,
            density,
            relator_count_override: None,
            seed,
        }
    }

    /// Few-relator mode: a fixed relator count at density zero.
    pub fn few_relators(m: usize, ell: usize, count: u64, seed: u64) -> DensityModelParams {
        DensityModelParams {
            m,
            ell,
            density: Rational64::zero(),
            relator_count_override: Some(count),
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidParameter(format!("m must be at least 2, got {}", self.m)));
        }
        if self.ell == 0 {
            return Err(Error::InvalidParameter("relator length must be positive".into()));
        }
        let d = self.density;
        if d < Rational64::zero() || d >= Rational64::from_integer(1) {
            return Err(Error::InvalidParameter(format!("density {d} outside [0, 1)")));
        }
        if self.relator_count_override.is_some() && !d.is_zero() {
            return Err(Error::InvalidParameter(
                "a relator count override requires density 0".into(),
            ));
        }
        Ok(())
    }

    /// `⌊(2m−1)^{dℓ}⌋` computed exactly, or the override.
    pub fn relator_count(&self) -> Result<BigUint> {
        self.validate()?;
        if let Some(n) = self.relator_count_override {
            return Ok(BigUint::from(n));
        }
        let (p, q) = (*self.density.numer() as u64, *self.density.denom() as u64);
        let exponent = p
            .checked_mul(self.ell as u64)
            .and_then(|e| u32::try_from(e).ok())
            .ok_or_else(|| Error::InvalidParameter("density exponent too large".into()))?;
        let q = u32::try_from(q).map_err(|_| Error::InvalidParameter("density denominator too large".into()))?;
        Ok(BigUint::from(2 * self.m as u64 - 1).pow(exponent).nth_root(q))
    }
}

/// Draws the model's relators with replacement. Relator `i` comes from stream
/// `(seed, ell, i)`, so the result does not depend on the thread count.
pub fn sample_presentation(params: &DensityModelParams) -> Result<Presentation> {
    let count = params.relator_count()?;
    let n = count
        .to_u64()
        .filter(|&n| n <= MAX_RELATORS)
        .ok_or(Error::ResourceCap { limit: MAX_RELATORS as usize })?;
    let relators: Vec<Word> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(params.seed, params.ell as u64, i);
            sample_cyclically_reduced_word(params.m, params.ell, &mut rng)
        })
        .collect();
    Presentation::new(params.m, relators)
}
