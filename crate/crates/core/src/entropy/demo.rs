use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::entropy::ball::WordMetric;
use crate::error::{Error, Result};
use crate::words::{Letter, Presentation, WeightVector, Word};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Weights of `a, b, a², b²` along the segment `w_t = (1 − t)w₀ + t w₁`.
pub fn redundant_weights(t: &BigRational) -> [BigRational; 4] {
    let w0 = [q(1, 16), q(1, 16), q(3, 16), q(3, 16)];
    let w1 = [q(1, 16), q(1, 16), q(1, 8), q(1, 4)];
    let one = BigRational::one();
    std::array::from_fn(|i| (&one - t) * &w0[i] + t * &w1[i])
}

#[derive(Clone, Debug, Serialize)]
pub struct NonStrictReport {
    pub t: String,
    pub weights: Vec<String>,
    pub radius: String,
    pub elements: usize,
    pub reference_elements: usize,
    pub agree: bool,
    pub first_mismatch: Option<(Word, String, String)>,
}

/// Compares the weighted word metric of `F₂` over the generating set
/// `{a, b, a², b²}^{±1}` at weights `w_t` with the two-generator metric with
/// `w(a) = w(b) = 1/16`, on every element of the ball of the given radius.
pub fn nonstrict_demo(t: &BigRational, radius: &BigRational) -> Result<NonStrictReport> {
    if t < &BigRational::zero() || t > &BigRational::one() {
        return Err(Error::InvalidParameter(format!("t must lie in [0, 1], got {t}")));
    }
    let f2 = Presentation::free(2);
    let (a, b) = (Letter::generator(1), Letter::generator(2));
    let wt = redundant_weights(t);
    let gens = [Word::new(vec![a]), Word::new(vec![b]), Word::power(a, 2), Word::power(b, 2)];
    let mut moves = Vec::new();
    for (g, c) in gens.iter().zip(&wt) {
        moves.push((g.clone(), c.clone()));
        moves.push((g.inverse(), c.clone()));
    }
    let redundant = WordMetric::with_moves(&f2, moves)?.ball(radius)?;
    let reference = WordMetric::new(&f2, &WeightVector::from_ratios(&[(1, 16), (1, 16)])?)?.ball(radius)?;
    let ref_dist = reference.distances();
    let mut first_mismatch = None;
    for i in 0..redundant.len() {
        let (x, _) = &redundant.elements[i];
        let d = redundant.distance(i);
        match ref_dist.get(x) {
            Some(e) if *e == d => {}
            other => {
                first_mismatch = Some((
                    x.clone(),
                    d.to_string(),
                    other.map_or_else(|| "outside".to_string(), |e| e.to_string()),
                ));
                break;
            }
        }
    }
    Ok(NonStrictReport {
        t: t.to_string(),
        weights: wt.iter().map(|x| x.to_string()).collect(),
        radius: radius.to_string(),
        elements: redundant.len(),
        reference_elements: reference.len(),
        agree: first_mismatch.is_none() && redundant.len() == reference.len(),
        first_mismatch,
    })
}
