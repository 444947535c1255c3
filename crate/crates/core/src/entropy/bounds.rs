use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::avoidance::{RootHypotheses, RootPolynomial};
use crate::entropy::free::free_entropy;
use crate::error::{Error, Result};
use crate::presentation::check_translation_apparent;
use crate::words::{Presentation, WeightVector};

/// Largest denominator kept when rationalizing weights before rescaling.
pub const MAX_DENOMINATOR: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FreeClosedForm,
    PRoot,
    Automaton,
    BallCounts,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyEstimate {
    pub h_lo: f64,
    pub h_hi: f64,
    pub lo_method: Method,
    pub hi_method: Method,
    pub hypotheses: Option<RootHypotheses>,
    /// Factor `N'` turning the rationalized weights into integers.
    pub scale: String,
    pub integer_weights: Vec<String>,
    /// Largest relative change made when rationalizing the weights.
    pub rounding_error: f64,
    pub p_root: Option<f64>,
    pub m0: f64,
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions.
pub fn best_rational(x: &BigRational, max_den: u64) -> BigRational {
    if x.denom() <= &BigInt::from(max_den) {
        return x.clone();
    }
    let max_den = BigInt::from(max_den);
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            let k = (&max_den - &q0) / &q1;
            let semi = BigRational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let conv = BigRational::new(p1.clone(), q1.clone());
            return if (&semi - x).abs() < (&conv - x).abs() { semi } else { conv };
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return BigRational::new(p1, q1);
        }
        rest = frac.recip();
    }
}

/// Sandwich `h(F_m, w) − ε ≤ h(G, w) ≤ h(F_m, w)` for a translation-apparent
/// presentation: the lower end comes from the largest root of `p` for the
/// weights rescaled to integers.
pub fn entropy_bounds(p: &Presentation, lambda: Rational64, w: &WeightVector) -> Result<EntropyEstimate> {
    if w.m() != p.m() {
        return Err(Error::WeightArity { expected: p.m(), got: w.m() });
    }
    let report = check_translation_apparent(p, lambda);
    if !report.holds {
        return Err(Error::NotTranslationApparent {
            lambda: lambda.to_string(),
            reason: report.failures.join("; "),
        });
    }
    let sym = if p.is_symmetrized() { p.clone() } else { p.symmetrized()? };

    let approx: Vec<BigRational> = w.per_generator().iter().map(|x| best_rational(x, MAX_DENOMINATOR)).collect();
    // w ≤ (1 + δ) w' coordinatewise, hence h(G, w) ≥ h(G, w') / (1 + δ).
    let mut delta = 0.0f64;
    let mut rounding_error = 0.0f64;
    for (x, a) in w.per_generator().iter().zip(&approx) {
        let ratio = (x / a).to_f64().unwrap_or(f64::INFINITY);
        delta = delta.max(ratio - 1.0);
        rounding_error = rounding_error.max((ratio - 1.0).abs());
    }
    let mut scale = BigInt::one();
    for a in &approx {
        scale = scale.lcm(a.denom());
    }
    let scale_r = BigRational::from_integer(scale.clone());
    let ints: Vec<BigRational> = approx.iter().map(|a| a * &scale_r).collect();
    let w_int = WeightVector::new(ints.clone())?;

    let poly = RootPolynomial::new(&sym, lambda, &w_int)?;
    let root = poly.largest_root();
    let scale_f = scale.to_f64().unwrap_or(f64::INFINITY);
    let h_hi = free_entropy(&w.to_f64());
    let h_lo = match root {
        Some(z) if z > 1.0 => (scale_f * z.ln() / (1.0 + delta.max(0.0))).min(h_hi),
        _ => 0.0,
    };
    Ok(EntropyEstimate {
        h_lo,
        h_hi,
        lo_method: if sym.relators().is_empty() { Method::FreeClosedForm } else { Method::PRoot },
        hi_method: Method::FreeClosedForm,
        hypotheses: Some(poly.hypotheses()),
        scale: scale.to_string(),
        integer_weights: ints.iter().map(|x| x.to_string()).collect(),
        rounding_error,
        p_root: root,
        m0: poly.m0(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_approximation() {
        let x = BigRational::new(BigInt::from(314159265359i64), BigInt::from(100000000000i64));
        let a = best_rational(&x, 1000);
        assert_eq!(a, BigRational::new(BigInt::from(355), BigInt::from(113)));
        let y = BigRational::new(BigInt::from(1), BigInt::from(4));
        assert_eq!(best_rational(&y, 10), y);
    }

    #[test]
    fn free_bounds_collapse() {
        let w = WeightVector::from_ratios(&[(1, 8), (3, 8)]).unwrap();
        let e = entropy_bounds(&Presentation::free(2), Rational64::new(1, 16), &w).unwrap();
        assert!((e.h_hi - e.h_lo).abs() < 1e-6);
        assert!((e.h_hi - free_entropy(&[0.125, 0.375])).abs() < 1e-12);
        assert_eq!(e.scale, "8");
    }

    #[test]
    fn genus_two_is_rejected() {
        let p = crate::presentation::surface_presentation(2).unwrap();
        let r = entropy_bounds(&p, Rational64::new(1, 16), &WeightVector::uniform_normalized(4));
        assert!(matches!(r, Err(Error::NotTranslationApparent { .. })));
    }
}
