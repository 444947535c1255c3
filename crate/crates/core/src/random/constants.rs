use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    Ok(())
}

/// `C_m = (m−1)² / (384 m² (2m−1)²)`, exactly.
pub fn c_m(m: usize) -> Result<BigRational> {
    check_m(m)?;
    let m = BigInt::from(m);
    let one = BigInt::from(1);
    let num = (&m - &one) * (&m - &one);
    let d = BigInt::from(2) * &m - &one;
    Ok(BigRational::new(num, BigInt::from(384) * &m * &m * &d * &d))
}

/// `d_m = C_m / (16 ln(2m−1))`.
pub fn d_m(m: usize) -> Result<f64> {
    let c = c_m(m)?.to_f64().expect("C_m is a small positive rational");
    Ok(c / (16.0 * ((2 * m - 1) as f64).ln()))
}

/// Number of cyclically reduced words of length `ell`:
/// `(2m−1)^ℓ + m + (−1)^ℓ (m−1)`.
pub fn cyclically_reduced_count(m: usize, ell: u32) -> Result<BigUint> {
    check_m(m)?;
    let base = BigUint::from(2 * m as u64 - 1).pow(ell);
    Ok(if ell % 2 == 0 {
        base + BigUint::from(2 * m as u64 - 1)
    } else {
        base + 1u32
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelConstants {
    pub m: usize,
    pub c_m: String,
    pub d_m: f64,
    pub inverse_d_m: f64,
    pub epsilon_lower_bound: f64,
    pub epsilon_exact: f64,
}

pub fn model_constants(m: usize) -> Result<ModelConstants> {
    let d = d_m(m)?;
    Ok(ModelConstants {
        m,
        c_m: c_m(m)?.to_string(),
        d_m: d,
        inverse_d_m: 1.0 / d,
        epsilon_lower_bound: GapChoice::LowerBound.epsilon(m),
        epsilon_exact: GapChoice::Exact.epsilon(m),
    })
}

/// Which spectral gap feeds the concentration bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapChoice {
    /// `(m−1)²/(2(2m−1)²)`, the Cheeger-derived lower bound.
    LowerBound,
    /// The true gap `1 − 1/(2m−1)`.
    Exact,
}

impl GapChoice {
    pub fn epsilon(self, m: usize) -> f64 {
        let d = (2 * m - 1) as f64;
        match self {
            GapChoice::LowerBound => ((m - 1) * (m - 1)) as f64 / (2.0 * d * d),
            GapChoice::Exact => 1.0 - 1.0 / d,
        }
    }

    /// The exponent rate `εδ²/12` at `δ = 1/(4m)`; with the lower bound on
    /// the gap this is `C_m`.
    pub fn rate(self, m: usize) -> f64 {
        self.epsilon(m) / (192.0 * (m * m) as f64)
    }
}

/// `2 e^{−εδ²n/12 + 1}`.
pub fn chernoff_bound(delta: f64, n: usize, epsilon: f64) -> f64 {
    2.0 * (-epsilon * delta * delta * n as f64 / 12.0 + 1.0).exp()
}

/// Union bounds on the probability that a uniform random word of length `ℓ`
/// fails each even-distribution condition at `λ = 1/16`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct UnionBounds {
    pub gap: GapChoice,
    /// `2mℓ / (2m−1)^{⌈ℓ/16⌉}`.
    pub run: f64,
    /// `ℓ (2m e^{−C⌈ℓ/4⌉+1} + 2m e^{−Cℓ+1})`.
    pub half_window: f64,
    /// `2mℓ e^{−Cℓ/16}`.
    pub frequency_window: f64,
    /// `(4m/(2m−1)) ℓ (run + half_window + frequency_window)`, the bound for
    /// some cyclic permutation of `r` or `r⁻¹` failing.
    pub pooled: f64,
}

impl UnionBounds {
    pub fn new(m: usize, ell: usize, gap: GapChoice) -> UnionBounds {
        let (mf, l) = (m as f64, ell as f64);
        let c = gap.rate(m);
        let d = 2.0 * mf - 1.0;
        let run = 2.0 * mf * l / d.powf(ell.div_ceil(16) as f64);
        let half_window = l
            * (2.0 * mf * (-c * ell.div_ceil(4) as f64 + 1.0).exp() + 2.0 * mf * (-c * l + 1.0).exp());
        let frequency_window = 2.0 * mf * l * (-c * l / 16.0).exp();
        let pooled = 4.0 * mf / d * l * (run + half_window + frequency_window);
        UnionBounds {
            gap,
            run,
            half_window,
            frequency_window,
            pooled,
        }
    }

    /// The pooled bound when it says something (`< 1`).
    pub fn informative_pooled(&self) -> Option<f64> {
        (self.pooled < 1.0).then_some(self.pooled)
    }
}
