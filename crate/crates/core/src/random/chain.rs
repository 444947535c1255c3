use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::Letter;

/// Spectral data of the non-backtracking letter chain on `2m` states.
#[derive(Clone, Debug, Serialize)]
pub struct ChainSpectrum {
    pub m: usize,
    pub transition: Vec<Vec<f64>>,
    /// All eigenvalues, largest first.
    pub eigenvalues: Vec<f64>,
    pub beta1: f64,
    /// Spectral gap `1 − β₁`.
    pub epsilon: f64,
    /// `(m−1)²/(2(2m−1)²)`.
    pub epsilon_lower_bound: f64,
    /// Cheeger constant by exhaustive search over subsets with `π(S) ≤ ½`.
    #[serde(serialize_with = "crate::random::ser_rational")]
    pub cheeger: Rational64,
    /// `(m−1)/(2m−1)`.
    #[serde(serialize_with = "crate::random::ser_rational")]
    pub cheeger_lower_bound: Rational64,
    /// `Φ²/2`, the gap guaranteed by Cheeger's inequality.
    pub cheeger_gap_bound: f64,
}

/// The transition matrix: zero on inverse pairs, `1/(2m−1)` elsewhere, indexed
/// by [`Letter::index`].
pub fn transition_matrix(m: usize) -> DMatrix<f64> {
    let k = 2 * m;
    let p = 1.0 / (k - 1) as f64;
    DMatrix::from_fn(k, k, |x, y| {
        if Letter::from_index(x).inverse().index() == y {
            0.0
        } else {
            p
        }
    })
}

/// `min Q(S×Sᶜ)/π(S)` over non-empty `S` with `|S| ≤ m`. With uniform `π`
/// this is (allowed moves leaving `S`)/((2m−1)|S|).
fn cheeger_brute_force(m: usize) -> Rational64 {
    let k = 2 * m;
    let inv: Vec<usize> = (0..k).map(|x| Letter::from_index(x).inverse().index()).collect();
    let mut best: Option<Rational64> = None;
    for mask in 1u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size > m {
            continue;
        }
        let mut leaving = 0i64;
        for x in (0..k).filter(|&x| mask >> x & 1 == 1) {
            leaving += (0..k)
                .filter(|&y| mask >> y & 1 == 0 && y != inv[x])
                .count() as i64;
        }
        let ratio = Rational64::new(leaving, (k as i64 - 1) * size as i64);
        if best.map_or(true, |b| ratio < b) {
            best = Some(ratio);
        }
    }
    best.expect("m >= 1 gives a non-empty subset")
}

/// Spectrum, spectral gap and Cheeger constant of the chain for `2 ≤ m ≤ 6`.
pub fn chain_spectral(m: usize) -> Result<ChainSpectrum> {
    if !(2..=6).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "chain spectrum needs 2 <= m <= 6, got {m}"
        )));
    }
    let t = transition_matrix(m);
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(t.clone()).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let beta1 = eigenvalues[1];
    let cheeger = cheeger_brute_force(m);
    let phi = *cheeger.numer() as f64 / *cheeger.denom() as f64;
    let d = (2 * m - 1) as f64;
    Ok(ChainSpectrum {
        m,
        transition: t.row_iter().map(|r| r.iter().copied().collect()).collect(),
        eigenvalues,
        beta1,
        epsilon: 1.0 - beta1,
        epsilon_lower_bound: ((m - 1) * (m - 1)) as f64 / (2.0 * d * d),
        cheeger,
        cheeger_lower_bound: Rational64::new(m as i64 - 1, 2 * m as i64 - 1),
        cheeger_gap_bound: phi * phi / 2.0,
    })
}
