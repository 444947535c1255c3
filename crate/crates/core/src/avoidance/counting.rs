use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::avoidance::automaton::AvoidanceAutomaton;
use crate::avoidance::forbidden::ForbiddenSet;
use crate::error::{Error, Result};
use crate::words::{Letter, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    Automaton,
    BruteForce,
}

/// `f[n]`: avoiding words of weight exactly `n`; `g[n]`: of weight at most `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    #[serde(serialize_with = "ser_big")]
    pub f: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub g: Vec<BigUint>,
}

fn ser_big<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl GrowthSeries {
    fn from_exact(f: Vec<BigUint>) -> GrowthSeries {
        let mut acc = BigUint::zero();
        let g = f
            .iter()
            .map(|x| {
                acc += x;
                acc.clone()
            })
            .collect();
        GrowthSeries { f, g }
    }
}

/// Integer weight of each letter, indexed by [`Letter::index`].
pub(crate) fn letter_weights(m: usize, w: &WeightVector) -> Result<Vec<usize>> {
    if w.m() != m {
        return Err(Error::WeightArity { expected: m, got: w.m() });
    }
    let ints = w.integral_values()?;
    Ok((0..2 * m)
        .map(|c| ints[Letter::from_index(c).gen_index() - 1] as usize)
        .collect())
}

/// Exact counts of words avoiding `f`, graded by total weight up to `n_max`.
pub fn count_avoiding(f: &ForbiddenSet, w: &WeightVector, n_max: usize, mode: CountMode) -> Result<GrowthSeries> {
    if !f.is_reduced_set() {
        return Err(Error::InvalidParameter(
            "forbidden set must be reduced before counting".into(),
        ));
    }
    let lw = letter_weights(f.m(), w)?;
    let exact = match mode {
        CountMode::Automaton => automaton_counts(&AvoidanceAutomaton::new(f), &lw, n_max),
        CountMode::BruteForce => brute_force_counts(f, &lw, n_max),
    };
    Ok(GrowthSeries::from_exact(exact))
}

fn automaton_counts(a: &AvoidanceAutomaton, lw: &[usize], n_max: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::zero(); n_max + 1];
    let Some(start) = a.start() else {
        return f;
    };
    let states = a.state_count();
    let span = lw.iter().copied().max().unwrap_or(1) + 1;
    let mut ring: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); states]; span];
    ring[0][start] = BigUint::one();
    for n in 0..=n_max {
        let level = std::mem::replace(&mut ring[n % span], vec![BigUint::zero(); states]);
        let mut total = BigUint::zero();
        for (s, cnt) in level.iter().enumerate() {
            if cnt.is_zero() {
                continue;
            }
            total += cnt;
            for (c, &wc) in lw.iter().enumerate() {
                if n + wc > n_max {
                    continue;
                }
                if let Some(t) = a.next_index(s, c) {
                    ring[(n + wc) % span][t] += cnt;
                }
            }
        }
        f[n] = total;
    }
    f
}

fn brute_force_counts(f: &ForbiddenSet, lw: &[usize], n_max: usize) -> Vec<BigUint> {
    fn ends_with_pattern(buf: &[usize], pats: &[Vec<usize>]) -> bool {
        pats.iter().any(|p| buf.ends_with(p))
    }
    fn rec(buf: &mut Vec<usize>, weight: usize, lw: &[usize], n_max: usize, pats: &[Vec<usize>], out: &mut [u64]) {
        out[weight] += 1;
        for (c, &wc) in lw.iter().enumerate() {
            if weight + wc > n_max {
                continue;
            }
            buf.push(c);
            if !ends_with_pattern(buf, pats) {
                rec(buf, weight + wc, lw, n_max, pats, out);
            }
            buf.pop();
        }
    }
    let pats: Vec<Vec<usize>> = f
        .patterns()
        .iter()
        .map(|p| p.letters().iter().map(|l| l.index()).collect())
        .collect();
    let mut out = vec![0u64; n_max + 1];
    rec(&mut Vec::new(), 0, lw, n_max, &pats, &mut out);
    out.into_iter().map(BigUint::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(f: &ForbiddenSet, w: &[u64], n: usize, mode: CountMode) -> GrowthSeries {
        count_avoiding(f, &WeightVector::from_integers(w).unwrap(), n, mode).unwrap()
    }

    #[test]
    fn free_group_counts() {
        let f = ForbiddenSet::free(2);
        for mode in [CountMode::Automaton, CountMode::BruteForce] {
            let s = series(&f, &[1, 1], 3, mode);
            assert_eq!(s.f[3], BigUint::from(36u32));
            assert_eq!(s.g[3], BigUint::from(53u32));
            assert_eq!(s.f[0], BigUint::one());
        }
        let s = series(&f, &[1, 1], 40, CountMode::Automaton);
        for n in 1..=40u32 {
            assert_eq!(s.f[n as usize], BigUint::from(4u32) * BigUint::from(3u32).pow(n - 1));
        }
    }

    #[test]
    fn single_generator_with_square_forbidden() {
        let f = ForbiddenSet::new(1, ["aa", "aA", "Aa"].map(|s| s.parse().unwrap())).unwrap();
        for mode in [CountMode::Automaton, CountMode::BruteForce] {
            assert_eq!(series(&f, &[1], 3, mode).f[3], BigUint::one());
        }
    }

    #[test]
    fn mixed_weights() {
        let f = ForbiddenSet::free(2);
        for mode in [CountMode::Automaton, CountMode::BruteForce] {
            let s = series(&f, &[1, 2], 2, mode);
            assert_eq!(s.g[2], BigUint::from(7u32));
        }
    }

    #[test]
    fn rejects_fractional_weights_and_unreduced_sets() {
        let f = ForbiddenSet::free(2);
        let w = WeightVector::uniform_normalized(2);
        assert!(count_avoiding(&f, &w, 3, CountMode::Automaton).is_err());
        let u = ForbiddenSet::unreduced(2, ["ab", "aab"].map(|s| s.parse().unwrap())).unwrap();
        assert!(count_avoiding(&u, &WeightVector::unit(2), 3, CountMode::Automaton).is_err());
    }
}
