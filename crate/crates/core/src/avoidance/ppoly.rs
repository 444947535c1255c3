use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::avoidance::counting::letter_weights;
use crate::avoidance::forbidden::relator_prefixes;
use crate::entropy::free_entropy;
use crate::error::Result;
use crate::presentation::{check_lambda, SymmetricClosure};
use crate::words::{Presentation, WeightVector};

const GRID: usize = 64;

/// The rational function
/// `p(z) = 1 − Σ_s (z^{w(s)}+1)^{-1} + Σ_s z^{w(s)}/(z^{w(s)}+1) · Σ_{u ∈ R_{λ,s}} z^{-|u|_w}`
/// for a symmetrized presentation and integer weights, where `R_{λ,s}` is the
/// set of relator prefixes of length `⌈λ|r|⌉` ending in `s`.
#[derive(Clone, Debug)]
pub struct RootPolynomial {
    m: usize,
    letter_weight: Vec<u64>,
    /// Per letter `s`: `(|u|_w, multiplicity)` over `u ∈ R_{λ,s}`.
    prefix_weights: Vec<Vec<(u64, usize)>>,
    prefix_counts: Vec<usize>,
    min_prefix_len: Option<usize>,
    m0: f64,
}

/// Quantities entering the sandwich estimate, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct RootHypotheses {
    pub m: usize,
    pub j: usize,
    pub l: Option<usize>,
    pub n: u64,
    pub l_exceeds_32m: bool,
    pub log_lhs: Option<f64>,
    pub log_rhs: Option<f64>,
    pub counting_condition: bool,
}

impl RootHypotheses {
    pub fn hold(&self) -> bool {
        self.l_exceeds_32m && self.counting_condition
    }
}

impl RootPolynomial {
    pub fn new(p: &Presentation, lambda: Rational64, w: &WeightVector) -> Result<RootPolynomial> {
        check_lambda(lambda)?;
        let c = SymmetricClosure::new(p)?;
        let ints = letter_weights(p.m(), w)?;
        let letter_weight: Vec<u64> = ints.iter().map(|&x| x as u64).collect();
        let mut sets: Vec<BTreeSet<crate::words::Word>> = vec![BTreeSet::new(); 2 * p.m()];
        for u in relator_prefixes(&c, lambda) {
            let last = u.letters()[u.len() - 1];
            sets[last.index()].insert(u);
        }
        let min_prefix_len = sets.iter().flatten().map(|u| u.len()).min();
        let prefix_counts = sets.iter().map(BTreeSet::len).collect();
        let prefix_weights = sets
            .iter()
            .map(|s| {
                let mut hist = std::collections::BTreeMap::new();
                for u in s {
                    let wu: u64 = u.letters().iter().map(|l| letter_weight[l.index()]).sum();
                    *hist.entry(wu).or_insert(0usize) += 1;
                }
                hist.into_iter().collect()
            })
            .collect();
        let m0 = free_entropy(&w.to_f64()).exp();
        Ok(RootPolynomial {
            m: p.m(),
            letter_weight,
            prefix_weights,
            prefix_counts,
            min_prefix_len,
            m0,
        })
    }

    /// `M₀ = e^{h(F_m, w)}`, the root of the relator-free part `p₀`.
    pub fn m0(&self) -> f64 {
        self.m0
    }

    /// `N = Σ_{s∈S} w(s)`.
    pub fn total_weight(&self) -> u64 {
        self.letter_weight.iter().sum()
    }

    /// `j = max_s |R_{λ,s}|`.
    pub fn j(&self) -> usize {
        self.prefix_counts.iter().copied().max().unwrap_or(0)
    }

    /// `l`: shortest unweighted length among the prefixes.
    pub fn l(&self) -> Option<usize> {
        self.min_prefix_len
    }

    pub fn has_relators(&self) -> bool {
        self.min_prefix_len.is_some()
    }

    pub fn hypotheses(&self) -> RootHypotheses {
        let m = self.m;
        let j = self.j();
        let l = self.l();
        let (log_lhs, log_rhs) = match l {
            Some(l) if j > 0 => (
                Some(((8 * m * j * l) as f64).ln()),
                Some((l as f64 / (16.0 * m as f64) - 2.0) * ((2 * m - 1) as f64).ln()),
            ),
            _ => (None, None),
        };
        RootHypotheses {
            m,
            j,
            l,
            n: self.total_weight(),
            l_exceeds_32m: l.is_some_and(|l| l > 32 * m),
            counting_condition: matches!((log_lhs, log_rhs), (Some(a), Some(b)) if a < b),
            log_lhs,
            log_rhs,
        }
    }

    /// `p(e^t)`, evaluated in log coordinates to avoid overflow.
    pub fn eval_log(&self, t: f64) -> f64 {
        let mut v = 1.0;
        for (s, &ws) in self.letter_weight.iter().enumerate() {
            let x = ws as f64 * t;
            let inv = 1.0 / (x.exp() + 1.0);
            v -= inv;
            let q: f64 = self.prefix_weights[s]
                .iter()
                .map(|&(u, k)| k as f64 * (-(u as f64) * t).exp())
                .sum();
            v += q / (1.0 + (-x).exp());
        }
        v
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.eval_log(z.ln())
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, z: &BigRational) -> BigRational {
        let pow = |e: u64| -> BigRational {
            let mut r = BigRational::one();
            let mut base = z.clone();
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    r *= &base;
                }
                base = &base * &base;
                e >>= 1;
            }
            r
        };
        let one = BigRational::one();
        let mut v = one.clone();
        for (s, &ws) in self.letter_weight.iter().enumerate() {
            let zw = pow(ws);
            let denom = &zw + &one;
            v -= one.clone() / &denom;
            let mut q = BigRational::zero();
            for &(u, k) in &self.prefix_weights[s] {
                q += BigRational::from_integer(BigInt::from(k)) / pow(u);
            }
            v += zw / denom * q;
        }
        v
    }

    /// Largest real root in `(1, M₀]`: sign scan on a geometric grid, then
    /// bisection on the rightmost sign change. At `M₀` itself `p = q > 0`
    /// whenever relators are present, and `p = p₀` vanishes there otherwise.
    pub fn largest_root(&self) -> Option<f64> {
        if self.m0 <= 1.0 {
            return None;
        }
        if !self.has_relators() {
            return Some(self.m0);
        }
        let top = self.m0.ln();
        let t = |k: usize| top * k as f64 / GRID as f64;
        let k = (1..GRID).rev().find(|&k| self.eval_log(t(k)) <= 0.0)?;
        let (mut lo, mut hi) = (t(k), t(k + 1));
        if self.eval_log(lo) == 0.0 {
            return Some(lo.exp());
        }
        for _ in 0..200 {
            if hi - lo <= 1e-13 * hi.max(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.eval_log(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((0.5 * (lo + hi)).exp())
    }
}

/// `p(z)` for a symmetrized presentation and integer weights.
pub fn p_eval(p: &Presentation, lambda: Rational64, w: &WeightVector, z: f64) -> Result<f64> {
    Ok(RootPolynomial::new(p, lambda, w)?.eval(z))
}

/// Exact `p(z)` at rational `z`.
pub fn p_eval_exact(p: &Presentation, lambda: Rational64, w: &WeightVector, z: &BigRational) -> Result<BigRational> {
    Ok(RootPolynomial::new(p, lambda, w)?.eval_exact(z))
}

/// Largest real root of `p` in `(1, M₀]`, if a sign change is found.
pub fn p_largest_root(p: &Presentation, lambda: Rational64, w: &WeightVector) -> Result<Option<f64>> {
    Ok(RootPolynomial::new(p, lambda, w)?.largest_root())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational_from_f64(x: f64, denom: i64) -> BigRational {
        BigRational::new(BigInt::from((x * denom as f64).round() as i64), BigInt::from(denom))
    }
    use num_traits::Signed;

    fn free(m: usize) -> Presentation {
        Presentation::free(m)
    }

    /// Real root of `z³ − z² − z − 3` by bisection on `[2, 3]`.
    fn cubic_root() -> f64 {
        let f = |z: f64| z * z * z - z * z - z - 3.0;
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn free_polynomial_values() {
        let l = Rational64::new(1, 16);
        let unit = WeightVector::unit(2);
        assert!(p_eval(&free(2), l, &unit, 3.0).unwrap().abs() < 1e-15);
        let w12 = WeightVector::from_integers(&[1, 2]).unwrap();
        let closed = |z: f64| 1.0 - 2.0 / (z + 1.0) - 2.0 / (z * z + 1.0);
        let hi = p_eval(&free(2), l, &w12, 2.2).unwrap();
        let lo = p_eval(&free(2), l, &w12, 2.0).unwrap();
        assert!((hi - closed(2.2)).abs() < 1e-14 && hi > 0.0, "{hi}");
        assert!((lo + 1.0 / 15.0).abs() < 1e-14, "{lo}");
        assert!(cubic_root() > 2.0 && cubic_root() < 2.2);
    }

    #[test]
    fn free_roots() {
        let l = Rational64::new(1, 16);
        let r = p_largest_root(&free(2), l, &WeightVector::unit(2)).unwrap().unwrap();
        assert!((r - 3.0).abs() < 1e-9);
        let w12 = WeightVector::from_integers(&[1, 2]).unwrap();
        let r = p_largest_root(&free(2), l, &w12).unwrap().unwrap();
        assert!((r - cubic_root()).abs() < 1e-6, "{r}");
    }

    #[test]
    fn positive_at_m0_with_relators() {
        let r: crate::words::Word = "aabbaBaBBabbAbbaaBAbaBBabaaBBAbAAbbabAbaaBBabAB".parse().unwrap();
        assert!(r.is_cyclically_reduced());
        let p = Presentation::new(2, vec![r]).unwrap().symmetrized().unwrap();
        let lp = RootPolynomial::new(&p, Rational64::new(1, 6), &WeightVector::unit(2)).unwrap();
        let three = BigRational::from_integer(BigInt::from(3));
        assert!(lp.eval_exact(&three).is_positive());
        let r = lp.largest_root().unwrap();
        assert!(r > 1.0 && r < 3.0);
        assert!(lp.eval(r).abs() < 1e-9);
    }

    #[test]
    fn exact_and_float_agree() {
        let p = Presentation::new(2, vec!["abaabbbaBaBB".parse().unwrap()])
            .unwrap()
            .symmetrized()
            .unwrap();
        let w = WeightVector::from_integers(&[2, 3]).unwrap();
        let lp = RootPolynomial::new(&p, Rational64::new(1, 3), &w).unwrap();
        for z in [1.25, 1.5, 2.0, 2.75] {
            let exact = lp.eval_exact(&rational_from_f64(z, 4));
            let approx: f64 = num_traits::ToPrimitive::to_f64(&exact).unwrap();
            assert!((approx - lp.eval(z)).abs() < 1e-12);
        }
    }
}
