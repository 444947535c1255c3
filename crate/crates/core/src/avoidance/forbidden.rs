use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{threshold, SymmetricClosure};
use crate::words::{Letter, Presentation, Word};

/// A finite set of nonempty forbidden words over the `2m` letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenSet {
    m: usize,
    patterns: Vec<Word>,
    reduced_set: bool,
}

fn contains_factor(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

impl ForbiddenSet {
    /// Deduplicated, unreduced set.
    pub fn unreduced(m: usize, patterns: impl IntoIterator<Item = Word>) -> Result<ForbiddenSet> {
        let mut set = BTreeSet::new();
        for p in patterns {
            if p.is_empty() {
                return Err(Error::InvalidParameter("forbidden words must be nonempty".into()));
            }
            p.check_alphabet(m)?;
            set.insert(p);
        }
        let patterns: Vec<Word> = set.into_iter().collect();
        let reduced_set = is_reduced_family(&patterns);
        Ok(ForbiddenSet {
            m,
            patterns,
            reduced_set,
        })
    }

    /// Deduplicated set with every pattern that contains another removed.
    pub fn new(m: usize, patterns: impl IntoIterator<Item = Word>) -> Result<ForbiddenSet> {
        Ok(ForbiddenSet::unreduced(m, patterns)?.reduced())
    }

    /// The inverse pairs `aᵢaᵢ⁻¹`, `aᵢ⁻¹aᵢ`: avoiders are the reduced words.
    pub fn free(m: usize) -> ForbiddenSet {
        ForbiddenSet::new(m, inverse_pairs(m)).expect("inverse pairs are valid patterns")
    }

    pub fn reduced(self) -> ForbiddenSet {
        if self.reduced_set {
            return self;
        }
        let keep: Vec<Word> = self
            .patterns
            .iter()
            .filter(|p| {
                !self
                    .patterns
                    .iter()
                    .any(|q| q.len() < p.len() && contains_factor(p.letters(), q.letters()))
            })
            .cloned()
            .collect();
        ForbiddenSet {
            m: self.m,
            patterns: keep,
            reduced_set: true,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn patterns(&self) -> &[Word] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn is_reduced_set(&self) -> bool {
        self.reduced_set
    }

    /// Whether `x` contains no pattern.
    pub fn avoids(&self, x: &Word) -> bool {
        !self
            .patterns
            .iter()
            .any(|p| contains_factor(x.letters(), p.letters()))
    }
}

fn is_reduced_family(patterns: &[Word]) -> bool {
    patterns.iter().enumerate().all(|(i, p)| {
        patterns
            .iter()
            .enumerate()
            .all(|(j, q)| i == j || !contains_factor(p.letters(), q.letters()))
    })
}

pub(crate) fn inverse_pairs(m: usize) -> Vec<Word> {
    (1..=m)
        .flat_map(|i| {
            let a = Letter::generator(i);
            [Word::new(vec![a, a.inverse()]), Word::new(vec![a.inverse(), a])]
        })
        .collect()
}

/// Prefixes `U_r` of length `⌈λ|r|⌉`, one per `r ∈ R*`, deduplicated.
pub(crate) fn relator_prefixes(c: &SymmetricClosure, lambda: Rational64) -> BTreeSet<Word> {
    c.iter()
        .map(|r| r.prefix(threshold(lambda, r.len()).max(1)))
        .collect()
}

/// Forbidden words for λ-reduced words: inverse pairs plus relator prefixes.
pub fn build_forbidden_set(p: &Presentation, lambda: Rational64) -> Result<ForbiddenSet> {
    crate::presentation::check_lambda(lambda)?;
    let c = SymmetricClosure::new(p)?;
    let mut patterns = inverse_pairs(p.m());
    patterns.extend(relator_prefixes(&c, lambda));
    ForbiddenSet::new(p.m(), patterns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_set_is_inverse_pairs() {
        let f = build_forbidden_set(&Presentation::free(2), Rational64::new(1, 16)).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f, ForbiddenSet::free(2));
        assert!(f.is_reduced_set());
    }

    #[test]
    fn genus_two_quarter() {
        let p = crate::presentation::surface_presentation(2).unwrap().symmetrized().unwrap();
        let f = build_forbidden_set(&p, Rational64::new(1, 4)).unwrap();
        let prefixes: BTreeSet<Word> = p
            .relator_set()
            .unwrap()
            .iter()
            .map(|r| Word::new(r.letters()[..2].to_vec()))
            .collect();
        assert_eq!(prefixes.len(), 16);
        assert_eq!(f.len(), 8 + 16);
        for u in &prefixes {
            assert!(f.patterns().contains(u));
        }
    }

    #[test]
    fn genus_two_eighth_forbids_every_letter() {
        let p = crate::presentation::surface_presentation(2).unwrap().symmetrized().unwrap();
        let f = build_forbidden_set(&p, Rational64::new(1, 8)).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.patterns().iter().all(|u| u.len() == 1));
        assert!(!f.avoids(&w("a")));
        assert!(f.avoids(&Word::empty()));
    }

    #[test]
    fn reduction_drops_superwords() {
        let f = ForbiddenSet::unreduced(2, [w("ab"), w("aab"), w("ba"), w("ab")]).unwrap();
        assert_eq!(f.len(), 3);
        assert!(!f.is_reduced_set());
        let r = f.reduced();
        assert_eq!(r.patterns(), &[w("ab"), w("ba")]);
        assert!(ForbiddenSet::unreduced(2, [Word::empty()]).is_err());
    }
}
