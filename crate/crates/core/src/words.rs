//! Letters, words, weights and presentations.
//!
//! A [`Letter`] is a nonzero signed integer: `i` stands for the generator
//! `a_i` and `-i` for its inverse. Words are plain letter sequences; reduction
//! state is computed on demand. Weights are exact rationals so that
//! normalization can be tested exactly.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A signed generator `a_i^{±1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(value: i32) -> Option<Letter> {
        (value != 0).then_some(Letter(value))
    }

    /// The generator `a_i` (1-based).
    pub fn generator(i: usize) -> Letter {
        assert!(i >= 1, "generators are 1-based");
        Letter(i as i32)
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// 1-based generator index, shared by a letter and its inverse.
    pub fn gen_index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Dense index in `0..2m`: `a_i -> 2(i-1)`, `a_i^{-1} -> 2(i-1)+1`.
    pub fn index(self) -> usize {
        2 * (self.gen_index() - 1) + usize::from(self.is_inverse())
    }

    pub fn from_index(idx: usize) -> Letter {
        let g = (idx / 2 + 1) as i32;
        if idx % 2 == 0 {
            Letter(g)
        } else {
            Letter(-g)
        }
    }

    /// Every letter of `S = A ∪ A^{-1}` in dense-index order.
    pub fn alphabet(m: usize) -> impl Iterator<Item = Letter> {
        (0..2 * m).map(Letter::from_index)
    }

    pub fn to_char(self) -> Option<char> {
        let g = self.gen_index();
        if g > 26 {
            return None;
        }
        let base = if self.is_inverse() { b'A' } else { b'a' };
        Some((base + (g - 1) as u8) as char)
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter(c as i32 - 'a' as i32 + 1)),
            'A'..='Z' => Some(Letter(-(c as i32 - 'A' as i32 + 1))),
            _ => None,
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.0),
        }
    }
}

/// A finite sequence of letters. Ordering is lexicographic in letter index
/// order (`a < A < b < B < …`), shorter prefixes first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Builds a word from signed integers; panics on zero.
    pub fn from_ints(values: &[i32]) -> Word {
        Word(
            values
                .iter()
                .map(|&v| Letter::new(v).expect("zero is not a letter"))
                .collect(),
        )
    }

    pub fn power(letter: Letter, n: usize) -> Word {
        Word(vec![letter; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.gen_index()).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[1] != p[0].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) if self.0.len() > 1 => f != l.inverse(),
                _ => true,
            }
    }

    /// Deletes adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn cyclic_reduce(&self) -> Word {
        let r = self.free_reduce().0;
        let (mut i, mut j) = (0, r.len());
        while j - i >= 2 && r[i] == r[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(r[i..j].to_vec())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The cyclic shift starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Number of occurrences of `a_g^{±1}` per 1-based generator index.
    pub fn letter_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for l in &self.0 {
            *counts.entry(l.gen_index()).or_insert(0) += 1;
        }
        counts
    }

    pub fn weighted_length(&self, w: &WeightVector) -> BigRational {
        self.0
            .iter()
            .fold(BigRational::zero(), |acc, l| acc + w.weight(*l))
    }

    pub fn check_alphabet(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|l| l.gen_index() > m) {
            Some(l) => Err(Error::LetterOutOfRange { value: l.0, m }),
            None => Ok(()),
        }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

/// Letters `a–z` are generators 1..26, `A–Z` their inverses.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("unexpected character {c:?} in word"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_generator() <= 26 {
            for l in &self.0 {
                write!(f, "{}", l.to_char().unwrap())?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.0.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symmetric positive weights, one per generator (`w(a) = w(a^{-1})`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    per_generator: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(per_generator: Vec<BigRational>) -> Result<WeightVector> {
        if per_generator.is_empty() {
            return Err(Error::InvalidWeight("no generators".into()));
        }
        if let Some(w) = per_generator.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidWeight(format!("{w} is not positive")));
        }
        Ok(WeightVector { per_generator })
    }

    pub fn from_integers(values: &[u64]) -> Result<WeightVector> {
        WeightVector::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// Ratios `(numerator, denominator)` per generator.
    pub fn from_ratios(values: &[(i64, i64)]) -> Result<WeightVector> {
        if values.iter().any(|&(_, d)| d == 0) {
            return Err(Error::InvalidWeight("zero denominator".into()));
        }
        WeightVector::new(
            values
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn unit(m: usize) -> WeightVector {
        WeightVector::from_integers(&vec![1; m]).expect("m >= 1")
    }

    /// The uniform normalized weight `w_*`, `1/(2m)` per letter.
    pub fn uniform_normalized(m: usize) -> WeightVector {
        let w = BigRational::new(BigInt::one(), BigInt::from(2 * m));
        WeightVector::new(vec![w; m]).expect("m >= 1")
    }

    pub fn m(&self) -> usize {
        self.per_generator.len()
    }

    pub fn per_generator(&self) -> &[BigRational] {
        &self.per_generator
    }

    pub fn weight(&self, l: Letter) -> &BigRational {
        &self.per_generator[l.gen_index() - 1]
    }

    /// `N = Σ_{s∈S} w(s) = 2 Σ_i w_i`.
    pub fn total(&self) -> BigRational {
        self.per_generator
            .iter()
            .fold(BigRational::zero(), |a, w| a + w)
            * BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.per_generator.iter().all(|w| w.is_integer())
    }

    pub fn normalize(&self) -> WeightVector {
        let t = self.total();
        WeightVector {
            per_generator: self.per_generator.iter().map(|w| w / &t).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Result<WeightVector> {
        WeightVector::new(self.per_generator.iter().map(|w| w * factor).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.per_generator
            .iter()
            .map(|w| w.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Integer weights, or an error when some weight is fractional.
    pub fn integral_values(&self) -> Result<Vec<u64>> {
        self.per_generator
            .iter()
            .map(|w| {
                if w.is_integer() {
                    w.to_integer().to_u64().ok_or(Error::NonIntegralWeights)
                } else {
                    Err(Error::NonIntegralWeights)
                }
            })
            .collect()
    }

    pub fn min(&self) -> &BigRational {
        self.per_generator.iter().min().unwrap()
    }

    pub fn max(&self) -> &BigRational {
        self.per_generator.iter().max().unwrap()
    }
}

/// A finite presentation `⟨a_1..a_m | R⟩`.
///
/// When `symmetrized` is set the relator set is read as its closure `R*`
/// under cyclic permutation and inversion; the stored relators are then one
/// cyclically reduced representative per class, and the full closure is
/// available through [`crate::presentation::SymmetricClosure`] or
/// [`Presentation::relator_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    m: usize,
    relators: Vec<Word>,
    symmetrized: bool,
}

impl Presentation {
    pub fn new(m: usize, relators: Vec<Word>) -> Result<Presentation> {
        if m == 0 {
            return Err(Error::InvalidParameter("alphabet size must be >= 1".into()));
        }
        for r in &relators {
            r.check_alphabet(m)?;
        }
        Ok(Presentation {
            m,
            relators,
            symmetrized: false,
        })
    }

    pub fn free(m: usize) -> Presentation {
        Presentation {
            m,
            relators: Vec::new(),
            symmetrized: true,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_symmetrized(&self) -> bool {
        self.symmetrized
    }

    pub fn all_cyclically_reduced(&self) -> bool {
        self.relators
            .iter()
            .all(|r| !r.is_empty() && r.is_cyclically_reduced())
    }

    /// Marks the presentation as symmetrized, keeping one representative per
    /// class of `R*`. Rejects relators that are not cyclically reduced.
    pub fn symmetrized(&self) -> Result<Presentation> {
        if let Some(r) = self
            .relators
            .iter()
            .find(|r| r.is_empty() || !r.is_cyclically_reduced())
        {
            return Err(Error::NotCyclicallyReduced(r.clone()));
        }
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for r in &self.relators {
            let key = least_rotation(r.letters());
            let inv_key = least_rotation(r.inverse().letters());
            if seen.contains(&key) || seen.contains(&inv_key) {
                continue;
            }
            seen.insert(key);
            seen.insert(inv_key);
            reps.push(r.clone());
        }
        Ok(Presentation {
            m: self.m,
            relators: reps,
            symmetrized: true,
        })
    }

    /// Cyclically reduces every relator, dropping the ones that vanish.
    pub fn cyclically_reduced(&self) -> Presentation {
        Presentation {
            m: self.m,
            relators: self
                .relators
                .iter()
                .map(Word::cyclic_reduce)
                .filter(|r| !r.is_empty())
                .collect(),
            symmetrized: false,
        }
    }

    /// The materialized closure `R*` (sorted). Intended for small inputs.
    pub fn relator_set(&self) -> Result<Vec<Word>> {
        if self.symmetrized {
            symmetrize(&self.relators)
        } else {
            Err(Error::NotSymmetrized)
        }
    }

    pub fn min_relator_length(&self) -> Option<usize> {
        self.relators.iter().map(Word::len).min()
    }
}

/// The closure of `relators` under cyclic permutation and inversion,
/// deduplicated and sorted.
pub fn symmetrize(relators: &[Word]) -> Result<Vec<Word>> {
    let mut out = BTreeSet::new();
    for r in relators {
        if r.is_empty() || !r.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(r.clone()));
        }
        let inv = r.inverse();
        for k in 0..r.len() {
            out.insert(r.rotate(k));
            out.insert(inv.rotate(k));
        }
    }
    Ok(out.into_iter().collect())
}

/// Lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(s: &[Letter]) -> Vec<Letter> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let at = |i: usize| s[i % n];
    let mut f = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != usize::MAX && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == usize::MAX && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = usize::MAX;
        } else {
            f[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    (0..n).map(|i| at(k + i)).collect()
}
