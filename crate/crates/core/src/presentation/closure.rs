use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::words::{least_rotation, Letter, Presentation, Word};

/// The symmetrized relator set `R*`, stored as rotations of its distinct
/// cyclic classes rather than as materialized words, sorted lexicographically.
#[derive(Clone, Debug)]
pub struct SymmetricClosure {
    m: usize,
    cores: Vec<Word>,
    elems: Vec<Rot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Rot {
    core: u32,
    offset: u32,
}

/// A borrowed cyclic shift of a relator.
#[derive(Clone, Copy, Debug)]
pub struct RotView<'a> {
    core: &'a [Letter],
    offset: usize,
}

impl<'a> RotView<'a> {
    pub fn len(&self) -> usize {
        self.core.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    pub fn get(&self, k: usize) -> Letter {
        let n = self.core.len();
        let i = self.offset + k;
        self.core[if i >= n { i - n } else { i }]
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + 'a {
        let (core, offset) = (self.core, self.offset);
        core[offset..].iter().chain(core[..offset].iter()).copied()
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word::new(self.iter().take(k).collect())
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        Word::new(self.iter().skip(k).collect())
    }

    pub fn to_word(&self) -> Word {
        Word::new(self.iter().collect())
    }

    /// Length of the longest common prefix.
    pub fn lcp(&self, other: &RotView<'_>) -> usize {
        self.iter()
            .zip(other.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    fn cmp_lex(&self, other: &RotView<'_>) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Smallest period `p` of the cyclic word (number of distinct rotations).
fn rotation_period(s: &[Letter]) -> usize {
    let n = s.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

impl SymmetricClosure {
    pub fn new(p: &Presentation) -> Result<SymmetricClosure> {
        if !p.is_symmetrized() {
            return Err(Error::NotSymmetrized);
        }
        SymmetricClosure::from_relators(p.m(), p.relators())
    }

    /// Closure of arbitrary cyclically reduced relators.
    pub fn from_relators(m: usize, relators: &[Word]) -> Result<SymmetricClosure> {
        let mut seen = HashSet::new();
        let mut cores = Vec::new();
        for r in relators {
            if r.is_empty() || !r.is_cyclically_reduced() {
                return Err(Error::NotCyclicallyReduced(r.clone()));
            }
            r.check_alphabet(m)?;
            for w in [r.clone(), r.inverse()] {
                let key = least_rotation(w.letters());
                if seen.insert(key) {
                    cores.push(w);
                }
            }
        }
        let mut elems = Vec::new();
        for (ci, c) in cores.iter().enumerate() {
            for off in 0..rotation_period(c.letters()) {
                elems.push(Rot {
                    core: ci as u32,
                    offset: off as u32,
                });
            }
        }
        let view = |r: &Rot| RotView {
            core: cores[r.core as usize].letters(),
            offset: r.offset as usize,
        };
        elems.sort_by(|a, b| view(a).cmp_lex(&view(b)));
        Ok(SymmetricClosure { m, cores, elems })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|R*|`.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Distinct cyclic classes (a relator and its inverse are separate classes
    /// unless conjugate).
    pub fn cores(&self) -> &[Word] {
        &self.cores
    }

    pub fn element(&self, i: usize) -> RotView<'_> {
        let r = self.elems[i];
        RotView {
            core: self.cores[r.core as usize].letters(),
            offset: r.offset as usize,
        }
    }

    /// Index of the cyclic class of element `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.elems[i].core as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = RotView<'_>> + '_ {
        (0..self.len()).map(move |i| self.element(i))
    }

    pub fn to_words(&self) -> Vec<Word> {
        self.iter().map(|v| v.to_word()).collect()
    }

    pub fn min_len(&self) -> Option<usize> {
        self.cores.iter().map(Word::len).min()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.cores.iter().map(Word::len).max()
    }

    /// Index of the class containing `r` as a rotation, if any.
    pub fn find_class(&self, r: &Word) -> Option<usize> {
        let key = least_rotation(r.letters());
        self.cores
            .iter()
            .position(|c| c.len() == r.len() && least_rotation(c.letters()) == key)
    }

    /// Narrows the sorted range `[lo, hi)` of elements sharing a prefix of
    /// length `depth` to those whose next letter is `c`.
    pub(crate) fn refine(&self, lo: usize, hi: usize, depth: usize, c: Letter) -> (usize, usize) {
        let key = |i: usize| {
            let e = self.element(i);
            (e.len() > depth).then(|| e.get(depth))
        };
        let bound = |pred: &dyn Fn(usize) -> bool| {
            let (mut a, mut b) = (lo, hi);
            while a < b {
                let mid = a + (b - a) / 2;
                if pred(mid) {
                    a = mid + 1;
                } else {
                    b = mid;
                }
            }
            a
        };
        let start = bound(&|i| key(i) < Some(c));
        let end = bound(&|i| key(i) <= Some(c));
        (start, end)
    }
}
