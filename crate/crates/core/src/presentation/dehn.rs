use crate::error::Result;
use crate::presentation::closure::SymmetricClosure;
use crate::words::{Letter, Presentation, Word};

/// Dehn's algorithm over the sorted rotations of `R*`.
///
/// Sound as a word-problem solver when the presentation is `C'(1/6)` (or is a
/// surface group, where the classical argument also applies).
#[derive(Clone, Debug)]
pub struct DehnReducer {
    closure: SymmetricClosure,
    min_len: usize,
    max_len: usize,
}

struct Match {
    start: usize,
    len: usize,
    elem: usize,
}

impl DehnReducer {
    pub fn new(p: &Presentation) -> Result<DehnReducer> {
        Ok(DehnReducer::from_closure(SymmetricClosure::new(p)?))
    }

    pub fn from_closure(closure: SymmetricClosure) -> DehnReducer {
        let min_len = closure.min_len().unwrap_or(usize::MAX);
        let max_len = closure.max_len().unwrap_or(0);
        DehnReducer {
            closure,
            min_len,
            max_len,
        }
    }

    pub fn closure(&self) -> &SymmetricClosure {
        &self.closure
    }

    /// Shortest relator length (`usize::MAX` for a free group).
    pub fn min_relator_len(&self) -> usize {
        self.min_len
    }

    /// Longest prefix of some `r ∈ R*` starting at `x[start..]` with more than
    /// half of `r`; ties broken by sorted order of `R*`.
    fn longest_at(&self, x: &[Letter], start: usize) -> Option<(usize, usize)> {
        let c = &self.closure;
        let (mut lo, mut hi) = (0, c.len());
        let mut best = None;
        for depth in 0..x.len() - start {
            let (a, b) = c.refine(lo, hi, depth, x[start + depth]);
            if a == b {
                break;
            }
            (lo, hi) = (a, b);
            let k = depth + 1;
            if 2 * k <= self.min_len {
                continue;
            }
            let found = if 2 * k > self.max_len {
                Some(lo)
            } else {
                (lo..hi).find(|&i| 2 * k > c.element(i).len())
            };
            if let Some(i) = found {
                best = Some((k, i));
            }
        }
        best
    }

    fn find(&self, x: &[Letter]) -> Option<Match> {
        if self.closure.is_empty() || 2 * x.len() <= self.min_len {
            return None;
        }
        (0..x.len()).find_map(|s| {
            self.longest_at(x, s).map(|(len, elem)| Match {
                start: s,
                len,
                elem,
            })
        })
    }

    pub fn reduce(&self, x: &Word) -> Word {
        let mut cur = x.free_reduce();
        while let Some(mt) = self.find(cur.letters()) {
            let rest = self.closure.element(mt.elem).suffix_from(mt.len).inverse();
            let l = cur.letters();
            let mut next = Vec::with_capacity(l.len());
            next.extend_from_slice(&l[..mt.start]);
            next.extend_from_slice(rest.letters());
            next.extend_from_slice(&l[mt.start + mt.len..]);
            cur = Word::new(next).free_reduce();
        }
        cur
    }

    pub fn is_identity(&self, x: &Word) -> bool {
        self.reduce(x).is_empty()
    }

    pub fn equal(&self, x: &Word, y: &Word) -> bool {
        self.is_identity(&x.mul(&y.inverse()))
    }
}

/// Runs Dehn's algorithm once against `p` (symmetrized).
pub fn dehn_reduce(x: &Word, p: &Presentation) -> Result<Word> {
    Ok(DehnReducer::new(p)?.reduce(x))
}
