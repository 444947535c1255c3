use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::presentation::{c_prime_on, surface_presentation, DehnReducer, SymmetricClosure};
use crate::words::{least_rotation, Letter, Presentation, WeightVector, Word};

/// Default cap on the number of group elements a search may settle.
pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// Weighted word metric on a group where Dehn's algorithm decides equality:
/// free groups, `C'(1/6)` presentations and surface groups.
///
/// Group elements are represented by Dehn-reduced words. Two distinct such
/// words can name the same element only if their combined length exceeds
/// half the shortest relator, so the pairwise equality test is confined to
/// those pairs (and, when every relator has zero exponent sums, to pairs
/// with equal abelianized images).
#[derive(Clone, Debug)]
pub struct WordMetric {
    m: usize,
    reducer: Option<DehnReducer>,
    moves: Vec<(Word, u64)>,
    scale: u64,
    min_relator_len: usize,
    abelian_key: bool,
    node_cap: usize,
}

/// Settled elements in order of `(distance, word)`; distances are integers in
/// units of `1/scale`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub elements: Vec<(Word, u64)>,
    pub scale: u64,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn distance(&self, index: usize) -> BigRational {
        BigRational::new(BigInt::from(self.elements[index].1), BigInt::from(self.scale))
    }

    /// Number of elements at distance at most `r`.
    pub fn count_within(&self, r: &BigRational) -> usize {
        let limit = scaled_floor(r, self.scale);
        self.elements.partition_point(|(_, d)| *d <= limit)
    }

    pub fn distances(&self) -> HashMap<Word, BigRational> {
        (0..self.len())
            .map(|i| (self.elements[i].0.clone(), self.distance(i)))
            .collect()
    }
}

fn scaled_floor(r: &BigRational, scale: u64) -> u64 {
    let v = (r * BigRational::from_integer(BigInt::from(scale))).floor();
    v.to_integer().to_u64().unwrap_or(u64::MAX)
}

fn lcd(values: &[BigRational]) -> Result<u64> {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l.to_u64()
        .ok_or_else(|| Error::InvalidParameter("weight denominators are too large".into()))
}

fn is_surface_presentation(p: &Presentation) -> bool {
    if p.m() % 2 != 0 || p.m() < 4 {
        return false;
    }
    let Ok(s) = surface_presentation(p.m() / 2).and_then(|s| s.symmetrized()) else {
        return false;
    };
    let classes = |q: &Presentation| -> Vec<Vec<Letter>> {
        let mut v: Vec<_> = q.relators().iter().map(|r| least_rotation(r.letters())).collect();
        v.sort();
        v
    };
    classes(p) == classes(&s)
}

fn exponent_sums(x: &Word, m: usize) -> Vec<i32> {
    let mut v = vec![0; m];
    for l in x.letters() {
        v[l.gen_index() - 1] += if l.is_inverse() { -1 } else { 1 };
    }
    v
}

impl WordMetric {
    /// The word metric of `w` on the standard generators.
    pub fn new(p: &Presentation, w: &WeightVector) -> Result<WordMetric> {
        if w.m() != p.m() {
            return Err(Error::WeightArity { expected: p.m(), got: w.m() });
        }
        let moves = Letter::alphabet(p.m())
            .map(|l| (Word::new(vec![l]), w.weight(l).clone()))
            .collect();
        WordMetric::with_moves(p, moves)
    }

    /// Word metric for an arbitrary finite generating set given as words with
    /// positive rational costs.
    pub fn with_moves(p: &Presentation, moves: Vec<(Word, BigRational)>) -> Result<WordMetric> {
        for (mv, c) in &moves {
            mv.check_alphabet(p.m())?;
            if c <= &BigRational::zero() {
                return Err(Error::InvalidWeight(format!("move {mv} has non-positive cost {c}")));
            }
        }
        let costs: Vec<BigRational> = moves.iter().map(|(_, c)| c.clone()).collect();
        let scale = lcd(&costs)?;
        let moves = moves
            .into_iter()
            .map(|(mv, c)| {
                let v = (c * BigRational::from_integer(BigInt::from(scale))).to_integer();
                (mv.free_reduce(), v.to_u64().unwrap_or(u64::MAX))
            })
            .collect();
        let sym = if p.is_symmetrized() { p.clone() } else { p.symmetrized()? };
        let (reducer, min_relator_len, abelian_key) = if sym.relators().is_empty() {
            (None, usize::MAX, true)
        } else {
            let closure = SymmetricClosure::new(&sym)?;
            if !c_prime_on(&closure, Rational64::new(1, 6)).holds && !is_surface_presentation(&sym) {
                return Err(Error::InvalidParameter(
                    "equality by Dehn's algorithm needs a C'(1/6) or surface presentation".into(),
                ));
            }
            let abelian = sym.relators().iter().all(|r| exponent_sums(r, p.m()).iter().all(|&e| e == 0));
            let reducer = DehnReducer::from_closure(closure);
            let min = reducer.min_relator_len();
            (Some(reducer), min, abelian)
        };
        Ok(WordMetric {
            m: p.m(),
            reducer,
            moves,
            scale,
            min_relator_len,
            abelian_key,
            node_cap: DEFAULT_NODE_CAP,
        })
    }

    pub fn with_node_cap(mut self, cap: usize) -> WordMetric {
        self.node_cap = cap;
        self
    }

    /// Denominator of all distances.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    fn reduce(&self, x: &Word) -> Word {
        match &self.reducer {
            Some(r) => r.reduce(x),
            None => x.free_reduce(),
        }
    }

    fn key(&self, x: &Word) -> Vec<i32> {
        if self.abelian_key {
            exponent_sums(x, self.m)
        } else {
            Vec::new()
        }
    }

    /// Whether two reduced representatives may name the same element and so
    /// need the full equality test.
    fn may_collide(&self, x: &Word, y: &Word) -> bool {
        2 * (x.len() + y.len()) > self.min_relator_len
    }

    fn same_element(&self, x: &Word, y: &Word) -> bool {
        x == y || (self.may_collide(x, y) && self.reduce(&x.mul(&y.inverse())).is_empty())
    }

    /// Uniform-cost search from the identity out to scaled distance `limit`,
    /// calling `visit` on each settled element; `visit` returning `false`
    /// stops the search.
    fn search(&self, limit: u64, mut visit: impl FnMut(&Word, u64) -> bool) -> Result<()> {
        let mut tentative: HashMap<Word, u64> = HashMap::new();
        let mut settled: HashMap<Word, ()> = HashMap::new();
        let mut buckets: HashMap<Vec<i32>, BTreeMap<usize, Vec<Word>>> = HashMap::new();
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u64, Word::empty())));
        let mut count = 0usize;
        while let Some(Reverse((d, x))) = heap.pop() {
            if settled.contains_key(&x) {
                continue;
            }
            let key = self.key(&x);
            if self.reducer.is_some() {
                let shortest = (self.min_relator_len / 2 + 1).saturating_sub(x.len());
                let bucket = buckets.get(&key);
                if bucket.is_some_and(|b| {
                    b.range(shortest..)
                        .flat_map(|(_, ys)| ys)
                        .any(|y| self.may_collide(&x, y) && self.same_element(&x, y))
                }) {
                    settled.insert(x, ());
                    continue;
                }
            }
            count += 1;
            if count > self.node_cap {
                return Err(Error::ResourceCap { limit: self.node_cap });
            }
            if !visit(&x, d) {
                return Ok(());
            }
            for (mv, c) in &self.moves {
                let nd = d + c;
                if nd > limit {
                    continue;
                }
                let y = self.reduce(&x.concat(mv));
                if settled.contains_key(&y) {
                    continue;
                }
                match tentative.get(&y) {
                    Some(&old) if old <= nd => continue,
                    _ => {
                        tentative.insert(y.clone(), nd);
                        heap.push(Reverse((nd, y)));
                    }
                }
            }
            tentative.remove(&x);
            if self.reducer.is_some() {
                buckets.entry(key).or_default().entry(x.len()).or_default().push(x.clone());
            }
            settled.insert(x, ());
        }
        Ok(())
    }

    /// All elements within distance `r` of the identity.
    pub fn ball(&self, r: &BigRational) -> Result<Ball> {
        let limit = scaled_floor(r, self.scale);
        let mut elements = Vec::new();
        self.search(limit, |x, d| {
            elements.push((x.clone(), d));
            true
        })?;
        Ok(Ball {
            elements,
            scale: self.scale,
        })
    }

    /// Distances from the identity to each target element.
    pub fn distances_to(&self, targets: &[Word]) -> Result<Vec<Option<BigRational>>> {
        let targets: Vec<Word> = targets.iter().map(|t| self.reduce(t)).collect();
        let mut found: Vec<Option<u64>> = vec![None; targets.len()];
        let mut remaining = targets.len();
        if remaining == 0 {
            return Ok(Vec::new());
        }
        self.search(u64::MAX, |x, d| {
            for (t, slot) in targets.iter().zip(found.iter_mut()) {
                if slot.is_none() && self.same_element(x, t) {
                    *slot = Some(d);
                    remaining -= 1;
                }
            }
            remaining > 0
        })?;
        Ok(found
            .into_iter()
            .map(|d| d.map(|d| BigRational::new(BigInt::from(d), BigInt::from(self.scale))))
            .collect())
    }
}

/// `|B_w(R)|`, the number of elements at weighted distance at most `R`.
pub fn ball_count(p: &Presentation, w: &WeightVector, r: &BigRational) -> Result<usize> {
    Ok(WordMetric::new(p, w)?.ball(r)?.len())
}

/// `d_w(e, sⁿ)` for `n = 1..=n_max`.
pub fn power_distance(p: &Presentation, w: &WeightVector, s: Letter, n_max: usize) -> Result<Vec<BigRational>> {
    let metric = WordMetric::new(p, w)?;
    let targets: Vec<Word> = (1..=n_max).map(|n| Word::power(s, n)).collect();
    metric
        .distances_to(&targets)?
        .into_iter()
        .map(|d| d.ok_or_else(|| Error::InvalidParameter("target not reached".into())))
        .collect()
}
