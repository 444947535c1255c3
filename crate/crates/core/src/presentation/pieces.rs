use num_rational::Rational64;
use serde::Serialize;

use crate::error::Result;
use crate::presentation::closure::SymmetricClosure;
use crate::presentation::{ceil_mul, lt_mul};
use crate::words::{Presentation, Word};

#[derive(Clone, Debug, Serialize)]
pub struct PieceWitness {
    pub piece: Word,
    pub first: Word,
    pub second: Word,
}

/// Longest piece contained in one cyclic class of `R*` (identical for every
/// rotation in the class).
#[derive(Clone, Debug, Serialize)]
pub struct ClassPieces {
    pub relator: Word,
    pub longest_piece: usize,
    pub piece: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceReport {
    pub max_piece_length: usize,
    pub witness: Option<PieceWitness>,
    pub per_relator_max: Vec<ClassPieces>,
}

impl PieceReport {
    /// Longest piece contained in `r`, looked up through its cyclic class.
    pub fn longest_piece_in(&self, r: &Word) -> Option<usize> {
        let key = crate::words::least_rotation(r.letters());
        self.per_relator_max
            .iter()
            .find(|c| c.relator.len() == r.len() && crate::words::least_rotation(c.relator.letters()) == key)
            .map(|c| c.longest_piece)
    }
}

/// Per-element longest common prefix with any other element of `R*`.
///
/// The maximum LCP of an element with the rest of a sorted set is attained at
/// one of its sorted neighbours.
pub(crate) fn neighbour_lcps(c: &SymmetricClosure) -> Vec<usize> {
    let n = c.len();
    let adj: Vec<usize> = (1..n).map(|i| c.element(i - 1).lcp(&c.element(i))).collect();
    (0..n)
        .map(|i| {
            let left = if i > 0 { adj[i - 1] } else { 0 };
            let right = if i + 1 < n { adj[i] } else { 0 };
            left.max(right)
        })
        .collect()
}

pub fn piece_report(c: &SymmetricClosure) -> PieceReport {
    let n = c.len();
    let mut witness = None;
    let mut max_piece_length = 0;
    for i in 1..n {
        let (a, b) = (c.element(i - 1), c.element(i));
        let l = a.lcp(&b);
        if l > max_piece_length {
            max_piece_length = l;
            witness = Some(PieceWitness {
                piece: b.prefix(l),
                first: a.to_word(),
                second: b.to_word(),
            });
        }
    }
    let best = neighbour_lcps(c);
    let mut per: Vec<Option<(usize, usize)>> = vec![None; c.cores().len()];
    for (i, &b) in best.iter().enumerate() {
        let slot = &mut per[c.class_of(i)];
        if slot.map_or(true, |(len, _)| b > len) {
            *slot = Some((b, i));
        }
    }
    let per_relator_max = per
        .iter()
        .enumerate()
        .map(|(ci, slot)| {
            let (len, i) = slot.expect("every class has at least one rotation");
            ClassPieces {
                relator: c.cores()[ci].clone(),
                longest_piece: len,
                piece: c.element(i).prefix(len),
            }
        })
        .collect();
    PieceReport {
        max_piece_length,
        witness,
        per_relator_max,
    }
}

/// Pieces of a symmetrized presentation.
pub fn max_piece_length(p: &Presentation) -> Result<PieceReport> {
    Ok(piece_report(&SymmetricClosure::new(p)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct CPrimeWitness {
    pub piece: Word,
    pub relator: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct CPrimeReport {
    pub lambda: String,
    pub holds: bool,
    pub max_piece_length: usize,
    pub witness: Option<CPrimeWitness>,
}

pub fn c_prime_on(c: &SymmetricClosure, lambda: Rational64) -> CPrimeReport {
    let best = neighbour_lcps(c);
    let mut witness = None;
    for (i, &b) in best.iter().enumerate() {
        let e = c.element(i);
        if !lt_mul(b, lambda, e.len()) {
            witness = Some(CPrimeWitness {
                piece: e.prefix(b),
                relator: e.to_word(),
            });
            break;
        }
    }
    CPrimeReport {
        lambda: lambda.to_string(),
        holds: witness.is_none(),
        max_piece_length: best.iter().copied().max().unwrap_or(0),
        witness,
    }
}

/// `C'(λ)`: every piece `u` contained in `r ∈ R*` has `|u| < λ|r|`.
pub fn check_c_prime(p: &Presentation, lambda: Rational64) -> Result<CPrimeReport> {
    Ok(c_prime_on(&SymmetricClosure::new(p)?, lambda))
}

/// `⌈λ|r|⌉` for a relator of length `len`.
pub fn threshold(lambda: Rational64, len: usize) -> usize {
    ceil_mul(lambda, len)
}
