use std::cmp::Ordering;

use nalgebra::DMatrix;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::avoidance::automaton::AvoidanceAutomaton;
use crate::avoidance::counting::letter_weights;
use crate::avoidance::forbidden::ForbiddenSet;
use crate::error::Result;
use crate::words::WeightVector;

const REL_TOL: f64 = 1e-13;
const MAX_POWER_STEPS: usize = 1_000_000;

/// One strongly connected block of the live automaton, in compressed sparse
/// row form; `weight[e]` is the letter weight carried by edge `e`.
struct Block {
    row_start: Vec<usize>,
    col: Vec<usize>,
    weight: Vec<usize>,
    max_weight: usize,
}

impl Block {
    fn size(&self) -> usize {
        self.row_start.len() - 1
    }

    /// Compares `ρ(A(z))` with 1 by power iteration on `A(z) + I`, using the
    /// Collatz–Wielandt bracket to stop as soon as the answer is known.
    /// `x` is a positive warm-start vector and is updated in place.
    fn compare_radius(&self, z: f64, x: &mut Vec<f64>) -> Ordering {
        let factor: Vec<f64> = (0..=self.max_weight).map(|w| z.powi(-(w as i32))).collect();
        let n = self.size();
        let mut y = vec![0.0; n];
        for _ in 0..MAX_POWER_STEPS {
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for i in 0..n {
                let mut acc = x[i];
                for e in self.row_start[i]..self.row_start[i + 1] {
                    acc += factor[self.weight[e]] * x[self.col[e]];
                }
                y[i] = acc;
                let r = acc / x[i];
                lo = lo.min(r);
                hi = hi.max(r);
            }
            if lo > 2.0 {
                return Ordering::Greater;
            }
            if hi < 2.0 {
                return Ordering::Less;
            }
            if hi - lo <= REL_TOL * hi {
                break;
            }
            let norm = y.iter().cloned().fold(0.0, f64::max);
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi = yi / norm;
            }
        }
        Ordering::Equal
    }

    /// The unique `z ∈ [1, z_max]` with `ρ(A(z)) = 1`, clamped to the ends.
    fn critical_point(&self, z_max: f64) -> f64 {
        let mut x = vec![1.0; self.size()];
        match self.compare_radius(1.0, &mut x) {
            Ordering::Less | Ordering::Equal => return 1.0,
            Ordering::Greater => {}
        }
        if self.compare_radius(z_max, &mut x) != Ordering::Less {
            return z_max;
        }
        let (mut lo, mut hi) = (1.0f64, z_max);
        while hi - lo > REL_TOL * hi {
            let mid = 0.5 * (lo + hi);
            match self.compare_radius(mid, &mut x) {
                Ordering::Greater => lo = mid,
                Ordering::Less => hi = mid,
                Ordering::Equal => return mid,
            }
        }
        0.5 * (lo + hi)
    }
}

fn blocks(a: &AvoidanceAutomaton, lw: &[usize]) -> Vec<Block> {
    let n = a.state_count();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, n * lw.len());
    for _ in 0..n {
        g.add_node(());
    }
    for (s, _, t) in a.edges() {
        g.add_edge(NodeIndex::new(s), NodeIndex::new(t), ());
    }
    let mut local = vec![usize::MAX; n];
    let mut out = Vec::new();
    for comp in tarjan_scc(&g) {
        let states: Vec<usize> = comp.iter().map(|v| v.index()).collect();
        for (i, &s) in states.iter().enumerate() {
            local[s] = i;
        }
        let mut row_start = vec![0];
        let mut col = Vec::new();
        let mut weight = Vec::new();
        for &s in &states {
            for (c, &wc) in lw.iter().enumerate() {
                if let Some(t) = a.next_index(s, c) {
                    if local[t] != usize::MAX && states.get(local[t]) == Some(&t) {
                        col.push(local[t]);
                        weight.push(wc);
                    }
                }
            }
            row_start.push(col.len());
        }
        for &s in &states {
            local[s] = usize::MAX;
        }
        if !col.is_empty() {
            out.push(Block {
                row_start,
                col,
                max_weight: weight.iter().copied().max().unwrap_or(0),
                weight,
            });
        }
    }
    out
}

/// Exponential growth rate `M = lim f(n)^{1/n}` of the avoiding words, from
/// the strongly connected components of the automaton.
pub fn automaton_growth(a: &AvoidanceAutomaton, lw: &[usize]) -> f64 {
    let z_max = lw.len().max(1) as f64;
    blocks(a, lw)
        .iter()
        .map(|b| b.critical_point(z_max))
        .fold(1.0, f64::max)
}

/// Growth rate of the words avoiding `f` under integer weights `w`.
pub fn growth_rate(f: &ForbiddenSet, w: &WeightVector) -> Result<f64> {
    let lw = letter_weights(f.m(), w)?;
    Ok(automaton_growth(&AvoidanceAutomaton::new(f), &lw))
}

/// Dense weighted transfer matrix `A(z)` over all live states.
pub fn transfer_matrix(a: &AvoidanceAutomaton, lw: &[usize], z: f64) -> DMatrix<f64> {
    let n = a.state_count();
    let mut m = DMatrix::zeros(n, n);
    for (s, c, t) in a.edges() {
        m[(s, t)] += z.powi(-(lw[c] as i32));
    }
    m
}
