use std::collections::VecDeque;

use crate::avoidance::forbidden::ForbiddenSet;
use crate::words::{Letter, Word};

const NONE: u32 = u32::MAX;

/// Pattern-matching automaton (trie with failure links) restricted to the
/// states reachable without completing a forbidden word.
///
/// Letters are indexed by [`Letter::index`]; a transition that would complete
/// a pattern is absent.
#[derive(Clone, Debug)]
pub struct AvoidanceAutomaton {
    alphabet: usize,
    next: Vec<u32>,
    depth: Vec<u32>,
}

impl AvoidanceAutomaton {
    pub fn new(f: &ForbiddenSet) -> AvoidanceAutomaton {
        let k = 2 * f.m();
        let mut goto: Vec<u32> = vec![NONE; k];
        let mut terminal = vec![false];
        let mut depth = vec![0u32];
        for p in f.patterns() {
            let mut s = 0usize;
            for l in p.letters() {
                let c = l.index();
                if goto[s * k + c] == NONE {
                    let id = terminal.len() as u32;
                    goto[s * k + c] = id;
                    goto.extend(std::iter::repeat(NONE).take(k));
                    terminal.push(false);
                    depth.push(depth[s] + 1);
                }
                s = goto[s * k + c] as usize;
            }
            terminal[s] = true;
        }

        let n = terminal.len();
        let mut fail = vec![0u32; n];
        let mut dead = terminal;
        let mut queue = VecDeque::new();
        for c in 0..k {
            match goto[c] {
                NONE => goto[c] = 0,
                v => queue.push_back(v as usize),
            }
        }
        while let Some(u) = queue.pop_front() {
            dead[u] = dead[u] || dead[fail[u] as usize];
            let fu = fail[u] as usize;
            for c in 0..k {
                let v = goto[u * k + c];
                if v == NONE {
                    goto[u * k + c] = goto[fu * k + c];
                } else {
                    fail[v as usize] = goto[fu * k + c];
                    queue.push_back(v as usize);
                }
            }
        }

        // Compact to live states reachable from the root.
        let mut id = vec![NONE; n];
        let mut order = Vec::new();
        if !dead[0] {
            id[0] = 0;
            order.push(0usize);
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for c in 0..k {
                    let v = goto[u * k + c] as usize;
                    if !dead[v] && id[v] == NONE {
                        id[v] = order.len() as u32;
                        order.push(v);
                    }
                }
            }
        }
        let mut next = Vec::with_capacity(order.len() * k);
        for &u in &order {
            for c in 0..k {
                let v = goto[u * k + c] as usize;
                next.push(if dead[v] { NONE } else { id[v] });
            }
        }
        AvoidanceAutomaton {
            alphabet: k,
            depth: order.iter().map(|&u| depth[u]).collect(),
            next,
        }
    }

    /// Number of letters `2m`.
    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    /// Number of live states (0 if the empty word is itself forbidden).
    pub fn state_count(&self) -> usize {
        self.depth.len()
    }

    pub fn start(&self) -> Option<usize> {
        (self.state_count() > 0).then_some(0)
    }

    pub fn next(&self, state: usize, letter: Letter) -> Option<usize> {
        self.next_index(state, letter.index())
    }

    pub fn next_index(&self, state: usize, c: usize) -> Option<usize> {
        match self.next[state * self.alphabet + c] {
            NONE => None,
            v => Some(v as usize),
        }
    }

    /// Length of the longest pattern prefix that the state tracks.
    pub fn depth(&self, state: usize) -> usize {
        self.depth[state] as usize
    }

    /// Live transitions `(from, letter index, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.state_count()).flat_map(move |s| {
            (0..self.alphabet).filter_map(move |c| self.next_index(s, c).map(|t| (s, c, t)))
        })
    }

    pub fn accepts(&self, x: &Word) -> bool {
        let mut s = match self.start() {
            Some(s) => s,
            None => return false,
        };
        for l in x.letters() {
            match self.next(s, *l) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }
}
