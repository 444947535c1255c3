use std::collections::{HashMap, HashSet};

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::closure::SymmetricClosure;
use crate::presentation::pieces::{c_prime_on, CPrimeReport};
use crate::presentation::{ceil_mul, check_lambda, lt_mul};
use crate::words::{Letter, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Run,
    HalfWindow,
    FrequencyWindow,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorDistribution {
    pub relator: Word,
    pub run_ok: bool,
    pub half_window_ok: bool,
    pub frequency_window_ok: bool,
}

/// A violation: `relator` is the element of `R*` that begins at the offending
/// run or window, and `segment` is that run or window.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionWitness {
    pub condition: Condition,
    pub relator: Word,
    pub segment: Word,
    pub generator: usize,
    pub count: usize,
    pub bound: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvenDistributionReport {
    pub lambda: String,
    pub relators: Vec<RelatorDistribution>,
    pub witness: Option<DistributionWitness>,
}

impl EvenDistributionReport {
    pub fn passes(&self) -> bool {
        self.relators
            .iter()
            .all(|r| r.run_ok && r.half_window_ok && r.frequency_window_ok)
    }

    pub fn condition_passes(&self, c: Condition) -> bool {
        self.relators.iter().all(|r| match c {
            Condition::Run => r.run_ok,
            Condition::HalfWindow => r.half_window_ok,
            Condition::FrequencyWindow => r.frequency_window_ok,
        })
    }
}

fn rotation(core: &[Letter], start: usize) -> Word {
    Word::new(core[start..].iter().chain(&core[..start]).copied().collect())
}

fn cyclic_segment(core: &[Letter], start: usize, len: usize) -> Word {
    Word::new(core.iter().cycle().skip(start).take(len).copied().collect())
}

/// Longest cyclic run: `(start, letter, length)`.
fn longest_run(core: &[Letter]) -> (usize, Letter, usize) {
    let n = core.len();
    let Some(boundary) = (0..n).find(|&i| core[i] != core[(i + n - 1) % n]) else {
        return (0, core[0], n);
    };
    let mut best = (boundary, core[boundary], 0);
    let mut i = 0;
    while i < n {
        let start = (boundary + i) % n;
        let mut len = 1;
        while i + len < n && core[(start + len) % n] == core[start] {
            len += 1;
        }
        if len > best.2 {
            best = (start, core[start], len);
        }
        i += len;
    }
    best
}

/// First cyclic window of length `len` (scanning starts in order) for which
/// `bad(gen, count_in_window)` holds for some generator; returns
/// `(start, generator, count)`.
fn first_bad_window(
    core: &[Letter],
    m: usize,
    len: usize,
    bad: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize, usize)> {
    let n = core.len();
    let starts = if len == n { 1 } else { n };
    let mut counts = vec![0usize; m + 1];
    for l in &core[..len] {
        counts[l.gen_index()] += 1;
    }
    let mut n_bad = (1..=m).filter(|&a| bad(a, counts[a])).count();
    for s in 0..starts {
        if n_bad > 0 {
            let a = (1..=m).find(|&a| bad(a, counts[a])).unwrap();
            return Some((s, a, counts[a]));
        }
        if s + 1 == starts {
            break;
        }
        let out = core[s].gen_index();
        let inc = core[(s + len) % n].gen_index();
        if out != inc {
            for (g, delta) in [(out, -1i64), (inc, 1)] {
                let before = bad(g, counts[g]);
                counts[g] = (counts[g] as i64 + delta) as usize;
                let after = bad(g, counts[g]);
                n_bad = n_bad + usize::from(after) - usize::from(before);
            }
        }
    }
    None
}

/// Even-distribution conditions over an already built closure.
pub fn even_distribution_on(c: &SymmetricClosure, lambda: Rational64) -> EvenDistributionReport {
    let m = c.m();
    let (lp, lq) = (*lambda.numer() as usize, *lambda.denom() as usize);
    let mut relators = Vec::with_capacity(c.cores().len());
    let mut witness: Option<DistributionWitness> = None;
    for word in c.cores() {
        let r = word.letters();
        let n = r.len();
        let totals = word.letter_counts();
        let total = |a: usize| totals.get(&a).copied().unwrap_or(0);

        let (run_start, run_letter, run_len) = longest_run(r);
        let run_ok = lt_mul(run_len, lambda, n);
        if !run_ok && witness.is_none() {
            witness = Some(DistributionWitness {
                condition: Condition::Run,
                relator: rotation(r, run_start),
                segment: Word::power(run_letter, run_len),
                generator: run_letter.gen_index(),
                count: run_len,
                bound: format!("{}", Rational64::new((lp * n) as i64, lq as i64)),
            });
        }

        let half_len = ceil_mul(lambda * 4, n);
        let half = if half_len > n {
            None
        } else {
            first_bad_window(r, m, half_len, |a, k| 2 * k >= total(a))
        };
        if let Some((s, a, k)) = half {
            if witness.is_none() {
                witness = Some(DistributionWitness {
                    condition: Condition::HalfWindow,
                    relator: rotation(r, s),
                    segment: cyclic_segment(r, s, half_len),
                    generator: a,
                    count: k,
                    bound: format!("{}", Rational64::new(total(a) as i64, 2)),
                });
            }
        }

        let freq_len = ceil_mul(lambda, n).max(1);
        let freq = first_bad_window(r, m, freq_len, |_, k| 8 * m * k <= freq_len);
        if let Some((s, a, k)) = freq {
            if witness.is_none() {
                witness = Some(DistributionWitness {
                    condition: Condition::FrequencyWindow,
                    relator: rotation(r, s),
                    segment: cyclic_segment(r, s, freq_len),
                    generator: a,
                    count: k,
                    bound: format!("{}", Rational64::new(freq_len as i64, 8 * m as i64)),
                });
            }
        }

        relators.push(RelatorDistribution {
            relator: word.clone(),
            run_ok,
            half_window_ok: half.is_none(),
            frequency_window_ok: freq.is_none(),
        });
    }
    EvenDistributionReport {
        lambda: lambda.to_string(),
        relators,
        witness,
    }
}

/// Conditions (i)–(iii) of even distribution, checked for every `r ∈ R*`.
///
/// Each cyclic class is scanned once with cyclic windows; the linear windows of
/// all its rotations are exactly these.
pub fn check_even_distribution(p: &Presentation, lambda: Rational64) -> Result<EvenDistributionReport> {
    check_lambda(lambda)?;
    Ok(even_distribution_on(&SymmetricClosure::new(p)?, lambda))
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationReport {
    pub lambda: String,
    pub holds: bool,
    pub input_symmetrized: bool,
    pub cyclically_reduced: bool,
    pub c_prime: Option<CPrimeReport>,
    pub even_distribution: Option<EvenDistributionReport>,
    pub failures: Vec<String>,
}

/// Full λ-translation-apparent check. Cyclically reduced input is symmetrized
/// here; anything else is reported as a failure.
pub fn check_translation_apparent(p: &Presentation, lambda: Rational64) -> TranslationReport {
    let mut report = TranslationReport {
        lambda: lambda.to_string(),
        holds: false,
        input_symmetrized: p.is_symmetrized(),
        cyclically_reduced: p.all_cyclically_reduced(),
        c_prime: None,
        even_distribution: None,
        failures: Vec::new(),
    };
    if let Err(e) = check_lambda(lambda) {
        report.failures.push(e.to_string());
        return report;
    }
    if !report.cyclically_reduced {
        let bad = p
            .relators()
            .iter()
            .find(|r| r.is_empty() || !r.is_cyclically_reduced())
            .map(|r| r.to_string())
            .unwrap_or_default();
        report
            .failures
            .push(format!("relator '{bad}' is not cyclically reduced"));
        return report;
    }
    let closure = match SymmetricClosure::from_relators(p.m(), p.relators()) {
        Ok(c) => c,
        Err(e) => {
            report.failures.push(e.to_string());
            return report;
        }
    };
    let cp = c_prime_on(&closure, lambda);
    if let Some(w) = &cp.witness {
        report.failures.push(format!(
            "C'({lambda}) fails: piece {} of length {} in relator {} of length {}",
            w.piece,
            w.piece.len(),
            w.relator,
            w.relator.len()
        ));
    }
    let ed = even_distribution_on(&closure, lambda);
    if let Some(w) = &ed.witness {
        let what = match w.condition {
            Condition::Run => "run condition (i)",
            Condition::HalfWindow => "half-window condition (ii)",
            Condition::FrequencyWindow => "frequency-window condition (iii)",
        };
        report.failures.push(format!(
            "{what} fails in relator {} at segment {} (generator {}, count {}, bound {})",
            w.relator, w.segment, w.generator, w.count, w.bound
        ));
    }
    report.holds = cp.holds && ed.passes();
    report.c_prime = Some(cp);
    report.even_distribution = Some(ed);
    report
}

/// Precomputed threshold-length factors of `R*` for repeated λ-reducedness
/// queries against the same presentation.
#[derive(Clone, Debug)]
pub struct LambdaReducedIndex {
    by_len: HashMap<usize, HashSet<Vec<Letter>>>,
}

impl LambdaReducedIndex {
    pub fn new(p: &Presentation, lambda: Rational64) -> Result<LambdaReducedIndex> {
        check_lambda(lambda)?;
        let c = SymmetricClosure::new(p)?;
        let mut by_len: HashMap<usize, HashSet<Vec<Letter>>> = HashMap::new();
        for core in c.cores() {
            let r = core.letters();
            let t = ceil_mul(lambda, r.len()).max(1);
            let set = by_len.entry(t).or_default();
            for s in 0..r.len() {
                set.insert(r.iter().cycle().skip(s).take(t).copied().collect());
            }
        }
        Ok(LambdaReducedIndex { by_len })
    }

    /// First forbidden factor found in `x`, as `(position, length)`.
    pub fn offending_factor(&self, x: &Word) -> Option<(usize, usize)> {
        let xs = x.letters();
        for (&t, set) in &self.by_len {
            if t > xs.len() {
                continue;
            }
            if let Some(i) = (0..=xs.len() - t).find(|&i| set.contains(&xs[i..i + t])) {
                return Some((i, t));
            }
        }
        None
    }

    pub fn is_reduced(&self, x: &Word) -> Result<bool> {
        if !x.is_reduced() {
            return Err(Error::NotReduced(x.clone()));
        }
        Ok(self.offending_factor(x).is_none())
    }
}

/// `x` shares no subword of length `≥ ⌈λ|r|⌉` with any `r ∈ R*`.
pub fn is_lambda_reduced(x: &Word, p: &Presentation, lambda: Rational64) -> Result<bool> {
    if !x.is_reduced() {
        return Err(Error::NotReduced(x.clone()));
    }
    LambdaReducedIndex::new(p, lambda)?.is_reduced(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(m: usize, rels: &[&str]) -> Presentation {
        Presentation::new(m, rels.iter().map(|s| s.parse().unwrap()).collect())
            .unwrap()
            .symmetrized()
            .unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Condition check by linear scan over every materialized element of `R*`.
    fn oracle(p: &Presentation, lambda: Rational64) -> (bool, bool, bool) {
        let m = p.m();
        let (lp, lq) = (*lambda.numer() as usize, *lambda.denom() as usize);
        let (mut i_ok, mut ii_ok, mut iii_ok) = (true, true, true);
        for r in p.relator_set().unwrap() {
            let n = r.len();
            let l = r.letters();
            let mut j = 0;
            while j < n {
                let mut k = j;
                while k < n && l[k] == l[j] {
                    k += 1;
                }
                if (k - j) * lq >= lp * n {
                    i_ok = false;
                }
                j = k;
            }
            let cnt = |u: &[Letter], a: usize| u.iter().filter(|x| x.gen_index() == a).count();
            let l2 = (4 * lp * n).div_ceil(lq);
            if l2 <= n {
                for s in 0..=n - l2 {
                    if (1..=m).any(|a| 2 * cnt(&l[s..s + l2], a) >= cnt(l, a)) {
                        ii_ok = false;
                    }
                }
            }
            let l3 = (lp * n).div_ceil(lq);
            for s in 0..=n - l3 {
                if (1..=m).any(|a| 8 * m * cnt(&l[s..s + l3], a) <= l3) {
                    iii_ok = false;
                }
            }
        }
        (i_ok, ii_ok, iii_ok)
    }

    fn flags(rep: &EvenDistributionReport) -> (bool, bool, bool) {
        (
            rep.condition_passes(Condition::Run),
            rep.condition_passes(Condition::HalfWindow),
            rep.condition_passes(Condition::FrequencyWindow),
        )
    }

    #[test]
    fn run_condition_example() {
        let p = sym(2, &["aaaabbbb"]);
        let l = Rational64::new(1, 4);
        let rep = check_even_distribution(&p, l).unwrap();
        assert!(!rep.condition_passes(Condition::Run));
        let wit = rep.witness.unwrap();
        assert_eq!(wit.condition, Condition::Run);
        assert_eq!(wit.count, 4);
        assert!(wit.relator.letters().starts_with(wit.segment.letters()));
        assert_eq!(flags(&check_even_distribution(&p, l).unwrap()), oracle(&p, l));
    }

    #[test]
    fn half_window_equal_to_relator_fails() {
        let p = sym(2, &["abababab"]);
        let l = Rational64::new(1, 4);
        let rep = check_even_distribution(&p, l).unwrap();
        assert!(rep.condition_passes(Condition::Run));
        assert!(!rep.condition_passes(Condition::HalfWindow));
        assert_eq!(flags(&rep), oracle(&p, l));
    }

    #[test]
    fn alternating_word_passes_all() {
        let p = sym(2, &[&"ab".repeat(80)]);
        let l = Rational64::new(1, 16);
        let rep = check_even_distribution(&p, l).unwrap();
        assert!(rep.passes());
        assert!(rep.witness.is_none());
        assert_eq!(oracle(&p, l), (true, true, true));
    }

    #[test]
    fn cyclic_scan_agrees_with_linear_oracle() {
        let cases = [
            (2, vec!["aabbabAbaB"], (1, 4)),
            (2, vec!["abaabbbaBaBB", "aaBBab"], (1, 3)),
            (3, vec!["abcabcaBcAbC"], (1, 6)),
            (2, vec!["aaab"], (1, 2)),
            (2, vec!["abAB"], (1, 4)),
        ];
        for (m, rels, (a, b)) in cases {
            let p = sym(m, &rels);
            let l = Rational64::new(a, b);
            let rep = check_even_distribution(&p, l).unwrap();
            assert_eq!(flags(&rep), oracle(&p, l), "{rels:?}");
            if let Some(wt) = rep.witness {
                assert!(wt.relator.letters().starts_with(wt.segment.letters()));
                assert!(p.relator_set().unwrap().contains(&wt.relator));
            }
        }
    }

    #[test]
    fn translation_apparent_examples() {
        let g2 = Presentation::new(4, vec![w("abABcdCD")]).unwrap();
        let rep = check_translation_apparent(&g2, Rational64::new(1, 16));
        assert!(!rep.holds);
        assert!(!rep.c_prime.as_ref().unwrap().holds);

        let free = Presentation::free(3);
        assert!(check_translation_apparent(&free, Rational64::new(1, 16)).holds);

        let bad = Presentation::new(2, vec![w("abA")]).unwrap();
        let rep = check_translation_apparent(&bad, Rational64::new(1, 16));
        assert!(!rep.holds);
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn lambda_reduced_examples() {
        let p = sym(2, &["abababababababab"]);
        let l = Rational64::new(1, 4);
        assert!(!is_lambda_reduced(&w("abab"), &p, l).unwrap());
        assert!(is_lambda_reduced(&w("abA"), &p, l).unwrap());
        assert!(is_lambda_reduced(&w("aaaa"), &p, l).unwrap());
        assert!(is_lambda_reduced(&w("aA"), &p, l).is_err());
    }
}
