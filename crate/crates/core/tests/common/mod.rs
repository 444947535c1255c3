//! Invariant checks shared by the property suite and the acceptance run.
//! Each check drives a deterministic proptest runner for `cases` cases.

#![allow(dead_code)]

use std::fmt::Debug;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use serde_json::Value;

use weighted_entropy::avoidance::{
    build_forbidden_set, correlation_polynomial, count_avoiding, growth_rate, myers_solve_at, CountMode,
    ForbiddenSet, RootPolynomial,
};
use weighted_entropy::entropy::{ball_count, free_entropy};
use weighted_entropy::io::{format_presentation, parse_presentation};
use weighted_entropy::presentation::{
    check_c_prime, check_even_distribution, dehn_reduce, is_lambda_reduced, max_piece_length, Condition,
};
use weighted_entropy::random::{
    chain_spectral, genericity_experiment, genericity_experiment_with_threads, sample_presentation,
    DensityModelParams, ExperimentParams, GapChoice, UnionBounds,
};
use weighted_entropy::words::symmetrize;
use weighted_entropy::{Letter, Presentation, WeightVector, Word};

pub type Check = fn(u32) -> Result<(), String>;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: 100_000,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: Debug,
{
    runner(cases).run(&s, f).map_err(|e: TestError<S::Value>| e.to_string())
}

/// Fails unless at least `min` of the cases exercised the interesting branch.
fn nonvacuous(hits: &AtomicUsize, min: usize, what: &str) -> Result<(), String> {
    let n = hits.load(Ordering::Relaxed);
    if n >= min {
        Ok(())
    } else {
        Err(format!("only {n} cases {what}"))
    }
}

fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

// ---------------------------------------------------------------- strategies

/// Arbitrary (possibly unreduced) word over `m` generators.
pub fn any_word(m: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * m, 0..=max_len)
        .prop_map(|v| Word::new(v.into_iter().map(Letter::from_index).collect()))
}

/// Decodes choices into a reduced word: each letter avoids cancelling the
/// previous one, and with `cyclic` the last also avoids cancelling the first.
fn decode(m: usize, choices: &[usize], cyclic: bool) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(choices.len());
    let n = choices.len();
    for (i, &c) in choices.iter().enumerate() {
        let mut banned = Vec::new();
        if let Some(p) = letters.last() {
            banned.push(p.inverse());
        }
        if cyclic && i + 1 == n && n > 1 {
            banned.push(letters[0].inverse());
        }
        let allowed: Vec<Letter> = Letter::alphabet(m).filter(|l| !banned.contains(l)).collect();
        letters.push(allowed[c % allowed.len()]);
    }
    Word::new(letters)
}

pub fn reduced_word(m: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<usize>(), len).prop_map(move |c| decode(m, &c, false))
}

pub fn cyclic_word(m: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<usize>(), len).prop_map(move |c| decode(m, &c, true))
}

/// Presentation with `m` generators and `k` cyclically reduced relators.
pub fn presentation(
    m: std::ops::RangeInclusive<usize>,
    k: std::ops::RangeInclusive<usize>,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Presentation> {
    (m, k).prop_flat_map(move |(m, k)| {
        prop::collection::vec(cyclic_word(m, len.clone()), k)
            .prop_map(move |rels| Presentation::new(m, rels).unwrap())
    })
}

fn int_weights(m: usize, max: u64) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(1..=max, m).prop_map(|v| WeightVector::from_integers(&v).unwrap())
}

fn rational_weights(m: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec((1i64..=12, 1i64..=12), m).prop_map(|v| WeightVector::from_ratios(&v).unwrap())
}

/// Normalized weights (`2Σwᵢ = 1`) as floats.
fn normalized(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..1.0, m).prop_map(|v| {
        let s: f64 = v.iter().sum::<f64>() * 2.0;
        v.into_iter().map(|x| x / s).collect()
    })
}

fn small_forbidden() -> impl Strategy<Value = (ForbiddenSet, WeightVector, usize)> {
    (1usize..=2)
        .prop_flat_map(|m| {
            (
                Just(m),
                prop::collection::vec(any_word(m, 4).prop_filter("nonempty", |w| !w.is_empty()), 0..=4),
                any::<bool>(),
                int_weights(m, 3),
                0usize..=12,
            )
        })
        .prop_map(|(m, extra, with_pairs, w, n)| {
            let mut pats = extra;
            if with_pairs {
                pats.extend(ForbiddenSet::free(m).patterns().iter().cloned());
            }
            (ForbiddenSet::new(m, pats).unwrap(), w, n)
        })
}

// ---------------------------------------------------------------- words

pub fn free_reduce_idempotent(cases: u32) -> Result<(), String> {
    run(cases, (1usize..=4).prop_flat_map(|m| any_word(m, 40)), |x| {
        let r = x.free_reduce();
        ensure(r.free_reduce() == r, || format!("not idempotent on {x}"))?;
        ensure(r.len() <= x.len(), || format!("length grew on {x}"))?;
        ensure(r.is_reduced(), || format!("{r} not reduced"))
    })
}

pub fn symmetrize_closed_and_idempotent(cases: u32) -> Result<(), String> {
    run(cases, presentation(1..=3, 1..=3, 1..=10), |p| {
        let s = symmetrize(p.relators()).unwrap();
        ensure(symmetrize(&s).unwrap() == s, || "symmetrize not idempotent".into())?;
        for r in &s {
            for k in 0..r.len() {
                ensure(s.binary_search(&r.rotate(k)).is_ok(), || format!("rotation of {r} missing"))?;
            }
            ensure(s.binary_search(&r.inverse()).is_ok(), || format!("inverse of {r} missing"))?;
        }
        Ok(())
    })
}

pub fn weighted_length_subadditive(cases: u32) -> Result<(), String> {
    let s = (1usize..=3).prop_flat_map(|m| (any_word(m, 20), any_word(m, 20), rational_weights(m)));
    run(cases, s, |(u, v, w)| {
        let uv = u.concat(&v).free_reduce();
        ensure(
            uv.weighted_length(&w) <= u.weighted_length(&w) + v.weighted_length(&w),
            || format!("|{u}·{v}| exceeds the sum"),
        )
    })
}

pub fn weighted_length_inverse_symmetric(cases: u32) -> Result<(), String> {
    let s = (1usize..=3).prop_flat_map(|m| (any_word(m, 30), rational_weights(m)));
    run(cases, s, |(u, w)| {
        ensure(u.inverse().weighted_length(&w) == u.weighted_length(&w), || format!("asymmetric on {u}"))
    })
}

// ---------------------------------------------------------------- presentations

fn c_prime_sixth() -> impl Strategy<Value = Presentation> {
    presentation(3..=3, 1..=2, 36..=60)
        .prop_map(|p| p.symmetrized().unwrap())
        .prop_filter("C'(1/6)", |p| check_c_prime(p, Rational64::new(1, 6)).unwrap().holds)
}

pub fn dehn_kills_relators(cases: u32) -> Result<(), String> {
    run(cases, c_prime_sixth(), |p| {
        for r in p.relator_set().unwrap() {
            let d = dehn_reduce(&r, &p).unwrap();
            ensure(d.is_empty(), || format!("{r} reduced to {d}"))?;
        }
        Ok(())
    })
}

pub fn greendlinger_short_words_nontrivial(cases: u32) -> Result<(), String> {
    let s = c_prime_sixth().prop_flat_map(|p| {
        let half = (p.min_relator_length().unwrap() - 1) / 2;
        (Just(p), reduced_word(3, 1..=half))
    });
    run(cases, s, |(p, x)| {
        ensure(2 * x.len() < p.min_relator_length().unwrap(), || "generator bug".into())?;
        ensure(!dehn_reduce(&x, &p).unwrap().is_empty(), || format!("{x} reduced to the identity"))
    })
}

pub fn powers_are_lambda_reduced(cases: u32) -> Result<(), String> {
    let s = (presentation(2..=3, 1..=2, 16..=64), 2i64..=8)
        .prop_map(|(p, d)| (p.symmetrized().unwrap(), Rational64::new(1, d)));
    let hits = AtomicUsize::new(0);
    run(cases, s, |(p, lambda)| {
        let runs_ok = check_even_distribution(&p, lambda)
            .unwrap()
            .condition_passes(Condition::Run);
        if !runs_ok {
            return Ok(());
        }
        hits.fetch_add(1, Ordering::Relaxed);
        let longest = p.relators().iter().map(Word::len).max().unwrap();
        for s in Letter::alphabet(p.m()) {
            for n in 1..=2 * longest {
                ensure(is_lambda_reduced(&Word::power(s, n), &p, lambda).unwrap(), || {
                    format!("{s:?}^{n} not λ-reduced for λ = {lambda}")
                })?;
            }
        }
        Ok(())
    })?;
    nonvacuous(&hits, cases as usize / 4, "satisfied the run condition")
}

pub fn c_prime_monotone(cases: u32) -> Result<(), String> {
    let s = (presentation(2..=3, 1..=3, 4..=40), 1i64..=12, 1i64..=12)
        .prop_map(|(p, a, b)| (p.symmetrized().unwrap(), Rational64::new(a.min(b), 12), Rational64::new(a.max(b), 12)));
    let hits = AtomicUsize::new(0);
    run(cases, s, |(p, lo, hi)| {
        let a = check_c_prime(&p, lo).unwrap().holds;
        let b = check_c_prime(&p, hi).unwrap().holds;
        if a {
            hits.fetch_add(1, Ordering::Relaxed);
        }
        ensure(!a || b, || format!("C'({lo}) holds but C'({hi}) fails"))
    })?;
    nonvacuous(&hits, cases as usize / 10, "satisfied the smaller condition")
}

/// Longest common prefix over all pairs of distinct elements of `R*`.
pub fn piece_oracle(p: &Presentation) -> usize {
    let set = p.relator_set().unwrap();
    let mut best = 0;
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            let l = a.letters().iter().zip(b.letters()).take_while(|(x, y)| x == y).count();
            best = best.max(l);
        }
    }
    best
}

pub fn max_piece_matches_oracle(cases: u32) -> Result<(), String> {
    let s = presentation(1..=3, 1..=4, 1..=50)
        .prop_filter("Σ|r| ≤ 200", |p| p.relators().iter().map(Word::len).sum::<usize>() <= 200)
        .prop_map(|p| p.symmetrized().unwrap());
    run(cases, s, |p| {
        let got = max_piece_length(&p).unwrap().max_piece_length;
        let want = piece_oracle(&p);
        ensure(got == want, || format!("max piece {got}, oracle {want}"))
    })
}

// ---------------------------------------------------------------- avoidance

pub fn automaton_equals_brute_force(cases: u32) -> Result<(), String> {
    run(cases, small_forbidden(), |(f, w, n)| {
        let a = count_avoiding(&f, &w, n, CountMode::Automaton).unwrap();
        let b = count_avoiding(&f, &w, n, CountMode::BruteForce).unwrap();
        ensure(a == b, || format!("{:?} vs {:?}", a.f, b.f))
    })
}

pub fn fekete_submultiplicative(cases: u32) -> Result<(), String> {
    run(cases, small_forbidden(), |(f, w, _)| {
        let n_max = 12;
        let g = count_avoiding(&f, &w, n_max, CountMode::Automaton).unwrap().g;
        let wmax = w.integral_values().unwrap().into_iter().max().unwrap() as usize;
        for n in 0..=n_max.saturating_sub(wmax) {
            for n2 in 0..=n_max.saturating_sub(wmax) {
                if n + n2 + wmax > n_max {
                    continue;
                }
                let lhs = &g[n + n2 + wmax];
                let rhs = &g[n + wmax] * &g[n2 + wmax];
                ensure(lhs <= &rhs, || format!("g({}) = {lhs} > {rhs}", n + n2 + wmax))?;
            }
        }
        Ok(())
    })
}

pub fn ordering_chain(cases: u32) -> Result<(), String> {
    let s = (presentation(2..=2, 1..=2, 32..=96), int_weights(2, 4), prop_oneof![Just(8i64), Just(16)])
        .prop_map(|(p, w, d)| (p.symmetrized().unwrap(), w, Rational64::new(1, d)));
    let hits = AtomicUsize::new(0);
    run(cases, s, |(p, w, lambda)| {
        let poly = RootPolynomial::new(&p, lambda, &w).unwrap();
        let rate = growth_rate(&build_forbidden_set(&p, lambda).unwrap(), &w).unwrap();
        let m0 = poly.m0();
        ensure(rate <= m0 * (1.0 + 1e-8), || format!("growth {rate} > M0 {m0}"))?;
        if let Some(root) = poly.largest_root() {
            hits.fetch_add(1, Ordering::Relaxed);
            ensure(root <= rate * (1.0 + 1e-8), || format!("root {root} > growth {rate}"))?;
        }
        Ok(())
    })?;
    nonvacuous(&hits, cases as usize / 4, "had a root")
}

pub fn myers_residuals(cases: u32) -> Result<(), String> {
    let s = (small_forbidden(), prop::collection::vec(0.01f64..2.0, 5));
    run(cases, s, |((f, w, _), bumps)| {
        let growth = growth_rate(&f, &w).unwrap();
        for b in bumps {
            let z = growth * (1.0 + b);
            let sol = myers_solve_at(&f, &w, z).map_err(|e| fail(format!("z = {z}: {e}")))?;
            ensure(sol.max_residual <= 1e-9, || format!("residual {} at z = {z}", sol.max_residual))?;
        }
        Ok(())
    })
}

pub fn correlation_identities(cases: u32) -> Result<(), String> {
    let s = (2usize..=4).prop_flat_map(|m| (Just(m), int_weights(m, 9), 1..=m, 1..=m, 0.5f64..3.0));
    run(cases, s, |(_, w, i, j, z)| {
        let a = Letter::generator(i);
        let plus = Word::new(vec![a, a.inverse()]);
        let minus = Word::new(vec![a.inverse(), a]);
        let wi = w.integral_values().unwrap()[i - 1] as f64;
        let c = |x: &Word, y: &Word| correlation_polynomial(x, y, &w).unwrap().eval(z);
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * y.abs().max(1.0);
        ensure(close(c(&plus, &plus), z.powf(2.0 * wi)), || "w(A+,A+)".into())?;
        ensure(close(c(&minus, &minus), z.powf(2.0 * wi)), || "w(A-,A-)".into())?;
        ensure(close(c(&plus, &minus), z.powf(wi)), || "w(A+,A-)".into())?;
        ensure(close(c(&minus, &plus), z.powf(wi)), || "w(A-,A+)".into())?;
        if i != j {
            let b = Letter::generator(j);
            for y in [Word::new(vec![b, b.inverse()]), Word::new(vec![b.inverse(), b])] {
                ensure(c(&plus, &y) == 0.0 && c(&minus, &y) == 0.0, || "cross-generator overlap".into())?;
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------- entropy

pub fn entropy_homogeneous(cases: u32) -> Result<(), String> {
    run(cases, (2usize..=5).prop_flat_map(normalized), |w| {
        let h = free_entropy(&w);
        for alpha in [0.5, 2.0, 10.0] {
            let scaled: Vec<f64> = w.iter().map(|x| alpha * x).collect();
            let hs = free_entropy(&scaled);
            ensure(((hs - h / alpha) / hs).abs() <= 1e-9, || format!("α = {alpha}: {hs} vs {}", h / alpha))?;
        }
        Ok(())
    })
}

pub fn entropy_monotone(cases: u32) -> Result<(), String> {
    let s = (2usize..=5).prop_flat_map(|m| (normalized(m), prop::collection::vec(0.0f64..0.5, m)));
    run(cases, s, |(w, bump)| {
        let bigger: Vec<f64> = w.iter().zip(&bump).map(|(x, b)| x + b).collect();
        ensure(free_entropy(&w) >= free_entropy(&bigger), || "bigger weights, bigger entropy".into())
    })
}

pub fn entropy_convex(cases: u32) -> Result<(), String> {
    let s = (2usize..=4).prop_flat_map(|m| (normalized(m), normalized(m)));
    run(cases, s, |(w0, w1)| {
        let (h0, h1) = (free_entropy(&w0), free_entropy(&w1));
        let distinct = w0.iter().zip(&w1).any(|(a, b)| (a - b).abs() > 1e-3);
        for t in [0.25, 0.5, 0.75] {
            let wt: Vec<f64> = w0.iter().zip(&w1).map(|(a, b)| (1.0 - t) * a + t * b).collect();
            let chord = (1.0 - t) * h0 + t * h1;
            let ht = free_entropy(&wt);
            ensure(ht <= chord + 1e-9, || format!("t = {t}: {ht} above chord {chord}"))?;
            if distinct {
                ensure(ht < chord, || format!("t = {t}: not strict"))?;
            }
        }
        Ok(())
    })
}

pub fn entropy_blows_up(cases: u32) -> Result<(), String> {
    let s = (2usize..=5).prop_flat_map(|m| prop::collection::vec(0.1f64..1.0, m - 1));
    run(cases, s, |rest| {
        let total: f64 = rest.iter().sum();
        let mut prev = 0.0;
        for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
            let mut w = vec![eps];
            w.extend(rest.iter().map(|x| x / total * (0.5 - eps)));
            let h = free_entropy(&w);
            ensure(h > prev, || format!("not increasing at ε = {eps}"))?;
            prev = h;
        }
        ensure(prev > 10.0, || format!("h = {prev} at ε = 1e-4"))
    })
}

pub fn entropy_stability(cases: u32) -> Result<(), String> {
    let s = (2usize..=3, any::<u64>());
    run(cases, s, |(m, seed)| {
        use rand_chacha::rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = 1.0 / (2 * m) as f64;
        let h_min = free_entropy(&vec![u; m]);
        let mut worst = [0.0f64; 3];
        for _ in 0..400 {
            let scale = 10f64.powf(-2.0 * (rng.next_u32() as f64 / u32::MAX as f64));
            let mut w: Vec<f64> = (0..m)
                .map(|_| u + scale * u * ((rng.next_u32() as f64 / u32::MAX as f64) - 0.5))
                .collect();
            let s: f64 = 2.0 * w.iter().sum::<f64>();
            w.iter_mut().for_each(|x| *x /= s);
            let dist = w.iter().map(|x| (x - u) * (x - u)).sum::<f64>().sqrt();
            let excess = free_entropy(&w) - h_min;
            for (k, delta) in [1e-1, 1e-2, 1e-3].into_iter().enumerate() {
                if excess <= delta {
                    worst[k] = worst[k].max(dist);
                }
            }
        }
        ensure(worst[0] >= worst[1] && worst[1] >= worst[2], || format!("{worst:?}"))?;
        ensure(worst[0] > worst[2], || format!("no decrease: {worst:?}"))
    })
}

pub fn ball_growth_trend(cases: u32) -> Result<(), String> {
    let s = prop::collection::vec(1u64..=3, 2);
    run(cases, s, |ws| {
        let w = WeightVector::from_integers(&ws).unwrap();
        let h = free_entropy(&w.to_f64());
        let top = *ws.iter().max().unwrap() as i64;
        let f2 = Presentation::free(2);
        let mut prev = f64::INFINITY;
        for k in [2i64, 4, 6] {
            let r = k * top;
            let n = ball_count(&f2, &w, &BigRational::from_integer(BigInt::from(r))).unwrap();
            let gap = ((n as f64).ln() / r as f64 - h).abs();
            ensure(gap < prev, || format!("R = {r}: error {gap} did not shrink"))?;
            prev = gap;
        }
        Ok(())
    })
}

// ---------------------------------------------------------------- random groups

pub fn experiment_deterministic(cases: u32) -> Result<(), String> {
    let s = (2usize..=3, prop::collection::vec(8usize..=48, 1..=2), 1u64..=6, any::<u64>(), 1usize..=4);
    run(cases, s, |(m, ells, trials, seed, threads)| {
        let p = ExperimentParams::new(m, ells, trials, seed);
        let a = genericity_experiment(&p).unwrap();
        let b = genericity_experiment_with_threads(&p, threads).unwrap();
        ensure(a == b && a.to_csv() == b.to_csv(), || "reports differ".into())
    })
}

pub fn spectral_gap_above_bound(cases: u32) -> Result<(), String> {
    run(cases, 2usize..=6, |m| {
        let s = chain_spectral(m).unwrap();
        ensure(s.epsilon >= s.epsilon_lower_bound, || format!("m = {m}"))?;
        ensure(s.cheeger >= s.cheeger_lower_bound, || format!("Φ below bound at m = {m}"))
    })
}

pub fn empirical_rate_below_informative_bound(cases: u32) -> Result<(), String> {
    let s = (2usize..=3, 16usize..=128, any::<u64>());
    run(cases, s, |(m, ell, seed)| {
        let p = ExperimentParams::new(m, vec![ell], 20, seed);
        let row = &genericity_experiment(&p).unwrap().rows[0];
        for gap in [GapChoice::LowerBound, GapChoice::Exact] {
            if let Some(b) = UnionBounds::new(m, ell, gap).informative_pooled() {
                ensure(row.rate_pooled <= b, || format!("rate {} above bound {b}", row.rate_pooled))?;
            }
        }
        Ok(())
    })
}

pub fn relator_count_is_floor(cases: u32) -> Result<(), String> {
    let s = (2usize..=4, 1usize..=60, 0i64..=9, 1i64..=20);
    run(cases, s, |(m, ell, p, q)| {
        let d = Rational64::new(p, q);
        prop_assume!(d < Rational64::new(1, 2));
        let params = DensityModelParams::new(m, ell, d, 0);
        let n = params.relator_count().unwrap();
        let (p, q) = (*d.numer() as u32, *d.denom() as u32);
        let target = BigUint::from(2 * m as u64 - 1).pow(p * ell as u32);
        ensure(n.pow(q) <= target && (&n + 1u32).pow(q) > target, || format!("count {n} for d = {d}"))?;
        if n <= BigUint::from(2000u32) {
            let pres = sample_presentation(&params).unwrap();
            ensure(BigUint::from(pres.relators().len()) == n, || "sampled count differs".into())?;
        }
        Ok(())
    })
}

// ---------------------------------------------------------------- cli

pub fn presentation_round_trip(cases: u32) -> Result<(), String> {
    let s = prop_oneof![presentation(1..=26, 0..=4, 1..=20), presentation(27..=40, 0..=3, 1..=12)];
    run(cases, s, |p| {
        let text = format_presentation(&p);
        let q = parse_presentation(&text).map_err(|e| fail(e.to_string()))?;
        ensure(q == p, || "parse(format(p)) ≠ p".into())?;
        ensure(format_presentation(&q) == text, || "format not byte-identical".into())
    })
}

fn cli_json(args: &[String]) -> Result<Value, TestCaseError> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["weighted-entropy".to_string()];
    argv.extend_from_slice(args);
    let code = weighted_entropy::cli::run_with(argv, &mut out, &mut err);
    if code != 0 {
        return Err(fail(format!("exit {code}: {}", String::from_utf8_lossy(&err))));
    }
    serde_json::from_slice(&out).map_err(|e| fail(e.to_string()))
}

pub fn reports_carry_parameters(cases: u32) -> Result<(), String> {
    let s = (any::<u64>(), 2usize..=3, 4usize..=24);
    run(cases, s, |(seed, m, ell)| {
        let sd = seed.to_string();
        let dir = tempfile::tempdir().map_err(|e| fail(e.to_string()))?;
        let out = dir.path().join("p.pres");
        let calls: Vec<Vec<String>> = vec![
            vec!["sample", "word", "--m", &m.to_string(), "--ell", &ell.to_string(), "--seed", &sd],
            vec![
                "sample", "presentation", "--m", &m.to_string(), "--ell", &ell.to_string(), "--relators", "2",
                "--seed", &sd, "--output", out.to_str().unwrap(),
            ],
            vec!["experiment", "--m", &m.to_string(), "--ells", &ell.to_string(), "--trials", "2", "--seed", &sd],
        ]
        .into_iter()
        .map(|v| v.into_iter().map(String::from).collect())
        .collect();
        for args in calls {
            let v = cli_json(&args)?;
            ensure(v["params"]["seed"] == Value::from(seed), || format!("{args:?}: {}", v["params"]))?;
            ensure(v["params"]["m"] == Value::from(m), || format!("{args:?}: m missing"))?;
            ensure(v["command"].is_string(), || "command missing".into())?;
        }
        let text = std::fs::read_to_string(&out).map_err(|e| fail(e.to_string()))?;
        ensure(text.lines().next().unwrap().contains(&format!("--seed {seed}")), || "file header lacks the seed".into())
    })
}

pub const ALL: &[(&str, Check)] = &[
    ("free_reduce idempotent and length-non-increasing", free_reduce_idempotent),
    ("symmetrize idempotent and closed", symmetrize_closed_and_idempotent),
    ("weighted length subadditive", weighted_length_subadditive),
    ("weighted length inverse-symmetric", weighted_length_inverse_symmetric),
    ("Dehn reduces every r in R* to the identity under C'(1/6)", dehn_kills_relators),
    ("short nonempty words stay nontrivial under C'(1/6)", greendlinger_short_words_nontrivial),
    ("powers are λ-reduced when runs are short", powers_are_lambda_reduced),
    ("C'(λ) monotone in λ", c_prime_monotone),
    ("max piece length matches pairwise oracle", max_piece_matches_oracle),
    ("automaton counts equal brute force", automaton_equals_brute_force),
    ("Fekete submultiplicativity of g", fekete_submultiplicative),
    ("p root ≤ growth rate ≤ M0", ordering_chain),
    ("Myers system residuals ≤ 1e-9", myers_residuals),
    ("pair-pattern correlation identities", correlation_identities),
    ("free entropy homogeneous of degree −1", entropy_homogeneous),
    ("free entropy monotone", entropy_monotone),
    ("free entropy strictly convex", entropy_convex),
    ("free entropy blows up at the boundary", entropy_blows_up),
    ("near-minimal weights concentrate at uniform", entropy_stability),
    ("ln|B(R)|/R converges to h", ball_growth_trend),
    ("experiment reports independent of threads", experiment_deterministic),
    ("spectral gap and Cheeger constant above bounds", spectral_gap_above_bound),
    ("pooled failure rate below informative union bound", empirical_rate_below_informative_bound),
    ("relator count is the exact floor", relator_count_is_floor),
    ("presentation files round trip", presentation_round_trip),
    ("reports carry parameters and seed", reports_carry_parameters),
];

/// Cases per invariant.
pub const CASES: u32 = 128;
