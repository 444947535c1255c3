use std::fmt::Write as _;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{c_prime_on, even_distribution_on, Condition, SymmetricClosure};
use crate::random::constants::{GapChoice, UnionBounds};
use crate::random::rng::stream_rng;
use crate::random::sampling::sample_cyclically_reduced_word;
use crate::words::Word;

pub const CSV_HEADER: &str =
    "m,ell,lambda,trials,fail_run,fail_halfwin,fail_freqwin,fail_smallcanc,rate_pooled,bound_pooled";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentParams {
    pub m: usize,
    pub ells: Vec<usize>,
    #[serde(serialize_with = "crate::random::ser_rational")]
    pub lambda: Rational64,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentParams {
    pub fn new(m: usize, ells: Vec<usize>, trials: u64, seed: u64) -> ExperimentParams {
        ExperimentParams {
            m,
            ells,
            lambda: Rational64::new(1, 16),
            trials,
            seed,
        }
    }
}

/// Outcome of one trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    pub run: bool,
    pub half_window: bool,
    pub frequency_window: bool,
    pub small_cancellation: bool,
}

impl TrialOutcome {
    /// Any even-distribution condition failed.
    pub fn pooled(&self) -> bool {
        self.run || self.half_window || self.frequency_window
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GenericityRow {
    pub m: usize,
    pub ell: usize,
    pub lambda: String,
    pub trials: u64,
    pub fail_run: u64,
    pub fail_halfwin: u64,
    pub fail_freqwin: u64,
    pub fail_pooled: u64,
    pub fail_smallcanc: u64,
    pub rate_run: f64,
    pub rate_halfwin: f64,
    pub rate_freqwin: f64,
    pub rate_pooled: f64,
    pub rate_smallcanc: f64,
    /// Pooled union bound with `C_m`, when `< 1`.
    pub bound_pooled: Option<f64>,
    /// Same bound with the exact spectral gap, when `< 1`.
    pub bound_pooled_exact_gap: Option<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GenericityReport {
    pub params: ExperimentParams,
    pub rows: Vec<GenericityRow>,
}

/// Checks one word, together with all its cyclic permutations and inverses,
/// against the even-distribution conditions.
pub fn word_outcome(m: usize, r: &Word, lambda: Rational64) -> Result<TrialOutcome> {
    let c = SymmetricClosure::from_relators(m, std::slice::from_ref(r))?;
    let ed = even_distribution_on(&c, lambda);
    Ok(TrialOutcome {
        run: !ed.condition_passes(Condition::Run),
        half_window: !ed.condition_passes(Condition::HalfWindow),
        frequency_window: !ed.condition_passes(Condition::FrequencyWindow),
        small_cancellation: false,
    })
}

/// Trial `trial` at length `ell`: one word for the even-distribution
/// conditions, then an independent pair of relators for `C'(λ)`, all drawn
/// from stream `(seed, ell, trial)`.
pub fn run_trial(params: &ExperimentParams, ell: usize, trial: u64) -> Result<TrialOutcome> {
    let mut rng = stream_rng(params.seed, ell as u64, trial);
    let r = sample_cyclically_reduced_word(params.m, ell, &mut rng);
    let mut out = word_outcome(params.m, &r, params.lambda)?;
    let pair = [
        sample_cyclically_reduced_word(params.m, ell, &mut rng),
        sample_cyclically_reduced_word(params.m, ell, &mut rng),
    ];
    let c = SymmetricClosure::from_relators(params.m, &pair)?;
    out.small_cancellation = !c_prime_on(&c, params.lambda).holds;
    Ok(out)
}

fn row(params: &ExperimentParams, ell: usize) -> Result<GenericityRow> {
    let outcomes: Vec<TrialOutcome> = (0..params.trials)
        .into_par_iter()
        .map(|t| run_trial(params, ell, t))
        .collect::<Result<_>>()?;
    let count = |f: &dyn Fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| f(o)).count() as u64;
    let n = params.trials;
    let rate = |k: u64| k as f64 / n as f64;
    let (fr, fh, ff, fp, fs) = (
        count(&|o| o.run),
        count(&|o| o.half_window),
        count(&|o| o.frequency_window),
        count(&|o| o.pooled()),
        count(&|o| o.small_cancellation),
    );
    Ok(GenericityRow {
        m: params.m,
        ell,
        lambda: params.lambda.to_string(),
        trials: n,
        fail_run: fr,
        fail_halfwin: fh,
        fail_freqwin: ff,
        fail_pooled: fp,
        fail_smallcanc: fs,
        rate_run: rate(fr),
        rate_halfwin: rate(fh),
        rate_freqwin: rate(ff),
        rate_pooled: rate(fp),
        rate_smallcanc: rate(fs),
        bound_pooled: UnionBounds::new(params.m, ell, GapChoice::LowerBound).informative_pooled(),
        bound_pooled_exact_gap: UnionBounds::new(params.m, ell, GapChoice::Exact).informative_pooled(),
    })
}

/// Runs the experiment on the current rayon pool. Counts are integers summed
/// per trial, so the report is identical for every thread count.
pub fn genericity_experiment(params: &ExperimentParams) -> Result<GenericityReport> {
    if params.m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {}", params.m)));
    }
    if params.trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    if params.ells.iter().any(|&l| l == 0) {
        return Err(Error::InvalidParameter("relator lengths must be positive".into()));
    }
    crate::presentation::check_lambda(params.lambda)?;
    let rows = params
        .ells
        .iter()
        .map(|&ell| row(params, ell))
        .collect::<Result<_>>()?;
    Ok(GenericityReport {
        params: params.clone(),
        rows,
    })
}

/// Runs on a dedicated pool of `threads` workers.
pub fn genericity_experiment_with_threads(params: &ExperimentParams, threads: usize) -> Result<GenericityReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| genericity_experiment(params))
}

impl GenericityReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let bound = r.bound_pooled.map(|b| format!("{b:e}")).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                r.m, r.ell, r.lambda, r.trials, r.fail_run, r.fail_halfwin, r.fail_freqwin, r.fail_smallcanc, r.rate_pooled, bound
            );
        }
        s
    }
}
