//! Command-line front end. [`run`] parses arguments, dispatches, prints a
//! report and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::avoidance::{
    build_forbidden_set, count_avoiding, growth_rate, CountMode, ForbiddenSet, RootPolynomial,
};
use crate::entropy::{
    entropy_bounds, free_entropy, minimize_entropy, nonstrict_demo, power_distance, EntropyOracle, FnOracle,
    FreeEntropyOracle, MinimizeOptions, WordMetric, DEFAULT_NODE_CAP,
};
use crate::error::{Error, Result};
use crate::io::{
    format_presentation, parse_big_rational, parse_letter, parse_rational, rational_to_string, read_presentation,
    read_weights,
};
use crate::presentation::{check_c_prime, check_even_distribution, check_translation_apparent};
use crate::random::{
    chain_spectral, genericity_experiment, genericity_experiment_with_threads, model_constants,
    sample_cyclically_reduced_word, sample_presentation, sample_reduced_word, stream_rng, DensityModelParams,
    ExperimentParams,
};
use crate::words::{Presentation, WeightVector, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "weighted-entropy", version, about = "Volume entropy of weighted word metrics")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Small cancellation and even-distribution checks.
    Check(CheckArgs),
    /// Entropy computations.
    #[command(subcommand)]
    Entropy(EntropyCommand),
    /// Growth series of words avoiding the λ-forbidden set.
    Count(CountArgs),
    /// Largest root of p and the automaton growth rate.
    Growth(GrowthArgs),
    /// Minimizes entropy over normalized weights.
    Minimize(MinimizeArgs),
    /// Random words and presentations.
    #[command(subcommand)]
    Sample(SampleCommand),
    /// Genericity experiment for the even-distribution conditions.
    Experiment(ExperimentArgs),
    /// Letter Markov chain spectrum and density-model constants.
    Chain(ChainArgs),
    /// Demonstrations.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Translation,
    CPrime,
    Even,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    presentation: PathBuf,
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum, default_value = "translation")]
    mode: CheckMode,
}

#[derive(Subcommand, Debug)]
enum EntropyCommand {
    /// Entropy of the free group for the given weights.
    Free {
        #[arg(long)]
        m: usize,
        /// Weight file; uniform normalized weights when absent.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Upper and lower bounds for a translation-apparent presentation.
    Bounds {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Exact weighted ball sizes.
    Ball {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Radius as an exact rational.
        #[arg(long)]
        radius: String,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: usize,
    },
    /// Weighted distances from the identity to powers of a letter.
    Powers {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        letter: String,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Presentation whose λ-forbidden set is counted.
    #[arg(long, required_unless_present = "patterns")]
    presentation: Option<PathBuf>,
    #[arg(long, default_value = "1/16")]
    lambda: String,
    /// Explicit forbidden patterns, comma separated (with --m).
    #[arg(long, conflicts_with = "presentation", requires = "m")]
    patterns: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_enum, default_value = "automaton")]
    mode: ModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Automaton,
    BruteForce,
}

#[derive(Args, Debug)]
struct GrowthArgs {
    #[arg(long)]
    presentation: PathBuf,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Objective {
    Free,
    LowerBound,
}

#[derive(Args, Debug)]
struct MinimizeArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value = "free")]
    objective: Objective,
    #[arg(long, required_if_eq("objective", "lower-bound"))]
    presentation: Option<PathBuf>,
    #[arg(long, default_value = "1/16")]
    lambda: String,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iterations: usize,
}

#[derive(Subcommand, Debug)]
enum SampleCommand {
    /// A uniform random reduced (or cyclically reduced) word.
    Word {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cyclic: bool,
    },
    /// A density-model presentation, written in the presentation file format.
    Presentation {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value = "0")]
        density: String,
        /// Few-relator mode (density 0).
        #[arg(long)]
        relators: Option<u64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Relator lengths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    ells: Vec<usize>,
    #[arg(long, default_value = "1/16")]
    lambda: String,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand, Debug)]
enum DemoCommand {
    /// Redundant generating set of F₂ with identical weighted metrics.
    Nonstrict {
        /// Values of t, comma separated.
        #[arg(long, value_delimiter = ',', default_values = ["0", "1/2", "1"])]
        t: Vec<String>,
        #[arg(long, default_value = "1/2")]
        radius: String,
    },
}

struct Outcome {
    command: &'static str,
    params: Value,
    result: Value,
    passed: bool,
    /// Machine-format payload replacing the JSON report (presentation text or
    /// CSV), with the file it goes to.
    artifact: Option<(String, Option<PathBuf>)>,
}

impl Outcome {
    fn new(command: &'static str, params: Value, result: impl Serialize) -> Result<Outcome> {
        Ok(Outcome {
            command,
            params,
            result: serde_json::to_value(result)?,
            passed: true,
            artifact: None,
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } | Error::NonConvergence { .. } => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn load_weights(path: Option<&Path>, m: usize) -> Result<WeightVector> {
    let w = match path {
        Some(p) => read_weights(p)?,
        None => WeightVector::uniform_normalized(m),
    };
    if w.m() != m {
        return Err(Error::WeightArity { expected: m, got: w.m() });
    }
    Ok(w)
}

/// Smallest `N` with `N·w` integral, and `N·w`.
fn integerize(w: &WeightVector) -> Result<(BigInt, WeightVector)> {
    let lcd = w
        .per_generator()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = w.scale(&BigRational::from_integer(lcd.clone()))?;
    Ok((lcd, scaled))
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn opt_path(p: &Option<PathBuf>) -> Value {
    p.as_deref().map(path_str).map_or(Value::Null, Value::String)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check(a) => check(a),
        Command::Entropy(e) => entropy(e),
        Command::Count(a) => count(a),
        Command::Growth(a) => growth(a),
        Command::Minimize(a) => minimize(a),
        Command::Sample(s) => sample(s),
        Command::Experiment(a) => experiment(a, cli.format),
        Command::Chain(a) => {
            let params = json!({ "m": a.m });
            Outcome::new(
                "chain",
                params,
                json!({ "spectrum": chain_spectral(a.m)?, "constants": model_constants(a.m)? }),
            )
        }
        Command::Demo(DemoCommand::Nonstrict { t, radius }) => {
            let r = parse_big_rational(radius)?;
            let reports = t
                .iter()
                .map(|t| nonstrict_demo(&parse_big_rational(t)?, &r))
                .collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.agree);
            let mut o = Outcome::new("demo nonstrict", json!({ "t": t, "radius": radius }), reports)?;
            o.passed = passed;
            Ok(o)
        }
    }
}

fn check(a: &CheckArgs) -> Result<Outcome> {
    let p = read_presentation(&a.presentation)?;
    let lambda = parse_rational(&a.lambda)?;
    let params = json!({
        "presentation": path_str(&a.presentation),
        "lambda": lambda.to_string(),
        "mode": format!("{:?}", a.mode).to_lowercase(),
    });
    let (result, passed) = match a.mode {
        CheckMode::Translation => {
            let r = check_translation_apparent(&p, lambda);
            let holds = r.holds;
            (serde_json::to_value(r)?, holds)
        }
        CheckMode::CPrime => {
            let r = check_c_prime(&p.symmetrized()?, lambda)?;
            let holds = r.holds;
            (serde_json::to_value(r)?, holds)
        }
        CheckMode::Even => {
            let r = check_even_distribution(&p.symmetrized()?, lambda)?;
            let holds = r.passes();
            (serde_json::to_value(json!({ "holds": holds, "report": r }))?, holds)
        }
    };
    let mut o = Outcome::new("check", params, result)?;
    o.passed = passed;
    Ok(o)
}

fn entropy(e: &EntropyCommand) -> Result<Outcome> {
    match e {
        EntropyCommand::Free { m, weights } => {
            let w = load_weights(weights.as_deref(), *m)?;
            let h = free_entropy(&w.to_f64());
            Outcome::new(
                "entropy free",
                json!({ "m": m, "weights": opt_path(weights) }),
                json!({ "h": h }),
            )
        }
        EntropyCommand::Bounds {
            presentation,
            lambda,
            weights,
        } => {
            let p = read_presentation(presentation)?;
            let lambda = parse_rational(lambda)?;
            let w = load_weights(weights.as_deref(), p.m())?;
            let est = entropy_bounds(&p, lambda, &w)?;
            Outcome::new(
                "entropy bounds",
                json!({
                    "presentation": path_str(presentation),
                    "lambda": lambda.to_string(),
                    "weights": opt_path(weights),
                }),
                est,
            )
        }
        EntropyCommand::Ball {
            presentation,
            weights,
            radius,
            node_cap,
        } => {
            let p = read_presentation(presentation)?.symmetrized()?;
            let w = load_weights(weights.as_deref(), p.m())?;
            let r = parse_big_rational(radius)?;
            let ball = WordMetric::new(&p, &w)?.with_node_cap(*node_cap).ball(&r)?;
            let mut spheres: Vec<(BigRational, usize)> = Vec::new();
            for i in 0..ball.len() {
                let d = ball.distance(i);
                match spheres.last_mut() {
                    Some((last, n)) if *last == d => *n += 1,
                    _ => spheres.push((d, 1)),
                }
            }
            let spheres: Vec<Value> = spheres
                .iter()
                .map(|(d, n)| json!({ "distance": rational_to_string(d), "count": n }))
                .collect();
            Outcome::new(
                "entropy ball",
                json!({
                    "presentation": path_str(presentation),
                    "weights": opt_path(weights),
                    "radius": rational_to_string(&r),
                    "node_cap": node_cap,
                }),
                json!({ "count": ball.len(), "spheres": spheres }),
            )
        }
        EntropyCommand::Powers {
            presentation,
            weights,
            letter,
            n_max,
        } => {
            let p = read_presentation(presentation)?.symmetrized()?;
            let w = load_weights(weights.as_deref(), p.m())?;
            let s = parse_letter(letter)?;
            let d = power_distance(&p, &w, s, *n_max)?;
            let translation = rational_to_string(w.weight(s));
            Outcome::new(
                "entropy powers",
                json!({
                    "presentation": path_str(presentation),
                    "weights": opt_path(weights),
                    "letter": letter,
                    "n_max": n_max,
                }),
                json!({
                    "distances": d.iter().map(rational_to_string).collect::<Vec<_>>(),
                    "letter_weight": translation,
                }),
            )
        }
    }
}

fn count(a: &CountArgs) -> Result<Outcome> {
    let lambda = parse_rational(&a.lambda)?;
    let f = match (&a.presentation, &a.patterns) {
        (Some(path), _) => build_forbidden_set(&read_presentation(path)?.symmetrized()?, lambda)?,
        (None, Some(pats)) => {
            let m = a.m.ok_or_else(|| Error::InvalidParameter("--patterns requires --m".into()))?;
            let words = pats
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<Word>()
                        .map_err(|_| Error::InvalidParameter(format!("malformed pattern `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            ForbiddenSet::new(m, words)?
        }
        (None, None) => return Err(Error::InvalidParameter("need --presentation or --patterns".into())),
    };
    let w = load_weights(a.weights.as_deref(), f.m())?;
    let (scale, wi) = integerize(&w)?;
    let mode = match a.mode {
        ModeArg::Automaton => CountMode::Automaton,
        ModeArg::BruteForce => CountMode::BruteForce,
    };
    let series = count_avoiding(&f, &wi, a.n_max, mode)?;
    Outcome::new(
        "count",
        json!({
            "presentation": opt_path(&a.presentation),
            "patterns": a.patterns,
            "m": f.m(),
            "lambda": lambda.to_string(),
            "weights": opt_path(&a.weights),
            "n_max": a.n_max,
            "mode": mode,
        }),
        json!({
            "weight_scale": scale.to_string(),
            "integer_weights": wi.per_generator().iter().map(rational_to_string).collect::<Vec<_>>(),
            "forbidden_patterns": f.len(),
            "series": series,
        }),
    )
}

fn growth(a: &GrowthArgs) -> Result<Outcome> {
    let p = read_presentation(&a.presentation)?.symmetrized()?;
    let lambda = parse_rational(&a.lambda)?;
    let w = load_weights(a.weights.as_deref(), p.m())?;
    let (scale, wi) = integerize(&w)?;
    let poly = RootPolynomial::new(&p, lambda, &wi)?;
    let f = build_forbidden_set(&p, lambda)?;
    let rate = growth_rate(&f, &wi)?;
    let scale_f = scale.to_f64().unwrap_or(f64::NAN);
    let root = poly.largest_root();
    Outcome::new(
        "growth",
        json!({
            "presentation": path_str(&a.presentation),
            "lambda": lambda.to_string(),
            "weights": opt_path(&a.weights),
        }),
        json!({
            "weight_scale": scale.to_string(),
            "p_largest_root": root,
            "growth_rate": rate,
            "m0": poly.m0(),
            "entropy_lower": root.map(|z| scale_f * z.ln()),
            "entropy_automaton": scale_f * rate.ln(),
            "hypotheses": poly.hypotheses(),
        }),
    )
}

fn minimize(a: &MinimizeArgs) -> Result<Outcome> {
    let opts = MinimizeOptions {
        tol: a.tol,
        max_iterations: a.max_iterations,
        ..Default::default()
    };
    let lambda = parse_rational(&a.lambda)?;
    let result = match a.objective {
        Objective::Free => minimize_entropy(&FreeEntropyOracle, a.m, opts)?,
        Objective::LowerBound => {
            let path = a
                .presentation
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--objective lower-bound needs --presentation".into()))?;
            let p = read_presentation(path)?;
            if p.m() != a.m {
                return Err(Error::InvalidParameter(format!(
                    "presentation has {} generators, --m is {}",
                    p.m(),
                    a.m
                )));
            }
            let lower = |w: &[f64]| -> f64 {
                let ws: Option<Vec<BigRational>> = w.iter().map(|&x| BigRational::from_float(x)).collect();
                ws.and_then(|ws| WeightVector::new(ws).ok())
                    .and_then(|wv| entropy_bounds(&p, lambda, &wv).ok())
                    .map_or(f64::INFINITY, |e| e.h_lo)
            };
            entropy_bounds(&p, lambda, &WeightVector::uniform_normalized(a.m))?;
            let oracle = FnOracle::new(lower, false);
            minimize_entropy(&oracle as &dyn EntropyOracle, a.m, opts)?
        }
    };
    Outcome::new(
        "minimize",
        json!({
            "m": a.m,
            "objective": format!("{:?}", a.objective).to_lowercase(),
            "presentation": opt_path(&a.presentation),
            "lambda": lambda.to_string(),
            "tol": a.tol,
            "max_iterations": a.max_iterations,
        }),
        result,
    )
}

fn sample(s: &SampleCommand) -> Result<Outcome> {
    match s {
        SampleCommand::Word { m, ell, seed, cyclic } => {
            if *m < 1 || *ell < 1 {
                return Err(Error::InvalidParameter("m and ell must be positive".into()));
            }
            let mut rng = stream_rng(*seed, *ell as u64, 0);
            let w = if *cyclic {
                sample_cyclically_reduced_word(*m, *ell, &mut rng)
            } else {
                sample_reduced_word(*m, *ell, &mut rng)
            };
            Outcome::new(
                "sample word",
                json!({ "m": m, "ell": ell, "seed": seed, "cyclic": cyclic }),
                json!({ "word": w }),
            )
        }
        SampleCommand::Presentation {
            m,
            ell,
            density,
            relators,
            seed,
            output,
        } => {
            let d = parse_rational(density)?;
            let params = DensityModelParams {
                m: *m,
                ell: *ell,
                density: d,
                relator_count_override: *relators,
                seed: *seed,
            };
            let p: Presentation = sample_presentation(&params)?;
            let mut o = Outcome::new(
                "sample presentation",
                serde_json::to_value(&params)?,
                json!({ "relators": p.relators().len(), "output": opt_path(output) }),
            )?;
            let header = format!(
                "# sample presentation --m {m} --ell {ell} --density {d} {}--seed {seed}\n",
                relators.map(|r| format!("--relators {r} ")).unwrap_or_default()
            );
            o.artifact = Some((header + &format_presentation(&p), output.clone()));
            Ok(o)
        }
    }
}

fn experiment(a: &ExperimentArgs, format: Format) -> Result<Outcome> {
    let mut params = ExperimentParams::new(a.m, a.ells.clone(), a.trials, a.seed);
    params.lambda = parse_rational(&a.lambda)?;
    let report = match a.threads {
        Some(t) => genericity_experiment_with_threads(&params, t)?,
        None => genericity_experiment(&params)?,
    };
    let csv = report.to_csv();
    let mut o = Outcome::new(
        "experiment",
        json!({
            "m": a.m,
            "ells": a.ells,
            "lambda": params.lambda.to_string(),
            "trials": a.trials,
            "seed": a.seed,
            "threads": a.threads,
        }),
        &report.rows,
    )?;
    if format == Format::Csv || a.output.is_some() {
        o.artifact = Some((csv, a.output.clone()));
    }
    Ok(o)
}

fn emit(outcome: &Outcome, report: &Value, format: Format, out: &mut dyn Write) -> Result<()> {
    match (&outcome.artifact, format) {
        (Some((text, Some(path))), _) => {
            std::fs::write(path, text)?;
            writeln!(out, "{}", serde_json::to_string_pretty(report)?)?;
        }
        (Some((text, None)), _) => write!(out, "{text}")?,
        (None, Format::Text) => write!(out, "{}", render_text(&outcome.result))?,
        (None, _) => writeln!(out, "{}", serde_json::to_string_pretty(report)?)?,
    }
    Ok(())
}

fn render_text(result: &Value) -> String {
    match result {
        Value::Object(map) if map.len() == 1 => render_text(map.values().next().unwrap()),
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        Value::String(s) => format!("{s}\n"),
        other => format!("{other}\n"),
    }
}

/// Runs the CLI with the given arguments (the first is the program name),
/// writing reports to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let code = if outcome.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
    let report = json!({
        "command": outcome.command,
        "params": outcome.params,
        "passed": outcome.passed,
        "result": outcome.result,
    });
    let written = emit(&outcome, &report, cli.format, out);
    match written {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
