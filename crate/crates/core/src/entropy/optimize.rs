use serde::Serialize;

use crate::entropy::free::{entropy_gradient, free_entropy};
use crate::error::{Error, Result};

/// An objective on normalized weight vectors (`2Σwᵢ = 1`).
pub trait EntropyOracle {
    fn value(&self, w: &[f64]) -> f64;

    /// Defaults to central differences with step `10⁻⁶`.
    fn gradient(&self, w: &[f64]) -> Vec<f64> {
        let step = 1e-6;
        (0..w.len())
            .map(|i| {
                let (mut a, mut b) = (w.to_vec(), w.to_vec());
                a[i] += step;
                b[i] -= step;
                (self.value(&a) - self.value(&b)) / (2.0 * step)
            })
            .collect()
    }

    /// Whether the objective is known to be convex (otherwise the result is
    /// flagged as heuristic).
    fn is_convex(&self) -> bool {
        true
    }
}

/// `h(F_m, w)` with its analytic gradient.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeEntropyOracle;

impl EntropyOracle for FreeEntropyOracle {
    fn value(&self, w: &[f64]) -> f64 {
        free_entropy(w)
    }

    fn gradient(&self, w: &[f64]) -> Vec<f64> {
        entropy_gradient(w)
    }
}

/// Wraps a closure as a black-box oracle with finite-difference gradients.
pub struct FnOracle<F> {
    f: F,
    convex: bool,
}

impl<F: Fn(&[f64]) -> f64> FnOracle<F> {
    pub fn new(f: F, convex: bool) -> FnOracle<F> {
        FnOracle { f, convex }
    }
}

impl<F: Fn(&[f64]) -> f64> EntropyOracle for FnOracle<F> {
    fn value(&self, w: &[f64]) -> f64 {
        (self.f)(w)
    }

    fn is_convex(&self) -> bool {
        self.convex
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeOptions {
    pub tol: f64,
    pub max_iterations: usize,
    pub floor: f64,
    /// Initial iterate (projected onto the feasible set); uniform if absent.
    pub start: Option<Vec<f64>>,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            tol: 1e-8,
            max_iterations: 10_000,
            floor: 1e-6,
            start: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimizeResult {
    pub weights: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub projected_gradient_norm: f64,
    pub heuristic: bool,
}

/// Euclidean projection onto `{w : Σwᵢ = total, wᵢ ≥ floor}`.
pub fn project(v: &[f64], total: f64, floor: f64) -> Vec<f64> {
    let m = v.len();
    let budget = total - m as f64 * floor;
    let shifted: Vec<f64> = v.iter().map(|x| x - floor).collect();
    let mut u = shifted.clone();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        cum += uk;
        let t = (cum - budget) / (k + 1) as f64;
        if uk - t > 0.0 {
            theta = t;
        }
    }
    shifted.iter().map(|x| (x - theta).max(0.0) + floor).collect()
}

fn norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Projected gradient descent over normalized weights, with
/// Barzilai–Borwein trial steps and Armijo backtracking.
pub fn minimize_entropy(oracle: &dyn EntropyOracle, m: usize, opts: MinimizeOptions) -> Result<MinimizeResult> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    if opts.floor * m as f64 >= 0.5 {
        return Err(Error::InvalidParameter("weight floor leaves an empty feasible set".into()));
    }
    let total = 0.5;
    let start = match &opts.start {
        Some(s) if s.len() != m => {
            return Err(Error::WeightArity { expected: m, got: s.len() });
        }
        Some(s) => s.clone(),
        None => vec![total / m as f64; m],
    };
    let mut w = project(&start, total, opts.floor);
    let mut f = oracle.value(&w);
    let mut step = 1.0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
    for it in 0..opts.max_iterations {
        let g = oracle.gradient(&w);
        if let Some((pw, pg)) = &prev {
            let s: Vec<f64> = w.iter().zip(pw).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = g.iter().zip(pg).map(|(a, b)| a - b).collect();
            let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
            let ss: f64 = s.iter().map(|a| a * a).sum();
            if sy > 0.0 && ss > 0.0 {
                step = (ss / sy).clamp(1e-12, 1e12);
            }
        }
        let unit: Vec<f64> = w.iter().zip(&g).map(|(x, d)| x - d).collect();
        residual = norm(&w, &project(&unit, total, opts.floor));
        if residual < opts.tol {
            return Ok(MinimizeResult {
                weights: w,
                value: f,
                iterations: it,
                projected_gradient_norm: residual,
                heuristic: !oracle.is_convex(),
            });
        }
        let mut accepted = false;
        while step > 1e-20 {
            let trial: Vec<f64> = w.iter().zip(&g).map(|(x, d)| x - step * d).collect();
            let cand = project(&trial, total, opts.floor);
            let fc = oracle.value(&cand);
            let decrease: f64 = g.iter().zip(cand.iter().zip(&w)).map(|(d, (c, x))| d * (c - x)).sum();
            let armijo = fc <= f + 1e-4 * decrease;
            // Once value changes drown in rounding, fall back to requiring a
            // smaller gradient mapping.
            let flat = (fc - f).abs() <= 64.0 * f64::EPSILON * f.abs();
            let improves = || {
                let gc = oracle.gradient(&cand);
                let unit: Vec<f64> = cand.iter().zip(&gc).map(|(x, d)| x - d).collect();
                norm(&cand, &project(&unit, total, opts.floor)) < residual
            };
            if armijo || (flat && improves()) {
                prev = Some((std::mem::replace(&mut w, cand), g.clone()));
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        iterations = it + 1;
        if !accepted {
            break;
        }
    }
    Err(Error::NonConvergence {
        iterations,
        residual,
    })
}
