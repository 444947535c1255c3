use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::avoidance::counting::letter_weights;
use crate::avoidance::forbidden::ForbiddenSet;
use crate::avoidance::growth::growth_rate;
use crate::error::{Error, Result};
use crate::words::{WeightVector, Word};

/// `Σ_j z^j` over the weighted overlap set of two words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorrelationPolynomial {
    exponents: BTreeSet<u64>,
}

impl CorrelationPolynomial {
    pub fn exponents(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.exponents.iter().map(|&j| z.powf(j as f64)).sum()
    }
}

/// Weights `|v|_w` of the nonempty words `v` that end `w1` and begin `w2`.
pub fn correlation_polynomial(w1: &Word, w2: &Word, w: &WeightVector) -> Result<CorrelationPolynomial> {
    let ints = w.integral_values()?;
    let a = w1.letters();
    let b = w2.letters();
    let mut exponents = BTreeSet::new();
    for k in 1..=a.len().min(b.len()) {
        let v = &a[a.len() - k..];
        if v == &b[..k] {
            exponents.insert(v.iter().map(|l| ints[l.gen_index() - 1]).sum());
        }
    }
    Ok(CorrelationPolynomial { exponents })
}

/// Values of `F(z)` and the `F_W(z)` at one point, with the worst relative
/// equation residual.
#[derive(Clone, Debug, Serialize)]
pub struct MyersSolution {
    pub z: f64,
    pub total: f64,
    pub per_pattern: Vec<f64>,
    pub max_residual: f64,
}

/// Coefficient matrix of the linear system for `(F, F₁, …, F_k)` at `z`.
pub fn myers_system(f: &ForbiddenSet, w: &WeightVector, z: f64) -> Result<(DMatrix<f64>, DVector<f64>)> {
    let lw = letter_weights(f.m(), w)?;
    let k = f.len();
    let mut a = DMatrix::zeros(k + 1, k + 1);
    let mut b = DVector::zeros(k + 1);
    a[(0, 0)] = 1.0 - lw.iter().map(|&x| z.powi(-(x as i32))).sum::<f64>();
    for i in 0..k {
        a[(0, i + 1)] = 1.0;
    }
    b[0] = 1.0;
    let pats = f.patterns();
    for i in 0..k {
        a[(i + 1, 0)] = 1.0;
        for l in 0..k {
            let c = correlation_polynomial(&pats[l], &pats[i], w)?;
            a[(i + 1, l + 1)] = -c.eval(z);
        }
    }
    Ok((a, b))
}

/// Solves the generating-function system at a point `z` above the growth rate.
pub fn myers_solve_at(f: &ForbiddenSet, w: &WeightVector, z: f64) -> Result<MyersSolution> {
    let growth = growth_rate(f, w)?;
    if !(z > growth * (1.0 + 1e-12)) {
        return Err(Error::OutsideConvergence { z, growth });
    }
    let (a, b) = myers_system(f, w, z)?;
    let lu = a.clone().lu();
    let x = lu.solve(&b).ok_or(Error::SingularSystem(z))?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem(z));
    }
    let mut max_residual: f64 = 0.0;
    for r in 0..a.nrows() {
        let row = a.row(r);
        let lhs: f64 = row.iter().zip(x.iter()).map(|(p, q)| p * q).sum();
        let scale = row
            .iter()
            .zip(x.iter())
            .map(|(p, q)| (p * q).abs())
            .sum::<f64>()
            .max(b[r].abs())
            .max(1.0);
        max_residual = max_residual.max((lhs - b[r]).abs() / scale);
    }
    Ok(MyersSolution {
        z,
        total: x[0],
        per_pattern: x.iter().skip(1).copied().collect(),
        max_residual,
    })
}
