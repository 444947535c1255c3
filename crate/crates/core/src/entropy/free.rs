/// Volume entropy of the free group `F_m` for per-generator weights `w`: the
/// unique `h > 0` with `Σᵢ 1/(1 + e^{wᵢh}) = ½` (`h = 0` when `m = 1`).
pub fn free_entropy(w: &[f64]) -> f64 {
    let m = w.len();
    if m <= 1 {
        return 0.0;
    }
    let w_min = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let excess = |h: f64| w.iter().map(|&wi| 1.0 / (1.0 + (wi * h).exp())).sum::<f64>() - 0.5;
    let (mut lo, mut hi) = (1e-9, 2.0 * m as f64 * ((2 * m - 1) as f64).ln() / w_min + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `∂h/∂wᵢ = −h σᵢ / Σⱼ wⱼσⱼ` with `σᵢ = e^{wᵢh}/(1+e^{wᵢh})²`, obtained by
/// differentiating the defining equation implicitly.
pub fn entropy_gradient(w: &[f64]) -> Vec<f64> {
    let h = free_entropy(w);
    let sigma: Vec<f64> = w
        .iter()
        .map(|&wi| {
            let c = (0.5 * wi * h).cosh();
            1.0 / (4.0 * c * c)
        })
        .collect();
    let denom: f64 = w.iter().zip(&sigma).map(|(a, b)| a * b).sum();
    sigma.iter().map(|s| -h * s / denom).collect()
}

/// `2m·ln(2m−1)`: entropy of the normalized uniform weight on `F_m`.
pub fn uniform_free_entropy(m: usize) -> f64 {
    2.0 * m as f64 * ((2 * m - 1) as f64).ln()
}
