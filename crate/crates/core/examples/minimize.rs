//! Minimizing the free entropy over normalized weights from a skewed start.
use weighted_entropy::entropy::{minimize_entropy, uniform_free_entropy, FreeEntropyOracle, MinimizeOptions};

fn main() -> Result<(), weighted_entropy::Error> {
    for m in 2..=5 {
        let start: Vec<f64> = (1..=m).map(|i| i as f64).collect();
        let r = minimize_entropy(&FreeEntropyOracle, m, MinimizeOptions { start: Some(start), ..Default::default() })?;
        println!(
            "m = {m}: h = {:.12} (closed form {:.12}) after {} steps, w = {:?}",
            r.value,
            uniform_free_entropy(m),
            r.iterations,
            r.weights
        );
    }
    Ok(())
}
