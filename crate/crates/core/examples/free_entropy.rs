//! Entropy of the free group for a few weightings.
use weighted_entropy::entropy::{entropy_gradient, free_entropy};

fn main() {
    for w in [vec![0.25, 0.25], vec![0.1, 0.4], vec![1.0 / 6.0; 3], vec![1.0, 2.0]] {
        println!("w = {w:?}\n  h = {:.10}\n  ∇h = {:?}", free_entropy(&w), entropy_gradient(&w));
    }
}
