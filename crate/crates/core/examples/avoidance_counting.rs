//! Counting words that avoid forbidden subwords, by automaton and by brute
//! force, and their exponential growth rate.
use weighted_entropy::avoidance::{count_avoiding, growth_rate, CountMode, ForbiddenSet};
use weighted_entropy::{WeightVector, Word};

fn main() -> Result<(), weighted_entropy::Error> {
    let mut patterns: Vec<Word> = ForbiddenSet::free(2).patterns().to_vec();
    patterns.push("abab".parse()?);
    let f = ForbiddenSet::new(2, patterns)?;
    let w = WeightVector::from_integers(&[1, 2])?;
    let fast = count_avoiding(&f, &w, 16, CountMode::Automaton)?;
    let slow = count_avoiding(&f, &w, 16, CountMode::BruteForce)?;
    assert_eq!(fast, slow);
    for (n, c) in fast.f.iter().enumerate() {
        println!("weight {n:>2}: {c}");
    }
    println!("growth rate {:.9}", growth_rate(&f, &w)?);
    println!("free growth rate {:.9}", growth_rate(&ForbiddenSet::free(2), &w)?);
    Ok(())
}
