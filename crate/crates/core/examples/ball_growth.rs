//! Exact weighted ball sizes in the free group and in the genus-2 surface
//! group, with the growth estimate ln|B(R)|/R.
use num_bigint::BigInt;
use num_rational::BigRational;
use weighted_entropy::entropy::{free_entropy, power_distance, WordMetric};
use weighted_entropy::presentation::surface_presentation;
use weighted_entropy::{Letter, Presentation, WeightVector};

fn main() -> Result<(), weighted_entropy::Error> {
    let w = WeightVector::from_integers(&[1, 2])?;
    let ball = WordMetric::new(&Presentation::free(2), &w)?.ball(&BigRational::from_integer(BigInt::from(14)))?;
    println!("F2 with w = (1, 2); h = {:.6}", free_entropy(&w.to_f64()));
    for r in (2..=14).step_by(2) {
        let n = ball.count_within(&BigRational::from_integer(BigInt::from(r)));
        println!("  R = {r:>2}: |B| = {n:>6}, ln|B|/R = {:.6}", (n as f64).ln() / r as f64);
    }
    let genus2 = surface_presentation(2)?;
    let unit = WeightVector::unit(4);
    let ball = WordMetric::new(&genus2, &unit)?.ball(&BigRational::from_integer(BigInt::from(5)))?;
    for r in 0..=5 {
        println!("genus 2, R = {r}: |B| = {}", ball.count_within(&BigRational::from_integer(BigInt::from(r))));
    }
    let d = power_distance(&genus2, &unit, Letter::generator(1), 6)?;
    println!("genus 2, d(e, aⁿ) = {}", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    Ok(())
}
