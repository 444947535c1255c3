//! Sampling from the density model and writing the presentation file.
use num_rational::Rational64;
use weighted_entropy::io::format_presentation;
use weighted_entropy::random::{sample_presentation, DensityModelParams};

fn main() -> Result<(), weighted_entropy::Error> {
    let params = DensityModelParams::new(2, 24, Rational64::new(1, 8), 42);
    println!("{} relators expected", params.relator_count()?);
    let p = sample_presentation(&params)?;
    print!("{}", format_presentation(&p));
    Ok(())
}
