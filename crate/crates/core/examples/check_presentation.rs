//! Small cancellation and translation-apparent checks on the genus-2 surface
//! group and on a random long relator.
use num_rational::Rational64;
use weighted_entropy::presentation::{check_c_prime, check_translation_apparent, surface_presentation};
use weighted_entropy::random::{sample_presentation, DensityModelParams};

fn main() -> Result<(), weighted_entropy::Error> {
    let genus2 = surface_presentation(2)?.symmetrized()?;
    for (p, q) in [(1, 6), (1, 8)] {
        let r = check_c_prime(&genus2, Rational64::new(p, q))?;
        println!("genus 2, C'({p}/{q}): {} (longest piece {})", r.holds, r.max_piece_length);
    }
    let lambda = Rational64::new(1, 16);
    let t = check_translation_apparent(&genus2, lambda);
    println!("genus 2 translation-apparent at λ = 1/16: {} {:?}", t.holds, t.failures);

    let random = sample_presentation(&DensityModelParams::few_relators(2, 640, 1, 0))?;
    let t = check_translation_apparent(&random, lambda);
    println!("random relator of length 640 translation-apparent at λ = 1/16: {}", t.holds);
    Ok(())
}
