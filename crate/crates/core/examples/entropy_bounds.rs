//! Two-sided entropy estimate for a random one-relator group with a long
//! relator.
use num_rational::Rational64;
use weighted_entropy::entropy::entropy_bounds;
use weighted_entropy::random::{sample_presentation, DensityModelParams};
use weighted_entropy::WeightVector;

fn main() -> Result<(), weighted_entropy::Error> {
    let p = sample_presentation(&DensityModelParams::few_relators(2, 10240, 1, 0))?;
    for w in [WeightVector::uniform_normalized(2), WeightVector::from_ratios(&[(1, 6), (1, 3)])?] {
        let e = entropy_bounds(&p, Rational64::new(1, 16), &w)?;
        println!("weights {:?}", w.to_f64());
        println!("  {:.12} ≤ h ≤ {:.12}  (gap {:.2e})", e.h_lo, e.h_hi, e.h_hi - e.h_lo);
        if let Some(h) = &e.hypotheses {
            println!("  l = {:?}, j = {}, hypotheses hold: {}", h.l, h.j, h.hold());
        }
    }
    Ok(())
}
