//! Failure rates of the even-distribution and small cancellation conditions
//! for random relators of growing length, as CSV.
use weighted_entropy::random::{genericity_experiment, ExperimentParams};

fn main() -> Result<(), weighted_entropy::Error> {
    let params = ExperimentParams::new(2, vec![40, 80, 160, 320, 640], 200, 0);
    print!("{}", genericity_experiment(&params)?.to_csv());
    Ok(())
}
