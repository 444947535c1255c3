//! Spectrum and Cheeger constant of the non-backtracking letter chain, next to
//! the constants of the genericity estimates.
use weighted_entropy::random::{chain_spectral, model_constants};

fn main() -> Result<(), weighted_entropy::Error> {
    for m in 2..=5 {
        let s = chain_spectral(m)?;
        let c = model_constants(m)?;
        println!(
            "m = {m}: β₁ = {:.6}, gap {:.6} (bound {:.6}), Φ = {} (bound {}), C_m = {}, 1/d_m = {:.2}",
            s.beta1, s.epsilon, s.epsilon_lower_bound, s.cheeger, s.cheeger_lower_bound, c.c_m, c.inverse_d_m
        );
    }
    Ok(())
}
