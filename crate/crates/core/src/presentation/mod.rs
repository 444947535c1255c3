//! Small-cancellation analysis of finite presentations.

mod closure;
mod conditions;
mod dehn;
mod pieces;
mod surface;

pub use closure::{RotView, SymmetricClosure};
pub use conditions::{
    check_even_distribution, check_translation_apparent, even_distribution_on, is_lambda_reduced,
    Condition, DistributionWitness, EvenDistributionReport, LambdaReducedIndex, RelatorDistribution,
    TranslationReport,
};
pub use dehn::{dehn_reduce, DehnReducer};
pub use pieces::{
    check_c_prime, c_prime_on, max_piece_length, piece_report, threshold, CPrimeReport, CPrimeWitness,
    ClassPieces, PieceReport, PieceWitness,
};
pub use surface::{surface_geodesic_certificate, surface_presentation, GeodesicCertificate};

use num_rational::Rational64;

/// `⌈λ·n⌉` computed exactly.
pub(crate) fn ceil_mul(lambda: Rational64, n: usize) -> usize {
    let (p, q) = (*lambda.numer() as i128, *lambda.denom() as i128);
    let num = p * n as i128;
    (num.div_euclid(q) + i128::from(num.rem_euclid(q) != 0)) as usize
}

/// `a < λ·n`, exactly.
pub(crate) fn lt_mul(a: usize, lambda: Rational64, n: usize) -> bool {
    let (p, q) = (*lambda.numer() as i128, *lambda.denom() as i128);
    (a as i128) * q < p * n as i128
}

pub(crate) fn check_lambda(lambda: Rational64) -> crate::error::Result<()> {
    if *lambda.numer() <= 0 || lambda > Rational64::from_integer(1) {
        return Err(crate::error::Error::InvalidParameter(format!(
            "lambda must lie in (0, 1], got {lambda}"
        )));
    }
    Ok(())
}
