//! The redundant generating set {a, b, a², b²} of F₂: every weight on the
//! segment gives the same metric on a ball, so entropy is constant there.
use num_bigint::BigInt;
use num_rational::BigRational;
use weighted_entropy::entropy::nonstrict_demo;

fn main() -> Result<(), weighted_entropy::Error> {
    let radius = BigRational::new(BigInt::from(1), BigInt::from(2));
    for (p, q) in [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)] {
        let t = BigRational::new(BigInt::from(p), BigInt::from(q));
        let r = nonstrict_demo(&t, &radius)?;
        println!("t = {}: weights {:?}, {} elements, agree = {}", r.t, r.weights, r.elements, r.agree);
    }
    Ok(())
}
