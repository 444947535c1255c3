use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Letter, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeodesicCertificate {
    CertifiedGeodesic,
    Unknown,
}

fn surface_relator(g: usize) -> Word {
    let mut letters = Vec::with_capacity(4 * g);
    for i in 0..g {
        let a = Letter::generator(2 * i + 1);
        let b = Letter::generator(2 * i + 2);
        letters.extend([a, b, a.inverse(), b.inverse()]);
    }
    Word::new(letters)
}

/// Genus-`g` surface group: `2g` generators and the product of commutators
/// `[a₁,b₁]⋯[a_g,b_g]`.
pub fn surface_presentation(g: usize) -> Result<Presentation> {
    if g < 2 {
        return Err(Error::InvalidParameter(format!("genus must be at least 2, got {g}")));
    }
    Presentation::new(2 * g, vec![surface_relator(g)])
}

/// Sufficient test for `x` being geodesic in the genus-`g` surface group: no
/// factor of length `2g − 2` of a cyclic shift of `r^{±1}` occurs in `x`.
pub fn surface_geodesic_certificate(x: &Word, g: usize) -> Result<GeodesicCertificate> {
    if g < 2 {
        return Err(Error::InvalidParameter(format!("genus must be at least 2, got {g}")));
    }
    if !x.is_reduced() {
        return Err(Error::NotReduced(x.clone()));
    }
    x.check_alphabet(2 * g)?;
    let t = 2 * g - 2;
    let r = surface_relator(g);
    let mut factors = HashSet::new();
    for w in [r.clone(), r.inverse()] {
        let l = w.letters();
        for s in 0..l.len() {
            factors.insert(l.iter().cycle().skip(s).take(t).copied().collect::<Vec<_>>());
        }
    }
    let xs = x.letters();
    let hit = xs.len() >= t && xs.windows(t).any(|u| factors.contains(u));
    Ok(if hit {
        GeodesicCertificate::Unknown
    } else {
        GeodesicCertificate::CertifiedGeodesic
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_relator() {
        let p = surface_presentation(2).unwrap();
        assert_eq!(p.m(), 4);
        assert_eq!(p.relators(), &["abABcdCD".parse::<Word>().unwrap()]);
        assert_eq!(surface_presentation(3).unwrap().relators()[0].len(), 12);
        assert!(surface_presentation(1).is_err());
    }

    #[test]
    fn certificate_examples() {
        let c = |s: &str, g| surface_geodesic_certificate(&s.parse().unwrap(), g).unwrap();
        assert_eq!(c("aaaa", 2), GeodesicCertificate::CertifiedGeodesic);
        assert_eq!(c("ab", 2), GeodesicCertificate::Unknown);
        assert_eq!(c("", 2), GeodesicCertificate::CertifiedGeodesic);
        assert!(surface_geodesic_certificate(&"aA".parse().unwrap(), 2).is_err());
        assert!(surface_geodesic_certificate(&"a".parse().unwrap(), 1).is_err());
    }
}
