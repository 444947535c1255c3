//! Text and JSON file formats.
//!
//! Presentation files start with `m <int>` and list one relator per line,
//! `a`–`z` for generators and `A`–`Z` for their inverses. Alphabets larger
//! than 26 use the header `m! <int>` and comma-separated signed integers. `#`
//! starts a comment; blank lines are ignored.
//!
//! Weight files are JSON objects
//! `{"m": 2, "weights": ["1/4", "1/4"], "normalized": true}`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Letter, Presentation, WeightVector, Word};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut header: Option<(usize, bool)> = None;
    let mut relators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((m, numeric)) = header else {
            let mut parts = line.split_whitespace();
            let numeric = match parts.next() {
                Some("m") => false,
                Some("m!") => true,
                _ => return Err(parse_err(lineno, "expected header `m <int>` or `m! <int>`")),
            };
            let m: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .filter(|&m| m >= 1)
                .ok_or_else(|| parse_err(lineno, "alphabet size must be a positive integer"))?;
            if parts.next().is_some() {
                return Err(parse_err(lineno, "trailing tokens after the header"));
            }
            if !numeric && m > 26 {
                return Err(parse_err(lineno, "letter format supports at most 26 generators; use `m!`"));
            }
            header = Some((m, numeric));
            continue;
        };
        let word = if numeric {
            let values = line
                .split(',')
                .map(|t| t.trim().parse::<i32>().ok().filter(|&v| v != 0))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| parse_err(lineno, "expected comma-separated non-zero integers"))?;
            Word::from_ints(&values)
        } else {
            line.parse::<Word>().map_err(|_| parse_err(lineno, format!("invalid relator `{line}`")))?
        };
        word.check_alphabet(m).map_err(|e| parse_err(lineno, e.to_string()))?;
        relators.push(word);
    }
    let (m, _) = header.ok_or_else(|| parse_err(0, "missing header line"))?;
    Presentation::new(m, relators)
}

/// Canonical text for `p`; parsing it gives back `p`.
pub fn format_presentation(p: &Presentation) -> String {
    let mut s = String::new();
    if p.m() <= 26 {
        let _ = writeln!(s, "m {}", p.m());
        for r in p.relators() {
            let _ = writeln!(s, "{r}");
        }
    } else {
        let _ = writeln!(s, "m! {}", p.m());
        for r in p.relators() {
            let ints: Vec<String> = r.letters().iter().map(|l| l.value().to_string()).collect();
            let _ = writeln!(s, "{}", ints.join(","));
        }
    }
    s
}

pub fn read_presentation(path: &std::path::Path) -> Result<Presentation> {
    parse_presentation(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    pub m: usize,
    pub weights: Vec<String>,
    pub normalized: bool,
}

/// Exact rational from `p/q` or an integer; anything else is rejected.
pub fn parse_big_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let ok = !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-');
    ok.then(|| BigRational::from_str(t).ok())
        .flatten()
        .ok_or_else(|| Error::InvalidParameter(format!("malformed rational `{s}`")))
}

/// `λ`-style rational `p/q` in 64-bit arithmetic.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let t = s.trim();
    let ok = !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-');
    ok.then(|| Rational64::from_str(t).ok())
        .flatten()
        .ok_or_else(|| Error::InvalidParameter(format!("malformed rational `{s}`")))
}

pub fn parse_weights(json: &str) -> Result<WeightVector> {
    let f: WeightFile = serde_json::from_str(json)?;
    if f.weights.len() != f.m {
        return Err(Error::WeightArity {
            expected: f.m,
            got: f.weights.len(),
        });
    }
    let values = f
        .weights
        .iter()
        .map(|s| parse_big_rational(s).map_err(|_| Error::InvalidWeight(format!("malformed rational `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    let w = WeightVector::new(values)?;
    if f.normalized && !w.is_normalized() {
        return Err(Error::InvalidWeight(format!(
            "weights marked normalized but Σ_s w(s) = {}",
            w.total()
        )));
    }
    Ok(w)
}

pub fn format_weights(w: &WeightVector) -> String {
    let f = WeightFile {
        m: w.m(),
        weights: w.per_generator().iter().map(|r| r.to_string()).collect(),
        normalized: w.is_normalized(),
    };
    serde_json::to_string(&f).expect("plain struct serializes")
}

pub fn read_weights(path: &std::path::Path) -> Result<WeightVector> {
    parse_weights(&std::fs::read_to_string(path)?)
}

/// Parses a single letter: `a`–`z`, `A`–`Z`, or a non-zero integer.
pub fn parse_letter(s: &str) -> Result<Letter> {
    let t = s.trim();
    let mut chars = t.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if let Some(l) = Letter::from_char(c) {
            return Ok(l);
        }
    }
    t.parse::<i32>()
        .ok()
        .and_then(Letter::new)
        .ok_or_else(|| Error::InvalidParameter(format!("malformed letter `{s}`")))
}

pub(crate) fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
