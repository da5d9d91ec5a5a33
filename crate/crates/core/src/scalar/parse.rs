use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::{parse_rational, Rational};
use super::value::{Scalar, Tag};
use crate::error::{Error, Result};

/// Parses a rational polynomial in `x` written as a sum of terms such as
/// `x^3`, `2x^2 - 3*x + 1/2` or `-x`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        // a sign starts a new term unless it follows an exponent marker
        let boundary = i == bytes.len()
            || ((bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'^'));
        if boundary {
            let (c, e) = parse_term(&compact[start..i])?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += c;
            start = i;
        }
    }
    Polynomial::new(Tag::Rational, coeffs.into_iter().map(Scalar::Rat).collect())
}

fn parse_term(term: &str) -> Result<(Rational, usize)> {
    let bad = || Error::Parse(format!("cannot read polynomial term '{term}'"));
    let (sign, body) = match term.as_bytes().first() {
        Some(b'+') => (Rational::one(), &term[1..]),
        Some(b'-') => (-Rational::one(), &term[1..]),
        _ => (Rational::one(), term),
    };
    let Some(pos) = body.find(['x', 'y']) else {
        return Ok((sign * parse_rational(body)?, 0));
    };
    let coeff_text = body[..pos].trim_end_matches('*');
    let coeff = if coeff_text.is_empty() { Rational::one() } else { parse_rational(coeff_text)? };
    let rest = &body[pos + 1..];
    let exp = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(bad)?
    };
    Ok((sign * coeff, exp))
}
