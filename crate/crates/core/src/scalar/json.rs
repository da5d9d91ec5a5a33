//! JSON forms of exact values.
//!
//! * rational: `"p/q"` (or `"p"` for integers)
//! * ℚ(q): `{"num": [...], "den": [...]}` with coefficient strings, index = power of `q`
//! * ℚ(p,q): the same object, each entry a list of `q`-coefficients for one power of `p`
//! * polynomial in `x`: an array of scalar forms, index = power of `x`

use serde_json::{json, Value};

use super::poly::Poly;
use super::polynomial::Polynomial;
use super::rational::{parse_rational, Rational};
use super::value::{PQFrac, PQPoly, QFrac, QPoly, Scalar, Tag};
use crate::error::{Error, Result};

fn qpoly_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn pqpoly_json(p: &PQPoly) -> Value {
    Value::Array(p.coeffs().iter().map(qpoly_json).collect())
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => Value::String(r.to_string()),
        Scalar::Q(f) => json!({"num": qpoly_json(f.num()), "den": qpoly_json(f.den())}),
        Scalar::PQ(f) => json!({"num": pqpoly_json(f.num()), "den": pqpoly_json(f.den())}),
    }
}

pub fn polynomial_to_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed {what} JSON"))
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(bad("rational")),
    }
}

fn qpoly_from_json(v: &Value) -> Result<QPoly> {
    let items = v.as_array().ok_or_else(|| bad("polynomial"))?;
    Ok(Poly::from_coeffs(items.iter().map(rational_from_json).collect::<Result<_>>()?))
}

fn pqpoly_from_json(v: &Value) -> Result<PQPoly> {
    let items = v.as_array().ok_or_else(|| bad("polynomial"))?;
    Ok(Poly::from_coeffs(items.iter().map(qpoly_from_json).collect::<Result<_>>()?))
}

/// Reads a scalar of the given tag back from its JSON form.
pub fn scalar_from_json(tag: Tag, v: &Value) -> Result<Scalar> {
    if tag == Tag::Rational {
        return rational_from_json(v).map(Scalar::Rat);
    }
    let (num, den) = match v {
        Value::Object(map) => {
            (map.get("num").ok_or_else(|| bad("fraction"))?, map.get("den").ok_or_else(|| bad("fraction"))?)
        }
        // a bare rational is accepted as a constant
        _ => return rational_from_json(v).map(|r| Scalar::from_rational(tag, r)),
    };
    match tag {
        Tag::Q => QFrac::new(qpoly_from_json(num)?, qpoly_from_json(den)?)
            .map(Scalar::Q)
            .ok_or(Error::DivisionByZero),
        _ => PQFrac::new(pqpoly_from_json(num)?, pqpoly_from_json(den)?)
            .map(Scalar::PQ)
            .ok_or(Error::DivisionByZero),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::ratio;

    #[test]
    fn rational_as_string() {
        assert_eq!(scalar_to_json(&Scalar::Rat(ratio(-3, 6))), json!("-1/2"));
        assert_eq!(scalar_to_json(&Scalar::from_int(Tag::Rational, 4)), json!("4"));
    }

    #[test]
    fn q_fraction_object() {
        let s = Scalar::q().checked_div(&(&Scalar::one(Tag::Q) - &Scalar::q())).unwrap();
        let v = scalar_to_json(&s);
        assert_eq!(v, json!({"num": ["0", "-1"], "den": ["-1", "1"]}));
        assert_eq!(scalar_from_json(Tag::Q, &v).unwrap(), s);
    }

    #[test]
    fn pq_round_trip() {
        let s = (&Scalar::pq_p() + &Scalar::pq_q()).checked_div(&Scalar::pq_q()).unwrap();
        let v = scalar_to_json(&s);
        assert_eq!(scalar_from_json(Tag::PQ, &v).unwrap(), s);
    }

    #[test]
    fn polynomial_array() {
        let p = Polynomial::from_ints(Tag::Rational, &[0, 2, -3, 1]);
        assert_eq!(polynomial_to_json(&p), json!(["0", "2", "-3", "1"]));
    }
}
