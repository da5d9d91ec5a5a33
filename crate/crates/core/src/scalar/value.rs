use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// ℚ[q].
pub type QPoly = Poly<Rational>;
/// ℚ(q).
pub type QFrac = RatFunc<Rational>;
/// ℚ[q][p]: polynomials in `p` whose coefficients are polynomials in `q`.
pub type PQPoly = Poly<QPoly>;
/// ℚ(p, q).
pub type PQFrac = RatFunc<QPoly>;

/// Which coefficient field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Rational,
    Q,
    PQ,
}

impl Tag {
    pub fn name(self) -> &'static str {
        match self {
            Tag::Rational => "rational",
            Tag::Q => "q",
            Tag::PQ => "pq",
        }
    }
}

/// An exact element of ℚ, ℚ(q) or ℚ(p,q).
///
/// Arithmetic never mixes tags. The `checked_*` methods report a mismatch;
/// the operator impls panic on one and are meant for code whose operands
/// all come from the same sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Q(QFrac),
    PQ(PQFrac),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic on two scalars of the same tag.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Scalar {
    pub fn tag(&self) -> Tag {
        match self {
            Scalar::Rat(_) => Tag::Rational,
            Scalar::Q(_) => Tag::Q,
            Scalar::PQ(_) => Tag::PQ,
        }
    }

    pub fn from_rational(tag: Tag, r: Rational) -> Scalar {
        match tag {
            Tag::Rational => Scalar::Rat(r),
            Tag::Q => Scalar::Q(QFrac::from_poly(Poly::constant(r))),
            Tag::PQ => Scalar::PQ(PQFrac::from_poly(Poly::constant(Poly::constant(r)))),
        }
    }

    pub fn from_int(tag: Tag, n: i64) -> Scalar {
        Scalar::from_rational(tag, rat(n))
    }

    pub fn zero(tag: Tag) -> Scalar {
        Scalar::from_int(tag, 0)
    }

    pub fn one(tag: Tag) -> Scalar {
        Scalar::from_int(tag, 1)
    }

    /// The symbolic parameter `q` (in ℚ(q)).
    pub fn q() -> Scalar {
        Scalar::Q(QFrac::from_poly(Poly::var()))
    }

    /// `q^e` for any integer exponent, in ℚ(q).
    pub fn q_pow(e: i64) -> Scalar {
        let m = QPoly::monomial(Rational::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Scalar::Q(QFrac::from_poly(m))
        } else {
            Scalar::Q(QFrac::new(Poly::one(), m).unwrap())
        }
    }

    /// The symbolic `p` of ℚ(p,q).
    pub fn pq_p() -> Scalar {
        Scalar::PQ(PQFrac::from_poly(Poly::var()))
    }

    /// The symbolic `q` of ℚ(p,q).
    pub fn pq_q() -> Scalar {
        Scalar::PQ(PQFrac::from_poly(Poly::constant(Poly::var())))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Q(f) => f.is_zero(),
            Scalar::PQ(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Q(f) => f.is_one(),
            Scalar::PQ(f) => f.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::TagMismatch(self.tag().name(), other.tag().name())
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::PQ(a), Scalar::PQ(b)) => Scalar::PQ(a.add(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.sub(b)),
            (Scalar::PQ(a), Scalar::PQ(b)) => Scalar::PQ(a.sub(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::PQ(a), Scalar::PQ(b)) => Scalar::PQ(a.mul(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.tag() != rhs.tag() {
            return Err(self.mismatch(rhs));
        }
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a / b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.div(b).unwrap()),
            (Scalar::PQ(a), Scalar::PQ(b)) => Scalar::PQ(a.div(b).unwrap()),
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one(self.tag()).checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(num_traits::pow(r.clone(), exp as usize)),
            Scalar::Q(f) => Scalar::Q(f.pow(exp)),
            Scalar::PQ(f) => Scalar::PQ(f.pow(exp)),
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a * r),
            Scalar::Q(f) => Scalar::Q(f.scale(r)),
            Scalar::PQ(f) => Scalar::PQ(f.scale(r)),
        }
    }

    /// Substitutes `q = at` in a ℚ(q) value. Rationals pass through.
    pub fn eval_q(&self, at: &Rational) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.clone())),
            Scalar::Q(f) => f.eval(at).map(Scalar::Rat).ok_or(Error::DivisionByZero),
            Scalar::PQ(_) => Err(Error::TagMismatch("pq", "q")),
        }
    }

    /// Substitutes `p = p0, q = q0` in a ℚ(p,q) value.
    pub fn eval_pq(&self, p0: &Rational, q0: &Rational) -> Result<Scalar> {
        match self {
            Scalar::PQ(f) => {
                let at = |poly: &PQPoly| {
                    let inner: QPoly = Poly::from_coeffs(poly.coeffs().iter().map(|c| c.eval(q0)).collect());
                    inner.eval(p0)
                };
                let d = at(f.den());
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rat(at(f.num()) / d))
            }
            other => Err(Error::TagMismatch(other.tag().name(), "pq")),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar tags must agree")
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar tags must agree")
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar tags must agree")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Q(f) => Scalar::Q(f.neg()),
            Scalar::PQ(f) => Scalar::PQ(f.neg()),
        }
    }
}

macro_rules! scalar_by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
scalar_by_value!(Add, add);
scalar_by_value!(Sub, sub);
scalar_by_value!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Q(r) => f.write_str(&r.render("q")),
            Scalar::PQ(r) => f.write_str(&render_pq(r)),
        }
    }
}

fn render_pq(f: &PQFrac) -> String {
    let poly = |p: &PQPoly| -> String {
        let mut terms = Vec::new();
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let inner = c.render("q");
            let pp = match i {
                0 => String::new(),
                1 => "p".to_string(),
                _ => format!("p^{i}"),
            };
            terms.push(match (inner.as_str(), i) {
                (_, 0) => inner.clone(),
                ("1", _) => pp,
                _ if inner.contains(' ') => format!("({inner}){pp}"),
                _ => format!("{inner}{pp}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    };
    if f.is_polynomial() {
        poly(f.num())
    } else {
        format!("({})/({})", poly(f.num()), poly(f.den()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
