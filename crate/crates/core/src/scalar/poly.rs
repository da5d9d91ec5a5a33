//! Dense univariate polynomials over a tag-free coefficient ring.
//!
//! `Poly<Rational>` is ℚ[q]; `Poly<Poly<Rational>>` is ℚ[q][p], the
//! recursive representation used for two-parameter sequences. Both are
//! GCD domains, which is all the rational-function layer needs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

pub trait Ring:
    Clone + Eq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn scale(&self, r: &Rational) -> Self;
}

/// A ring with exact division and unit-normal GCDs. Units are the nonzero
/// rationals; `normal_unit` picks the one that makes a value canonical.
pub trait GcdDomain: Ring {
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn normal_unit(&self) -> Rational;
}

impl Ring for Rational {
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl GcdDomain for Rational {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            Rational::zero()
        } else {
            Rational::one()
        }
    }

    fn normal_unit(&self) -> Rational {
        if self.is_zero() {
            Rational::one()
        } else {
            self.clone()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn shift(&self, by: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Pseudo-remainder: `lead(d)^(deg a - deg d + 1) · a  mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let (Some(dd), Some(dl)) = (d.degree(), d.lead().cloned()) else {
            panic!("pseudo-remainder by zero polynomial");
        };
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let rl = r.lead().cloned().unwrap();
            r = &r.mul_coeff(&dl) - &d.mul_coeff(&rl).shift(dr - dd);
        }
        r
    }
}

impl<C: GcdDomain> Poly<C> {
    /// Divides by the normal unit of the leading coefficient.
    pub fn normalized(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let u = l.normal_unit();
                if u.is_one() {
                    self.clone()
                } else {
                    self.scale(&u.recip())
                }
            }
        }
    }

    pub fn content(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self::from_coeffs(
            self.coeffs.iter().map(|a| a.div_exact(&c).expect("content divides every coefficient")).collect(),
        )
    }
}

impl<C: GcdDomain> GcdDomain for Poly<C> {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let dl = divisor.lead()?;
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Some(Self::zero());
        };
        if dr < dd {
            return None;
        }
        let mut quotient = vec![C::zero(); dr - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let c = r.lead()?.div_exact(dl)?;
            r = &r - &divisor.mul_coeff(&c).shift(dr - dd);
            if r.degree() == Some(dr) {
                return None;
            }
            quotient[dr - dd] = c;
        }
        Some(Self::from_coeffs(quotient))
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part().normalized();
        }
        a.primitive_part().mul_coeff(&content).normalized()
    }

    fn normal_unit(&self) -> Rational {
        self.lead().map_or_else(Rational::one, |l| l.normal_unit())
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn scale(&self, r: &Rational) -> Self {
        Poly::scale(self, r)
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }
}

impl<C: Ring> Add<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Sub<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;

    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Mul<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<C: Ring> Neg for &Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<C: Ring> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl<C: Ring> Neg for Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Ring + fmt::Display> Poly<C> {
    /// Human-readable rendering in ascending powers of `var`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = text.contains([' ', '+']) || text[1..].contains('-');
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let body = if compound { format!("({body})") } else { body };
            let term = match i {
                0 => body,
                _ => {
                    let power = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if body == "1" {
                        power
                    } else {
                        format!("{body}{power}")
                    }
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}
