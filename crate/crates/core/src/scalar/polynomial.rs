use std::fmt;

use super::value::{Scalar, Tag};
use crate::error::{Error, Result};

/// Dense polynomial in `x` with [`Scalar`] coefficients of a single tag.
/// Index `i` holds the coefficient of `x^i`; the highest stored coefficient
/// is nonzero and the zero polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    tag: Tag,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(tag: Tag, mut coeffs: Vec<Scalar>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.tag() != tag) {
            return Err(Error::TagMismatch(tag.name(), c.tag().name()));
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(Polynomial { tag, coeffs })
    }

    fn raw(tag: Tag, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { tag, coeffs }
    }

    pub fn zero(tag: Tag) -> Self {
        Polynomial { tag, coeffs: Vec::new() }
    }

    pub fn one(tag: Tag) -> Self {
        Self::constant(Scalar::one(tag))
    }

    pub fn constant(c: Scalar) -> Self {
        let tag = c.tag();
        Self::raw(tag, vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let tag = c.tag();
        let mut coeffs = vec![Scalar::zero(tag); k];
        coeffs.push(c);
        Self::raw(tag, coeffs)
    }

    /// `e_n(x) = x^n`.
    pub fn power(tag: Tag, n: usize) -> Self {
        Self::monomial(Scalar::one(tag), n)
    }

    pub fn from_ints(tag: Tag, coeffs: &[i64]) -> Self {
        Self::raw(tag, coeffs.iter().map(|&c| Scalar::from_int(tag, c)).collect())
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.tag))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag.name(), other.tag.name()));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Self::raw(self.tag, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect()))
    }

    pub fn checked_sub(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Self::raw(self.tag, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect()))
    }

    pub fn checked_mul(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.tag));
        }
        let mut out = vec![Scalar::zero(self.tag); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::raw(self.tag, out))
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial tags must agree")
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial tags must agree")
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial tags must agree")
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Self::raw(self.tag, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `(x - root)`.
    pub fn mul_linear(&self, root: &Scalar) -> Polynomial {
        let mut out = vec![Scalar::zero(self.tag); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + 1] = &out[i + 1] + a;
            out[i] = &out[i] - &(a * root);
        }
        Self::raw(self.tag, out)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(self.tag); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { tag: self.tag, coeffs }
    }

    pub fn eval(&self, at: &Scalar) -> Result<Scalar> {
        if at.tag() != self.tag {
            return Err(Error::TagMismatch(self.tag.name(), at.tag().name()));
        }
        Ok(self.coeffs.iter().rev().fold(Scalar::zero(self.tag), |acc, c| &(&acc * at) + c))
    }

    /// Applies `f` to every coefficient, producing a polynomial of tag `tag`.
    pub fn try_map(&self, tag: Tag, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Polynomial> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Polynomial::new(tag, coeffs)
    }

    /// Substitutes a numeric `q` into every coefficient.
    pub fn eval_q(&self, q0: &super::rational::Rational) -> Result<Polynomial> {
        self.try_map(Tag::Rational, |c| c.eval_q(q0))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let text = c.to_string();
            let text = if i > 0 && text.contains(' ') { format!("({text})") } else { text };
            match (i, text.as_str()) {
                (0, _) => f.write_str(&text)?,
                (1, "1") => f.write_str("x")?,
                (1, _) => write!(f, "{text}*x")?,
                (_, "1") => write!(f, "x^{i}")?,
                _ => write!(f, "{text}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.tag.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_over_q() {
        let x = Polynomial::power(Tag::Q, 1);
        let p = x.mul_linear(&Scalar::one(Tag::Q));
        assert_eq!(p, Polynomial::from_ints(Tag::Q, &[0, -1, 1]));
        let sq = p.mul(&p);
        assert_eq!(sq, Polynomial::from_ints(Tag::Q, &[0, 0, 1, -2, 1]));
        assert_eq!(sq.eval(&Scalar::from_int(Tag::Q, 2)).unwrap(), Scalar::from_int(Tag::Q, 4));
    }

    #[test]
    fn tag_mismatch_reported() {
        let a = Polynomial::one(Tag::Q);
        let b = Polynomial::one(Tag::Rational);
        assert!(a.checked_add(&b).is_err());
        assert!(Polynomial::new(Tag::Q, vec![Scalar::one(Tag::Rational)]).is_err());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Polynomial::from_ints(Tag::Rational, &[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::from_ints(Tag::Rational, &[0, 0]).degree(), None);
    }
}
