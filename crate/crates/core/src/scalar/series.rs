use super::polynomial::Polynomial;
use super::rational::rat;
use super::value::{Scalar, Tag};
use crate::error::{Error, Result};

/// A power series known exactly through `x^order`. Binary operations work at
/// the smaller of the two orders and the result records it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    tag: Tag,
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients
    /// are stored.
    pub fn new(tag: Tag, mut coeffs: Vec<Scalar>, order: usize) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.tag() != tag) {
            return Err(Error::TagMismatch(tag.name(), c.tag().name()));
        }
        coeffs.resize(order + 1, Scalar::zero(tag));
        Ok(TruncatedSeries { tag, coeffs })
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        let coeffs = (0..=order).map(|i| p.coeff(i)).collect();
        TruncatedSeries { tag: p.tag(), coeffs }
    }

    pub fn one(tag: Tag, order: usize) -> Self {
        Self::from_polynomial(&Polynomial::one(tag), order)
    }

    /// `Σ x^n / n!` through `order`.
    pub fn classical_exp(tag: Tag, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = Scalar::one(tag);
        for n in 0..=order {
            if n > 0 {
                c = c.scale(&rat(n as i64).recip());
            }
            coeffs.push(c.clone());
        }
        TruncatedSeries { tag, coeffs }
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.tag))
    }

    fn check(&self, other: &TruncatedSeries) -> Result<usize> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag.name(), other.tag.name()));
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.check(rhs)?;
        let coeffs = (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect();
        Ok(TruncatedSeries { tag: self.tag, coeffs })
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.check(rhs)?;
        let coeffs = (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect();
        Ok(TruncatedSeries { tag: self.tag, coeffs })
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        TruncatedSeries { tag: self.tag, coeffs }
    }

    /// Cauchy product through the smaller order.
    pub fn mul(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.check(rhs)?;
        let mut coeffs = vec![Scalar::zero(self.tag); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(TruncatedSeries { tag: self.tag, coeffs })
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let a0 = &self.coeffs[0];
        let inv0 = a0.inv().map_err(|_| Error::NonInvertibleConstantTerm)?;
        let mut out: Vec<Scalar> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let mut acc = Scalar::zero(self.tag);
            for k in 1..=n {
                acc = &acc + &(&self.coeffs[k] * &out[n - k]);
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(TruncatedSeries { tag: self.tag, coeffs: out })
    }

    /// `exp(a)` for `a(0) = 0`, via `n b_n = Σ_{k=1}^{n} k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out: Vec<Scalar> = vec![Scalar::one(self.tag)];
        for n in 1..=self.order() {
            let mut acc = Scalar::zero(self.tag);
            for k in 1..=n {
                acc = &acc + &(&self.coeffs[k] * &out[n - k]).scale(&rat(k as i64));
            }
            out.push(acc.scale(&rat(n as i64).recip()));
        }
        Ok(TruncatedSeries { tag: self.tag, coeffs: out })
    }

    /// Drops everything above `order`.
    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        let order = order.min(self.order());
        TruncatedSeries { tag: self.tag, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(self.tag, self.coeffs.clone()).expect("uniform tag")
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

pub fn series_inverse(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.inverse()
}

pub fn series_exp(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.exp()
}
