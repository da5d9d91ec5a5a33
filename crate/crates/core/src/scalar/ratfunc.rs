use std::fmt;

use num_traits::{One, Zero};

use super::poly::{GcdDomain, Poly};
use super::rational::Rational;

/// A reduced fraction of polynomials: `gcd(num, den) = 1` and `den` has
/// normal (for ℚ[q]: monic) leading coefficient, so equal values compare
/// equal structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: GcdDomain> RatFunc<C> {
    /// `None` when the denominator is zero.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        if den.degree() == Some(0) {
            let u = den.coeffs()[0].clone();
            let inv_unit = u.normal_unit().recip();
            let den = den.scale(&inv_unit);
            if den.is_one() {
                return Some(RatFunc { num: num.scale(&inv_unit), den });
            }
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let u = den.normal_unit();
        if !u.is_one() {
            let inv = u.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Some(RatFunc { num, den })
    }

    pub fn from_poly(num: Poly<C>) -> Self {
        RatFunc { num, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        // Henrici: with g = gcd(b, d), only g can share factors with the
        // new numerator
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return Self::from_reduced(num, &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = t.gcd(&g);
        let num = t.div_exact(&g2).expect("gcd divides");
        let den = &b * &rhs.den.div_exact(&g2).expect("gcd divides");
        Self::from_reduced(num, den)
    }

    /// For an already coprime pair; only normalizes the denominator.
    fn from_reduced(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let u = den.normal_unit();
        if u.is_one() {
            RatFunc { num, den }
        } else {
            let inv = u.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Self::from_reduced(&n1 * &n2, &d1 * &d2)
    }

    /// `None` on division by zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self.mul(&rhs.inv()?))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(r), den: self.den.clone() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        RatFunc { num: self.num.pow(exp), den: self.den.pow(exp) }
    }

    /// Evaluates at `at`; `None` if the denominator vanishes there.
    pub fn eval(&self, at: &C) -> Option<C> {
        let d = self.den.eval(at);
        let n = self.num.eval(at);
        if d.is_zero() {
            return None;
        }
        n.div_exact(&d)
    }
}

impl<C: GcdDomain + fmt::Display> RatFunc<C> {
    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let wrap = |p: &Poly<C>| {
            let s = p.render(var);
            if s.contains(' ') || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<C: fmt::Debug> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::from_coeffs(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn cancellation_to_polynomial() {
        // (1 - q^2) / (1 - q) = 1 + q
        let f = RatFunc::new(qp(&[1, 0, -1]), qp(&[1, -1])).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &qp(&[1, 1]));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = RatFunc::new(qp(&[2]), qp(&[4, 2])).unwrap();
        assert_eq!(f.den(), &qp(&[2, 1]));
        assert_eq!(f.num(), &qp(&[1]));
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(qp(&[0, 1]), qp(&[1, -1])).unwrap(); // q/(1-q)
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
        assert!(a.sub(&a).is_zero());
        assert!(RatFunc::<Rational>::zero().inv().is_none());
        assert_eq!(a.eval(&rat(2)), Some(rat(-2)));
        assert_eq!(a.eval(&rat(1)), None);
    }
}
