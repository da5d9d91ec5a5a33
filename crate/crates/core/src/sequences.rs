//! Admissible sequences `n ↦ n_ψ` and the primitives built on them.
//!
//! Every sequence uses the conventions `0_ψ = 0` and `0_ψ! = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{
    parse_rational, rat, Poly, Polynomial, QFrac, QPoly, Rational, Scalar, Tag, TruncatedSeries,
};

/// Horizon used to probe capability flags.
pub const N_PROBE: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqKind {
    Classical,
    QGaussSymbolic,
    QGaussNumeric(Rational),
    /// Fibonacci numbers with `F_1 = F_2 = 1`.
    Fibonomial,
    /// `(p^n − q^n)/(p − q)`, symbolic in both parameters.
    PQWachsWhite,
    FermionicF,
    /// `(1 − (−q)^n)/(1 + q)`; `None` keeps `q` symbolic.
    QFermion(Option<Rational>),
    /// `n^{L+1}`.
    HyperL(u32),
    /// Defined through `n_γ! = (q^n − 1)(q^n − q)…(q^n − q^{n−1})`.
    GammaGL(Option<Rational>),
    /// Explicit values; entry `i` is `i_ψ`.
    Custom(Vec<Scalar>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CapabilityFlags {
    pub distinct_nodes: bool,
    pub invertible_factorials: bool,
    pub numeric_convergent: bool,
}

/// An admissible sequence together with its probed capabilities.
#[derive(Clone, Debug)]
pub struct PsiSequence {
    kind: SeqKind,
    tag: Tag,
    flags: CapabilityFlags,
    // values 0..=N_PROBE (or the whole custom list), filled at construction
    cache: Vec<Scalar>,
}

impl PartialEq for PsiSequence {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for PsiSequence {}

fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

fn q_poly(coeffs: Vec<Rational>) -> Scalar {
    Scalar::Q(QFrac::from_poly(QPoly::from_coeffs(coeffs)))
}

/// `1 + q + … + q^{n−1}` evaluated at a rational `q`.
fn gauss_numeric(q: &Rational, n: usize) -> Rational {
    let mut acc = Rational::zero();
    let mut pw = Rational::one();
    for _ in 0..n {
        acc += &pw;
        pw *= q;
    }
    acc
}

fn raw_value(kind: &SeqKind, n: usize) -> Result<Scalar> {
    let r = |v: Rational| Scalar::Rat(v);
    Ok(match kind {
        SeqKind::Classical => r(rat(n as i64)),
        SeqKind::QGaussSymbolic => q_poly(vec![Rational::one(); n]),
        SeqKind::QGaussNumeric(q) => r(gauss_numeric(q, n)),
        SeqKind::Fibonomial => r(Rational::from_integer(fibonacci(n))),
        SeqKind::PQWachsWhite => {
            // Σ_{i<n} p^i q^{n−1−i}
            let coeffs = (0..n).map(|i| QPoly::monomial(Rational::one(), n - 1 - i)).collect::<Vec<_>>();
            Scalar::PQ(crate::scalar::PQFrac::from_poly(Poly::from_coeffs(coeffs)))
        }
        SeqKind::FermionicF => r(rat((n % 2) as i64)),
        SeqKind::QFermion(None) => {
            q_poly((0..n).map(|i| if i % 2 == 0 { rat(1) } else { rat(-1) }).collect())
        }
        SeqKind::QFermion(Some(q)) => r(gauss_numeric(&-q, n)),
        SeqKind::HyperL(l) => r(num_traits::pow(rat(n as i64), *l as usize + 1)),
        SeqKind::GammaGL(q) => {
            if n == 0 {
                return Ok(match q {
                    Some(_) => r(Rational::zero()),
                    None => Scalar::zero(Tag::Q),
                });
            }
            // n_γ!/(n−1)_γ! = q^{n−1}(q^n − 1)
            match q {
                Some(q) => {
                    let qn1 = num_traits::pow(q.clone(), n - 1);
                    r(&qn1 * (&qn1 * q - Rational::one()))
                }
                None => {
                    let mut coeffs = vec![Rational::zero(); 2 * n];
                    coeffs[n - 1] = rat(-1);
                    coeffs[2 * n - 1] = rat(1);
                    q_poly(coeffs)
                }
            }
        }
        SeqKind::Custom(values) => values.get(n).cloned().ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "custom sequence has {} values, index {n} requested",
                values.len()
            ))
        })?,
    })
}

impl PsiSequence {
    pub fn new(kind: SeqKind) -> Result<Self> {
        let tag = match &kind {
            SeqKind::QGaussSymbolic | SeqKind::QFermion(None) | SeqKind::GammaGL(None) => Tag::Q,
            SeqKind::PQWachsWhite => Tag::PQ,
            SeqKind::Custom(values) => {
                let first = values
                    .first()
                    .ok_or_else(|| Error::InvalidParameter("custom sequence is empty".into()))?;
                if let Some(v) = values.iter().find(|v| v.tag() != first.tag()) {
                    return Err(Error::TagMismatch(first.tag().name(), v.tag().name()));
                }
                first.tag()
            }
            _ => Tag::Rational,
        };
        if let SeqKind::HyperL(0) = kind {
            return Err(Error::InvalidParameter("hyperL needs L ≥ 1".into()));
        }
        let horizon = match &kind {
            SeqKind::Custom(values) => values.len() - 1,
            _ => N_PROBE,
        };
        let cache = (0..=horizon).map(|n| raw_value(&kind, n)).collect::<Result<Vec<_>>>()?;
        let distinct_nodes = (0..cache.len()).all(|i| (i + 1..cache.len()).all(|j| cache[i] != cache[j]));
        let invertible_factorials = cache.iter().skip(1).all(|v| !v.is_zero());
        let numeric_convergent = match &kind {
            SeqKind::Classical | SeqKind::Fibonomial | SeqKind::HyperL(_) => true,
            SeqKind::QGaussNumeric(q) => q.is_positive(),
            SeqKind::GammaGL(Some(q)) => *q > Rational::one(),
            _ => false,
        };
        let flags = CapabilityFlags { distinct_nodes, invertible_factorials, numeric_convergent };
        Ok(PsiSequence { kind, tag, flags, cache })
    }

    pub fn classical() -> Self {
        Self::new(SeqKind::Classical).expect("built-in sequence")
    }

    pub fn q_symbolic() -> Self {
        Self::new(SeqKind::QGaussSymbolic).expect("built-in sequence")
    }

    pub fn q_numeric(q: Rational) -> Self {
        Self::new(SeqKind::QGaussNumeric(q)).expect("built-in sequence")
    }

    pub fn fibonomial() -> Self {
        Self::new(SeqKind::Fibonomial).expect("built-in sequence")
    }

    pub fn hyper(l: u32) -> Result<Self> {
        Self::new(SeqKind::HyperL(l))
    }

    /// Builds a custom sequence from rationals, entry `i` being `i_ψ`.
    pub fn custom(values: Vec<Rational>) -> Result<Self> {
        Self::new(SeqKind::Custom(values.into_iter().map(Scalar::Rat).collect()))
    }

    /// Parses the textual forms `classical`, `q`, `q=1/2`, `fib`, `pq`,
    /// `fermF`, `qferm`, `qferm=1/3`, `hyperL=2`, `gammaGL`, `gammaGL@q=2`
    /// and `custom:[0,1,1,2]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let bad = || Error::Parse(format!("unknown sequence '{spec}'"));
        let kind = match s {
            "classical" => SeqKind::Classical,
            "q" => SeqKind::QGaussSymbolic,
            "fib" | "fibonomial" => SeqKind::Fibonomial,
            "pq" => SeqKind::PQWachsWhite,
            "fermF" => SeqKind::FermionicF,
            "qferm" => SeqKind::QFermion(None),
            "gammaGL" => SeqKind::GammaGL(None),
            _ => {
                if let Some(v) = s.strip_prefix("q=") {
                    SeqKind::QGaussNumeric(parse_rational(v)?)
                } else if let Some(v) = s.strip_prefix("qferm=") {
                    SeqKind::QFermion(Some(parse_rational(v)?))
                } else if let Some(v) = s.strip_prefix("hyperL=") {
                    SeqKind::HyperL(v.parse().map_err(|_| bad())?)
                } else if let Some(v) = s.strip_prefix("gammaGL@q=").or_else(|| s.strip_prefix("gammaGL=")) {
                    SeqKind::GammaGL(Some(parse_rational(v)?))
                } else if let Some(v) = s.strip_prefix("custom:") {
                    let inner =
                        v.trim().strip_prefix('[').and_then(|v| v.strip_suffix(']')).ok_or_else(bad)?;
                    let values = inner
                        .split(',')
                        .map(|t| parse_rational(t.trim()).map(Scalar::Rat))
                        .collect::<Result<Vec<_>>>()?;
                    SeqKind::Custom(values)
                } else {
                    return Err(bad());
                }
            }
        };
        Self::new(kind)
    }

    pub fn kind(&self) -> &SeqKind {
        &self.kind
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn flags(&self) -> CapabilityFlags {
        self.flags
    }

    /// True for the Gauss `q`-sequences, symbolic or numeric.
    pub fn is_q_family(&self) -> bool {
        matches!(self.kind, SeqKind::QGaussSymbolic | SeqKind::QGaussNumeric(_))
    }

    /// Canonical spec string; `PsiSequence::parse` reads it back.
    pub fn name(&self) -> String {
        match &self.kind {
            SeqKind::Classical => "classical".into(),
            SeqKind::QGaussSymbolic => "q".into(),
            SeqKind::QGaussNumeric(q) => format!("q={q}"),
            SeqKind::Fibonomial => "fib".into(),
            SeqKind::PQWachsWhite => "pq".into(),
            SeqKind::FermionicF => "fermF".into(),
            SeqKind::QFermion(None) => "qferm".into(),
            SeqKind::QFermion(Some(q)) => format!("qferm={q}"),
            SeqKind::HyperL(l) => format!("hyperL={l}"),
            SeqKind::GammaGL(None) => "gammaGL".into(),
            SeqKind::GammaGL(Some(q)) => format!("gammaGL@q={q}"),
            SeqKind::Custom(values) => {
                let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                format!("custom:[{}]", items.join(","))
            }
        }
    }

    /// The numeric specialization of a symbolic `q`-sequence, if any.
    pub fn at_q(&self, q: Rational) -> Option<PsiSequence> {
        let kind = match self.kind {
            SeqKind::QGaussSymbolic => SeqKind::QGaussNumeric(q),
            SeqKind::QFermion(None) => SeqKind::QFermion(Some(q)),
            SeqKind::GammaGL(None) => SeqKind::GammaGL(Some(q)),
            _ => return None,
        };
        PsiSequence::new(kind).ok()
    }

    /// `n_ψ`.
    pub fn value(&self, n: usize) -> Result<Scalar> {
        match self.cache.get(n) {
            Some(v) => Ok(v.clone()),
            None => raw_value(&self.kind, n),
        }
    }

    /// `0_ψ, 1_ψ, …, k_ψ`.
    pub fn nodes(&self, k: usize) -> Result<Vec<Scalar>> {
        (0..=k).map(|i| self.value(i)).collect()
    }

    /// Errors with `ZeroFactorial(i)` for the first `1 ≤ i ≤ n` with `i_ψ = 0`.
    pub fn require_invertible(&self, n: usize) -> Result<()> {
        for i in 1..=n {
            if self.value(i)?.is_zero() {
                return Err(Error::ZeroFactorial(i));
            }
        }
        Ok(())
    }

    /// Errors with `RepeatedNodes` if two of `0_ψ, …, k_ψ` coincide.
    pub fn require_distinct(&self, k: usize) -> Result<()> {
        let nodes = self.nodes(k)?;
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::RepeatedNodes(i, j));
                }
            }
        }
        Ok(())
    }

    /// Errors with `NotConvergent` unless numeric series over this sequence converge.
    pub fn require_convergent(&self) -> Result<()> {
        if self.flags.numeric_convergent {
            Ok(())
        } else {
            Err(Error::NotConvergent(self.name()))
        }
    }
}

impl fmt::Display for PsiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn psi_value(seq: &PsiSequence, n: usize) -> Result<Scalar> {
    seq.value(n)
}

/// `n_ψ! = 1_ψ ⋯ n_ψ`, with `0_ψ! = 1`.
pub fn psi_factorial(seq: &PsiSequence, n: usize) -> Result<Scalar> {
    let mut acc = Scalar::one(seq.tag());
    for i in 1..=n {
        acc = &acc * &seq.value(i)?;
    }
    Ok(acc)
}

/// `n_ψ! / (k_ψ! (n−k)_ψ!)`.
pub fn psi_binomial(seq: &PsiSequence, n: usize, k: usize) -> Result<Scalar> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("binomial ({n}, {k}) needs k ≤ n")));
    }
    seq.require_invertible(n)?;
    // product of the top k factors over k_ψ!
    let mut num = Scalar::one(seq.tag());
    let mut den = Scalar::one(seq.tag());
    for i in 0..k.min(n - k) {
        num = &num * &seq.value(n - i)?;
        den = &den * &seq.value(i + 1)?;
    }
    num.checked_div(&den)
}

/// Rows `0..=n_max` of the ψ-binomial triangle. The `q`-sequences use the
/// Pascal rule `binom(m,j) = binom(m−1,j−1) + q^j binom(m−1,j)`; other
/// sequences step along each row by `(m−j+1)_ψ / j_ψ`.
pub fn psi_binomial_rows(seq: &PsiSequence, n_max: usize) -> Result<Vec<Vec<Scalar>>> {
    seq.require_invertible(n_max)?;
    let one = Scalar::one(seq.tag());
    let mut rows: Vec<Vec<Scalar>> = vec![vec![one.clone()]];
    if seq.is_q_family() {
        for m in 1..=n_max {
            let prev = &rows[m - 1];
            let mut row = vec![one.clone(); m + 1];
            let mut q_pow = one.clone();
            for j in 1..m {
                q_pow = &q_pow * &(&seq.value(2)? - &one);
                row[j] = &prev[j - 1] + &(&q_pow * &prev[j]);
            }
            rows.push(row);
        }
    } else {
        for m in 1..=n_max {
            let mut row = vec![one.clone()];
            for j in 1..=m {
                let next = (&row[j - 1] * &seq.value(m - j + 1)?).checked_div(&seq.value(j)?)?;
                row.push(next);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// `x (x − 1_ψ) ⋯ (x − (k−1)_ψ)`.
pub fn falling_node_poly(seq: &PsiSequence, k: usize) -> Result<Polynomial> {
    let mut p = Polynomial::one(seq.tag());
    for i in 0..k {
        p = p.mul_linear(&seq.value(i)?);
    }
    Ok(p)
}

/// `x (x + 1_ψ) ⋯ (x + (k−1)_ψ)`.
pub fn rising_node_poly(seq: &PsiSequence, k: usize) -> Result<Polynomial> {
    let mut p = Polynomial::one(seq.tag());
    for i in 0..k {
        p = p.mul_linear(&-&seq.value(i)?);
    }
    Ok(p)
}

/// `N_ψ (N−1)_ψ ⋯ (N−k+1)_ψ`; zero once the factor `0_ψ` is reached.
pub fn psi_falling_power(seq: &PsiSequence, big_n: usize, k: usize) -> Result<Scalar> {
    if k > big_n {
        return Ok(Scalar::zero(seq.tag()));
    }
    let mut acc = Scalar::one(seq.tag());
    for i in 0..k {
        acc = &acc * &seq.value(big_n - i)?;
    }
    Ok(acc)
}

/// The linear map `y^n ↦ n_ψ y^{n−1}`.
pub fn psi_derivative(p: &Polynomial, seq: &PsiSequence) -> Result<Polynomial> {
    if p.tag() != seq.tag() {
        return Err(Error::TagMismatch(p.tag().name(), seq.tag().name()));
    }
    let coeffs =
        (1..p.coeffs().len()).map(|n| Ok(&p.coeffs()[n] * &seq.value(n)?)).collect::<Result<Vec<_>>>()?;
    Polynomial::new(seq.tag(), coeffs)
}

/// `Σ_{n ≤ order} x^n / n_ψ!`.
pub fn exp_psi_series(seq: &PsiSequence, order: usize) -> Result<TruncatedSeries> {
    seq.require_invertible(order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = Scalar::one(seq.tag());
    for n in 0..=order {
        if n > 0 {
            fact = &fact * &seq.value(n)?;
        }
        coeffs.push(fact.inv()?);
    }
    TruncatedSeries::new(seq.tag(), coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{binomial, factorial, ratio};

    fn qp(coeffs: &[i64]) -> Scalar {
        q_poly(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn values_of_builtin_kinds() {
        assert_eq!(psi_value(&PsiSequence::q_symbolic(), 3).unwrap(), qp(&[1, 1, 1]));
        assert_eq!(psi_value(&PsiSequence::fibonomial(), 5).unwrap(), Scalar::Rat(rat(5)));
        let ferm = PsiSequence::parse("fermF").unwrap();
        assert!(psi_value(&ferm, 4).unwrap().is_zero());
        let qferm = PsiSequence::parse("qferm").unwrap();
        assert_eq!(psi_value(&qferm, 3).unwrap(), qp(&[1, -1, 1]));
        let pq = PsiSequence::parse("pq").unwrap();
        let p = Scalar::pq_p();
        let q = Scalar::pq_q();
        let expected = (&p.pow(3) - &q.pow(3)).checked_div(&(&p - &q)).unwrap();
        assert_eq!(psi_value(&pq, 3).unwrap(), expected);
    }

    #[test]
    fn zero_and_one() {
        for spec in ["classical", "q", "q=1/2", "fib", "pq", "fermF", "qferm", "hyperL=2", "gammaGL@q=2"] {
            let seq = PsiSequence::parse(spec).unwrap();
            assert!(seq.value(0).unwrap().is_zero(), "{spec}");
            assert!(seq.value(1).unwrap().is_one(), "{spec}");
        }
        // symbolic GL sequence starts at q − 1
        let gl = PsiSequence::parse("gammaGL").unwrap();
        assert_eq!(gl.value(1).unwrap(), qp(&[-1, 1]));
    }

    #[test]
    fn gamma_values_are_factorial_ratios() {
        // oracle: n_γ! = ∏_{i<n} (q^n − q^i)
        let gl_factorial = |n: usize| -> Scalar {
            let mut acc = Scalar::one(Tag::Q);
            for i in 0..n {
                acc = &acc * &(&Scalar::q_pow(n as i64) - &Scalar::q_pow(i as i64));
            }
            acc
        };
        let gl = PsiSequence::parse("gammaGL").unwrap();
        for n in 1..=6 {
            let ratio = gl_factorial(n).checked_div(&gl_factorial(n - 1)).unwrap();
            assert_eq!(gl.value(n).unwrap(), ratio, "n = {n}");
            assert_eq!(psi_factorial(&gl, n).unwrap(), gl_factorial(n));
        }
        let gl2 = PsiSequence::parse("gammaGL@q=2").unwrap();
        assert_eq!(psi_factorial(&gl2, 2).unwrap(), Scalar::Rat(rat(6)));
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(psi_factorial(&PsiSequence::classical(), 4).unwrap(), Scalar::Rat(rat(24)));
        let q = PsiSequence::q_symbolic();
        let expected = &(&qp(&[1]) * &qp(&[1, 1])) * &qp(&[1, 1, 1]);
        assert_eq!(psi_factorial(&q, 3).unwrap(), expected);
        assert_eq!(psi_binomial(&q, 2, 1).unwrap(), qp(&[1, 1]));
        assert!(psi_binomial(&q, 5, 0).unwrap().is_one());
        // F_4!/(F_2! F_2!) = 6/1
        assert_eq!(psi_binomial(&PsiSequence::fibonomial(), 4, 2).unwrap(), Scalar::Rat(rat(6)));
        let ferm = PsiSequence::parse("fermF").unwrap();
        assert_eq!(psi_binomial(&ferm, 3, 1), Err(Error::ZeroFactorial(2)));
        assert!(matches!(psi_binomial(&q, 1, 2), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn classical_matches_textbook() {
        let c = PsiSequence::classical();
        for n in 0..=12 {
            assert_eq!(psi_factorial(&c, n).unwrap(), Scalar::Rat(factorial(n)));
            for k in 0..=n {
                assert_eq!(psi_binomial(&c, n, k).unwrap(), Scalar::Rat(binomial(n, k)));
                let falling: Rational = (0..k).map(|i| rat((n - i) as i64)).product();
                assert_eq!(psi_falling_power(&c, n, k).unwrap(), Scalar::Rat(falling));
            }
        }
    }

    #[test]
    fn node_polynomials() {
        let c = PsiSequence::classical();
        assert_eq!(falling_node_poly(&c, 3).unwrap(), Polynomial::from_ints(Tag::Rational, &[0, 2, -3, 1]));
        assert_eq!(
            falling_node_poly(&PsiSequence::q_symbolic(), 2).unwrap(),
            Polynomial::from_ints(Tag::Q, &[0, -1, 1])
        );
        assert_eq!(
            falling_node_poly(&PsiSequence::fibonomial(), 3).unwrap(),
            Polynomial::from_ints(Tag::Rational, &[0, 1, -2, 1])
        );
        assert_eq!(rising_node_poly(&c, 2).unwrap(), Polynomial::from_ints(Tag::Rational, &[0, 1, 1]));
        assert_eq!(rising_node_poly(&c, 0).unwrap(), Polynomial::one(Tag::Rational));
    }

    #[test]
    fn falling_powers() {
        assert_eq!(psi_falling_power(&PsiSequence::classical(), 5, 2).unwrap(), Scalar::Rat(rat(20)));
        assert_eq!(psi_falling_power(&PsiSequence::fibonomial(), 3, 2).unwrap(), Scalar::Rat(rat(2)));
        assert!(psi_falling_power(&PsiSequence::fibonomial(), 3, 4).unwrap().is_zero());
    }

    #[test]
    fn derivative() {
        let q = PsiSequence::q_symbolic();
        let d = psi_derivative(&Polynomial::power(Tag::Q, 3), &q).unwrap();
        assert_eq!(d, Polynomial::monomial(qp(&[1, 1, 1]), 2));
        assert!(psi_derivative(&Polynomial::one(Tag::Q), &q).unwrap().is_zero());
        let c = PsiSequence::classical();
        let d = psi_derivative(&Polynomial::power(Tag::Rational, 4), &c).unwrap();
        assert_eq!(d, Polynomial::monomial(Scalar::Rat(rat(4)), 3));
    }

    #[test]
    fn exponential_series() {
        let e = exp_psi_series(&PsiSequence::fibonomial(), 4).unwrap();
        let expected: Vec<Scalar> =
            [(1, 1), (1, 1), (1, 1), (1, 2), (1, 6)].iter().map(|&(n, d)| Scalar::Rat(ratio(n, d))).collect();
        assert_eq!(e.coeffs(), expected.as_slice());
        let e = exp_psi_series(&PsiSequence::q_numeric(ratio(1, 2)), 2).unwrap();
        assert_eq!(e.coeff(2), Scalar::Rat(ratio(2, 3)));
        assert_eq!(exp_psi_series(&PsiSequence::parse("fermF").unwrap(), 3), Err(Error::ZeroFactorial(2)));
    }

    #[test]
    fn capability_flags() {
        let fib = PsiSequence::fibonomial().flags();
        assert!(!fib.distinct_nodes && fib.invertible_factorials && fib.numeric_convergent);
        let ferm = PsiSequence::parse("fermF").unwrap().flags();
        assert!(!ferm.distinct_nodes && !ferm.invertible_factorials);
        let q = PsiSequence::q_symbolic().flags();
        assert!(q.distinct_nodes && q.invertible_factorials && !q.numeric_convergent);
        assert!(PsiSequence::q_numeric(ratio(1, 2)).flags().numeric_convergent);
        assert!(!PsiSequence::q_numeric(ratio(-1, 2)).flags().numeric_convergent);
    }

    #[test]
    fn spec_strings_round_trip() {
        for spec in [
            "classical",
            "q",
            "q=1/2",
            "fib",
            "pq",
            "fermF",
            "qferm",
            "qferm=1/3",
            "hyperL=2",
            "gammaGL",
            "gammaGL@q=2",
            "custom:[0,1,3,5]",
        ] {
            let seq = PsiSequence::parse(spec).unwrap();
            assert_eq!(seq.name(), spec);
            assert_eq!(PsiSequence::parse(&seq.name()).unwrap(), seq);
        }
        assert!(PsiSequence::parse("banana").is_err());
        assert!(PsiSequence::parse("hyperL=0").is_err());
        let custom = PsiSequence::parse("custom:[0,1,3]").unwrap();
        assert!(matches!(custom.value(3), Err(Error::IndexOutOfRange(_))));
    }
}
