//! Newton–Stirling numbers at equidistant and scaled nodes: generalized
//! Stirling numbers `S_{r,s}(n,k)`, the Abel–Goncharov `d_{n,k}`, and the
//! Dobinski-type series they satisfy.

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};
use crate::scalar::{
    binomial, divided_difference, factorial, polynomial_to_json, rat, rat_pow, ratio, to_decimal, Polynomial,
    Rational, Scalar, Tag,
};
use crate::sequences::PsiSequence;
use crate::stirling::nwc_second_table;

/// Default agreement tolerance for the numeric Dobinski check.
pub fn default_tolerance() -> Rational {
    ratio(1, 1_000_000_000)
}

fn require_rational(b: &Polynomial) -> Result<()> {
    if b.tag() != Tag::Rational {
        return Err(Error::TagMismatch(Tag::Rational.name(), b.tag().name()));
    }
    Ok(())
}

fn eval_rat(b: &Polynomial, x: &Rational) -> Rational {
    b.eval(&Scalar::Rat(x.clone()))
        .expect("rational polynomial")
        .as_rational()
        .expect("rational value")
        .clone()
}

/// `Σ_{l=0}^{k} (−1)^{k−l} b(l) / ((k−l)! l!)`.
pub fn newton_binomial_sum(b: &Polynomial, k: usize) -> Result<Rational> {
    require_rational(b)?;
    let mut acc = Rational::zero();
    for l in 0..=k {
        let term = eval_rat(b, &rat(l as i64)) / (factorial(k - l) * factorial(l));
        if (k - l) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `[0, 1, …, k; b]` from the divided-difference table.
pub fn newton_divided_difference(b: &Polynomial, k: usize) -> Result<Rational> {
    require_rational(b)?;
    let nodes: Vec<Scalar> = (0..=k).map(|i| Scalar::from_int(Tag::Rational, i as i64)).collect();
    let value = divided_difference(&nodes, b)?;
    Ok(value.as_rational().expect("rational value").clone())
}

/// `[0, 1, …, k; b] = Δ^k b(0) / k!`. Both routes are evaluated and must agree.
pub fn newton_stirling(b: &Polynomial, k: usize) -> Result<Rational> {
    let sum = newton_binomial_sum(b, k)?;
    let table = newton_divided_difference(b, k)?;
    assert_eq!(sum, table, "binomial sum and divided difference disagree");
    Ok(table)
}

/// `∏_{j=1}^{n} (x + (j−1)(r−s))^{\underline s}`.
pub fn b_ns_poly(n: usize, r: usize, s: usize) -> Result<Polynomial> {
    if s == 0 || r < s {
        return Err(Error::InvalidParameter(format!("need r ≥ s ≥ 1, got r={r}, s={s}")));
    }
    let mut p = Polynomial::one(Tag::Rational);
    for j in 1..=n {
        let shift = ((j - 1) * (r - s)) as i64;
        for i in 0..s {
            // factor x + shift − i
            p = p.mul_linear(&Scalar::from_int(Tag::Rational, i as i64 - shift));
        }
    }
    Ok(p)
}

/// `S_{r,s}(n,k) = (1/k!) Σ_{l=s}^{k} (−1)^{k−l} C(k,l) b_ns(l; r, s)`.
pub fn generalized_s_rs(n: usize, k: usize, r: usize, s: usize) -> Result<Rational> {
    let b = b_ns_poly(n, r, s)?;
    if k > n * s {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds ns = {}", n * s)));
    }
    if k < s {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::zero();
    for l in s..=k {
        let term = binomial(k, l) * eval_rat(&b, &rat(l as i64));
        if (k - l) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let value = acc / factorial(k);
    assert_eq!(value, newton_stirling(&b, k)?, "S_rs disagrees with the Newton coefficient");
    Ok(value)
}

/// `S_{1,1}(n,k) = {n,k}` for `1 ≤ k ≤ n ≤ n_max`.
pub fn check_generalized_reduction(n_max: usize) -> Result<CheckReport> {
    let stirling = nwc_second_table(&PsiSequence::classical(), n_max)?;
    let mut report = CheckReport::new("s11-reduction", "S_(1,1)(n,k) = {n,k}").param("n_max", n_max);
    for n in 1..=n_max {
        for k in 1..=n {
            let s = generalized_s_rs(n, k, 1, 1)?;
            report.compare(&[("n", n as i64), ("k", k as i64)], &Scalar::Rat(s), &stirling.entry(n, k));
        }
    }
    Ok(report)
}

/// `B_{r,s}(n) = Σ_k S_{r,s}(n,k)`.
pub fn newton_bell_rs(n: usize, r: usize, s: usize) -> Result<Rational> {
    let b = b_ns_poly(n, r, s)?;
    ns_bell(|_| Ok(b.clone()), n)
}

/// `d_{n,k} = [0, 1/k, …, (k−1)/k, 1; x^n]`.
pub fn abel_goncharov_d(n: usize, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidParameter("d_{n,k} needs k ≥ 1".into()));
    }
    let nodes: Vec<Scalar> = (0..=k).map(|j| Scalar::Rat(ratio(j as i64, k as i64))).collect();
    let value = divided_difference(&nodes, &Polynomial::power(Tag::Rational, n))?;
    Ok(value.as_rational().expect("rational value").clone())
}

/// `(k^k/k!) Σ_r (−1)^{k−r} C(k,r) r^n / k^n`.
pub fn abel_goncharov_closed(n: usize, k: usize) -> Rational {
    let kk = rat(k as i64);
    let mut acc = Rational::zero();
    for r in 0..=k {
        let term = binomial(k, r) * rat_pow(&ratio(r as i64, k as i64), n as u32);
        if (k - r) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    rat_pow(&kk, k as u32) / factorial(k) * acc
}

/// For `1 ≤ k ≤ n ≤ n_max`: the table value of `d_{n,k}` equals the closed
/// form, and `k^{n−k} d_{n,k} = {n,k}`.
pub fn check_abel_goncharov(n_max: usize) -> Result<CheckReport> {
    let stirling = nwc_second_table(&PsiSequence::classical(), n_max)?;
    let mut closed = CheckReport::new(
        "abel-goncharov/closed-form",
        "d_(n,k) = (k^k/k!) sum_r (-1)^(k-r) C(k,r) r^n / k^n",
    );
    let mut scaled = CheckReport::new("abel-goncharov/stirling", "k^(n-k) d_(n,k) = {n,k}");
    for n in 1..=n_max {
        for k in 1..=n {
            let d = abel_goncharov_d(n, k)?;
            let idx = [("n", n as i64), ("k", k as i64)];
            closed.compare(&idx, &Scalar::Rat(d.clone()), &Scalar::Rat(abel_goncharov_closed(n, k)));
            let lhs = rat_pow(&rat(k as i64), (n - k) as u32) * d;
            scaled.compare(&idx, &Scalar::Rat(lhs), &stirling.entry(n, k));
        }
    }
    let mut report =
        CheckReport::new("abel-goncharov", "d_(n,k) at nodes 0, 1/k, ..., 1").param("n_max", n_max);
    report.push_child(closed);
    report.push_child(scaled);
    Ok(report)
}

/// `e^{−x}` as a rational partial sum within `bound` of the true value.
pub fn exp_neg(x: &Rational, bound: &Rational) -> Rational {
    let ax = x.abs();
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut j = 0usize;
    loop {
        sum += &term;
        j += 1;
        term = -(term * x) / rat(j as i64);
        // once j + 1 > 2|x| the tail is at most twice its first term
        if rat(j as i64 + 1) > &ax * rat(2) && term.abs() * rat(2) < *bound {
            return sum;
        }
    }
}

/// Compares `e^{−x} Σ_{m ≤ terms} b(m) x^m / m!` with `Σ_k [0..k; b] x^k`.
pub fn ns_dobinski_numeric(b: &Polynomial, x: &Rational, terms: usize) -> Result<CheckReport> {
    ns_dobinski_numeric_tol(b, x, terms, &default_tolerance())
}

pub fn ns_dobinski_numeric_tol(
    b: &Polynomial,
    x: &Rational,
    terms: usize,
    tol: &Rational,
) -> Result<CheckReport> {
    require_rational(b)?;
    let deg = b.degree().unwrap_or(0);
    if terms < deg + 10 {
        return Err(Error::InvalidParameter(format!(
            "need at least deg b + 10 = {} terms, got {terms}",
            deg + 10
        )));
    }
    let mut series = Rational::zero();
    let mut power_over_fact = Rational::one();
    let mut last = Rational::zero();
    for m in 0..=terms {
        if m > 0 {
            power_over_fact = power_over_fact * x / rat(m as i64);
        }
        last = eval_rat(b, &rat(m as i64)) * &power_over_fact;
        series += &last;
    }
    let last_bound = tol / rat(10);
    if last.abs() >= last_bound {
        return Err(Error::InsufficientTerms {
            last: to_decimal(&last.abs(), 15),
            bound: to_decimal(&last_bound, 15),
        });
    }
    let exp_bound = ratio(1, 1_000_000_000_000) / (Rational::one() + series.abs());
    let lhs = exp_neg(x, &exp_bound) * &series;

    let mut rhs = Rational::zero();
    for k in 0..=deg {
        rhs += newton_stirling(b, k)? * rat_pow(x, k as u32);
    }
    let mut report = CheckReport::new("ns-dob", "e^(-x) sum_m b(m) x^m/m! = sum_k [0,1,...,k; b] x^k")
        .param("b", polynomial_to_json(b))
        .param("x", x.to_string())
        .param("terms", terms)
        .param("tol", tol.to_string());
    let holds = (&lhs - &rhs).abs() < *tol;
    report.record(holds, || Witness::numeric(&[("terms", terms as i64)], &lhs, &rhs));
    report.set_value("series", to_decimal(&lhs, 15));
    report.set_value("newton", json!(rhs.to_string()));
    Ok(report)
}

/// `Σ_k [0, 1, …, k; b_n]`.
pub fn ns_bell(family: impl Fn(usize) -> Result<Polynomial>, n: usize) -> Result<Rational> {
    let b = family(n)?;
    let deg = b.degree().unwrap_or(0);
    (0..=deg).try_fold(Rational::zero(), |acc, k| Ok(acc + newton_stirling(&b, k)?))
}

/// The family `b_n = x^n`.
pub fn monomial_family(n: usize) -> Result<Polynomial> {
    Ok(Polynomial::power(Tag::Rational, n))
}
