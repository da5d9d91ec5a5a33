//! Bell numbers of every family, ε-coefficients and the Dobinski-type
//! formulas, in exact rearranged form and as numeric series.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::newton::exp_neg;
use crate::partitions::{statistic_bell, Statistic};
use crate::report::{CheckReport, Witness};
use crate::scalar::{
    polynomial_to_json, rat, rat_pow, scalar_to_json, to_decimal, Polynomial, QFrac, Rational, Scalar, Tag,
    TruncatedSeries,
};
use crate::sequences::{
    exp_psi_series, psi_binomial, psi_derivative, psi_factorial, psi_falling_power, PsiSequence, SeqKind,
};
use crate::stirling::{carlitz_q_table, carlitz_table_for, nwc_second_table, table, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellFamily {
    /// Row sums of `{n,k}∼_ψ`.
    Nwc,
    /// Row sums of the Carlitz `{n,k}_q`.
    CarlitzQ,
    /// `B_{n+1} = Σ_k binom_ψ(n,k) B_k`.
    UmbralBinomial,
    Classical,
    Inv,
    Cigl,
    /// `D_n = n_ψ! [x^n] exp(e_ψ(x) − 1)`.
    Prefab,
}

impl BellFamily {
    pub fn name(self) -> &'static str {
        match self {
            BellFamily::Nwc => "nwc",
            BellFamily::CarlitzQ => "carlitz",
            BellFamily::UmbralBinomial => "umbral",
            BellFamily::Classical => "classical",
            BellFamily::Inv => "inv",
            BellFamily::Cigl => "cigl",
            BellFamily::Prefab => "prefab",
        }
    }

    pub fn parse(s: &str) -> Result<BellFamily> {
        Ok(match s {
            "nwc" => BellFamily::Nwc,
            "carlitz" => BellFamily::CarlitzQ,
            "umbral" => BellFamily::UmbralBinomial,
            "classical" => BellFamily::Classical,
            "inv" => BellFamily::Inv,
            "cigl" => BellFamily::Cigl,
            "prefab" => BellFamily::Prefab,
            _ => return Err(Error::Parse(format!("unknown Bell family '{s}'"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BellSequence {
    pub family: BellFamily,
    pub seq: PsiSequence,
    pub values: Vec<Scalar>,
}

impl BellSequence {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "seq": self.seq.name(),
            "values": self.values.iter().map(scalar_to_json).collect::<Vec<_>>(),
        })
    }
}

/// `B_n` for `n ≤ n_max` in the given family. `seq` is ignored by the
/// families that fix their own sequence (classical, inv, cigl).
pub fn bell_sequence(family: BellFamily, seq: &PsiSequence, n_max: usize) -> Result<BellSequence> {
    let (seq, values) = match family {
        BellFamily::Nwc => {
            let t = nwc_second_table(seq, n_max)?;
            (seq.clone(), (0..=n_max).map(|n| t.row_sum(n)).collect())
        }
        BellFamily::CarlitzQ => {
            let t = carlitz_table_for(seq, n_max)?;
            (seq.clone(), (0..=n_max).map(|n| t.row_sum(n)).collect())
        }
        BellFamily::UmbralBinomial => (seq.clone(), bell_umbral_binomial(seq, n_max)?.0.values),
        BellFamily::Classical => {
            let c = PsiSequence::classical();
            let t = nwc_second_table(&c, n_max)?;
            (c, (0..=n_max).map(|n| t.row_sum(n)).collect())
        }
        BellFamily::Inv | BellFamily::Cigl => {
            let stat = if family == BellFamily::Inv { Statistic::Inv } else { Statistic::Cigl };
            let values = (0..=n_max)
                .map(|n| Ok(Scalar::Q(QFrac::from_poly(statistic_bell(n, stat)?))))
                .collect::<Result<Vec<_>>>()?;
            (PsiSequence::q_symbolic(), values)
        }
        BellFamily::Prefab => (seq.clone(), prefab_bell(seq, n_max)?.values),
    };
    Ok(BellSequence { family, seq, values })
}

/// `B∼_n(ψ) = Σ_k {n,k}∼_ψ`.
pub fn bell_nwc(seq: &PsiSequence, n: usize) -> Result<Scalar> {
    Ok(nwc_second_table(seq, n)?.row_sum(n))
}

/// `ε_K(ψ, r) = r_ψ! Σ_{k=r}^{K} ∏_{0 ≤ j ≤ k, j ≠ r} (r_ψ − j_ψ)^{−1}`.
pub fn epsilon_coefficient(seq: &PsiSequence, r: usize, big_k: usize) -> Result<Scalar> {
    if big_k < r {
        return Err(Error::InvalidParameter(format!("need K ≥ r, got K={big_k}, r={r}")));
    }
    seq.require_distinct(big_k)?;
    let nodes = seq.nodes(big_k)?;
    let rv = &nodes[r];
    let mut prod = Scalar::one(seq.tag());
    for node in &nodes[..r] {
        prod = prod.checked_div(&(rv - node))?;
    }
    let mut sum = prod.clone();
    for node in &nodes[r + 1..] {
        prod = prod.checked_div(&(rv - node))?;
        sum = &sum + &prod;
    }
    Ok(&psi_factorial(seq, r)? * &sum)
}

/// The printed truncated form: `Σ_{k=r}^{K} (−1)^{k−r} / (k−r)_ψ!`, times
/// `q^{−binom(r,2)}` for the `q`-sequences.
pub fn epsilon_literal(seq: &PsiSequence, r: usize, big_k: usize) -> Result<Scalar> {
    let mut sum = Scalar::zero(seq.tag());
    for k in r..=big_k {
        let term = psi_factorial(seq, k - r)?.inv()?;
        sum = if (k - r) % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    Ok(match seq.kind() {
        SeqKind::QGaussSymbolic => &sum * &Scalar::q_pow(-((r * r.saturating_sub(1) / 2) as i64)),
        SeqKind::QGaussNumeric(q) => {
            let f = rat_pow(q, (r * r.saturating_sub(1) / 2) as u32).recip();
            sum.scale(&f)
        }
        _ => sum,
    })
}

/// Compares the product form of `ε_K(ψ, r)` with the printed form for
/// `r ≤ K`. Recorded, not asserted.
pub fn check_epsilon_literal(seq: &PsiSequence, big_k: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        "epsilon-literal",
        "eps_K(psi,r) = sum_(k=r..K) (-1)^(k-r) / (k-r)_psi!  [times q^(-binom(r,2)) for q]",
    )
    .informational()
    .param("seq", seq.name())
    .param("K", big_k);
    for r in 0..=big_k {
        let product = epsilon_coefficient(seq, r, big_k)?;
        let literal = epsilon_literal(seq, r, big_k)?;
        report.compare(&[("r", r as i64)], &product, &literal);
    }
    Ok(report)
}

fn dobinski_sum(seq: &PsiSequence, n: usize, big_k: usize, x: &Scalar) -> Result<Scalar> {
    let mut sum = Scalar::zero(seq.tag());
    let mut x_pow = Scalar::one(seq.tag());
    for r in 0..=big_k {
        let rv = seq.value(r)?;
        let term = &(&epsilon_coefficient(seq, r, big_k)? * &rv.pow(n as u32))
            .checked_div(&psi_factorial(seq, r)?)?
            * &x_pow;
        sum = &sum + &term;
        x_pow = &x_pow * x;
    }
    Ok(sum)
}

/// `Σ_{r ≤ K} ε_K(ψ,r) r_ψ^n / r_ψ! = B∼_n(ψ)`, exact for `K ≥ n`.
pub fn check_dobinski_rearrangement(seq: &PsiSequence, n: usize, big_k: usize) -> Result<CheckReport> {
    if big_k < n {
        return Err(Error::InvalidParameter(format!("need K ≥ n, got K={big_k}, n={n}")));
    }
    let lhs = dobinski_sum(seq, n, big_k, &Scalar::one(seq.tag()))?;
    let rhs = bell_nwc(seq, n)?;
    let mut report =
        CheckReport::new("dobinski-rearrangement", "sum_(r<=K) eps_K(psi,r) r_psi^n / r_psi! = B~_n(psi)")
            .param("seq", seq.name())
            .param("n", n)
            .param("K", big_k);
    report.compare(&[("n", n as i64)], &lhs, &rhs);
    report.set_value("value", scalar_to_json(&rhs));
    Ok(report)
}

/// `Σ_{r ≤ K} ε_K(ψ,r) r_ψ^n x^r / r_ψ!` against `φ∼_n(ψ, x)`. Asserted at
/// `x = 1` only.
pub fn check_exp_pol_ii(seq: &PsiSequence, n: usize, x: &Rational, big_k: usize) -> Result<CheckReport> {
    if big_k < n {
        return Err(Error::InvalidParameter(format!("need K ≥ n, got K={big_k}, n={n}")));
    }
    let xs = Scalar::from_rational(seq.tag(), x.clone());
    let lhs = dobinski_sum(seq, n, big_k, &xs)?;
    let table = nwc_second_table(seq, n)?;
    let rhs = Polynomial::new(seq.tag(), table.row(n).to_vec())?.eval(&xs)?;
    let mut report = CheckReport::new("exp-pol-ii", "phi~_n(psi,x) = sum_r eps(psi,r) r_psi^n x^r / r_psi!")
        .param("seq", seq.name())
        .param("n", n)
        .param("x", x.to_string())
        .param("K", big_k);
    if !x.is_one() {
        report = report.informational();
    }
    report.compare(&[("n", n as i64)], &lhs, &rhs);
    Ok(report)
}

/// The coefficient of `x^n / n_ψ!` in `Σ_{r ≤ K} ε_K(ψ,r) e_ψ[r_ψ x] / r_ψ!`
/// equals `B∼_n(ψ)` for `n ≤ n_max`.
pub fn check_egf18(seq: &PsiSequence, n_max: usize, big_k: usize) -> Result<CheckReport> {
    if big_k < n_max {
        return Err(Error::InvalidParameter(format!("need K ≥ n_max, got K={big_k}, n_max={n_max}")));
    }
    let tag = seq.tag();
    let e = exp_psi_series(seq, n_max)?;
    let mut total = TruncatedSeries::new(tag, vec![], n_max)?;
    for r in 0..=big_k {
        let rv = seq.value(r)?;
        // e_ψ[r_ψ x]: coefficient m scaled by r_ψ^m
        let coeffs = (0..=n_max).map(|m| &e.coeff(m) * &rv.pow(m as u32)).collect();
        let dilated = TruncatedSeries::new(tag, coeffs, n_max)?;
        let weight = epsilon_coefficient(seq, r, big_k)?.checked_div(&psi_factorial(seq, r)?)?;
        total = total.add(&dilated.scale(&weight))?;
    }
    let mut report = CheckReport::new("egf18", "B~_psi(x) = sum_r eps(psi,r) e_psi[r_psi x] / r_psi!")
        .param("seq", seq.name())
        .param("n_max", n_max)
        .param("K", big_k);
    let table = nwc_second_table(seq, n_max)?;
    for n in 0..=n_max {
        let lhs = &total.coeff(n) * &psi_factorial(seq, n)?;
        report.compare(&[("n", n as i64)], &lhs, &table.row_sum(n));
    }
    Ok(report)
}

/// Which numeric Dobinski series to evaluate.
#[derive(Clone, Debug, PartialEq)]
pub enum DobinskiVariant {
    /// `e^{−1} Σ k^n / k!` against `B_n`.
    Classical,
    /// `exp_q(1)^{−1} Σ k_q^n / k_q!` against `Σ_k {n,k}_q` at `q`.
    CarlitzQ(Rational),
    /// `exp_q(1)^{−1} Σ_{k ≥ 1} k_q^n / (k−1)_q!` against `B_{n+1}(q)`.
    Milne(Rational),
    /// `exp_ψ(1)^{−1} Σ k_ψ^n / k_ψ!`, reported as a value.
    Psi(PsiSequence),
    /// `e^{−1} Σ_m m(m−1+q)⋯(m−1+q^{n−1}) / m!` against `Σ_k {n,k}^{cigl}_q`.
    Cigl(Rational),
}

impl DobinskiVariant {
    pub fn name(&self) -> &'static str {
        match self {
            DobinskiVariant::Classical => "classical",
            DobinskiVariant::CarlitzQ(_) => "q",
            DobinskiVariant::Milne(_) => "milne",
            DobinskiVariant::Psi(_) => "psi",
            DobinskiVariant::Cigl(_) => "cigl",
        }
    }
}

fn numeric_value(seq: &PsiSequence, k: usize) -> Result<Rational> {
    seq.value(k)?
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("sequence {seq} is not numeric")))
}

fn check_last(last: &Rational, tol: &Rational) -> Result<()> {
    let bound = tol / rat(10);
    if last.abs() >= bound {
        return Err(Error::InsufficientTerms {
            last: to_decimal(&last.abs(), 15),
            bound: to_decimal(&bound, 15),
        });
    }
    Ok(())
}

/// `(Σ_{k ≤ terms} w(k) / k_ψ!, Σ_{k ≤ terms} 1 / k_ψ!)`, checking that the
/// last term of each is below `tol / 10`.
fn psi_series_pair(
    seq: &PsiSequence,
    terms: usize,
    tol: &Rational,
    w: impl Fn(usize) -> Result<Rational>,
) -> Result<(Rational, Rational)> {
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    let mut inv_fact = Rational::one();
    let (mut last_num, mut last_den) = (Rational::zero(), Rational::zero());
    for k in 0..=terms {
        if k > 0 {
            inv_fact /= numeric_value(seq, k)?;
        }
        last_num = w(k)? * &inv_fact;
        last_den = inv_fact.clone();
        num += &last_num;
        den += &last_den;
    }
    check_last(&last_num, tol)?;
    check_last(&last_den, tol)?;
    Ok((num, den))
}

/// `e^{−1} Σ_{m ≤ terms} f(m) / m!`.
fn poisson_average(terms: usize, tol: &Rational, f: impl Fn(usize) -> Rational) -> Result<Rational> {
    let mut sum = Rational::zero();
    let mut inv_fact = Rational::one();
    let mut last = Rational::zero();
    for m in 0..=terms {
        if m > 0 {
            inv_fact /= rat(m as i64);
        }
        last = f(m) * &inv_fact;
        sum += &last;
    }
    check_last(&last, tol)?;
    let bound = tol / rat(1000) / (Rational::one() + sum.abs());
    Ok(exp_neg(&Rational::one(), &bound) * sum)
}

fn oracle_at(value: &Scalar, q: &Rational) -> Result<Rational> {
    Ok(value.eval_q(q)?.as_rational().expect("numeric after substitution").clone())
}

/// Numeric Dobinski series in exact rational partial sums, compared with
/// the matching exact Bell number where one exists.
pub fn dobinski_numeric(
    variant: &DobinskiVariant,
    n: usize,
    terms: usize,
    tol: &Rational,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(variant_id(variant), variant_anchor(variant))
        .param("variant", variant.name())
        .param("n", n)
        .param("terms", terms)
        .param("tol", tol.to_string());
    let (value, oracle) = match variant {
        DobinskiVariant::Classical => {
            let value = poisson_average(terms, tol, |m| rat_pow(&rat(m as i64), n as u32))?;
            let bell = bell_nwc(&PsiSequence::classical(), n)?;
            (value, Some(bell.as_rational().expect("classical").clone()))
        }
        DobinskiVariant::CarlitzQ(q) | DobinskiVariant::Milne(q) => {
            let seq = PsiSequence::q_numeric(q.clone());
            seq.require_convergent()?;
            let power = if matches!(variant, DobinskiVariant::Milne(_)) { n + 1 } else { n };
            let (num, den) =
                psi_series_pair(&seq, terms, tol, |k| Ok(rat_pow(&numeric_value(&seq, k)?, power as u32)))?;
            let bell = carlitz_q_table(power).row_sum(power);
            report = report.param("q", q.to_string());
            (num / den, Some(oracle_at(&bell, q)?))
        }
        DobinskiVariant::Psi(seq) => {
            seq.require_convergent()?;
            let (num, den) =
                psi_series_pair(seq, terms, tol, |k| Ok(rat_pow(&numeric_value(seq, k)?, n as u32)))?;
            report = report.param("seq", seq.name());
            let oracle = match seq.kind() {
                SeqKind::Classical => Some(bell_nwc(seq, n)?.as_rational().expect("classical").clone()),
                SeqKind::QGaussNumeric(q) => Some(oracle_at(&carlitz_q_table(n).row_sum(n), q)?),
                _ => None,
            };
            (num / den, oracle)
        }
        DobinskiVariant::Cigl(q) => {
            let value = poisson_average(terms, tol, |m| {
                let m = rat(m as i64);
                (0..n).fold(Rational::one(), |acc, j| acc * (&m - Rational::one() + rat_pow(q, j as u32)))
            })?;
            let bell = Scalar::Q(QFrac::from_poly(statistic_bell(n, Statistic::Cigl)?));
            report = report.param("q", q.to_string());
            (value, Some(oracle_at(&bell, q)?))
        }
    };
    report.set_value("value", to_decimal(&value, 15));
    match oracle {
        Some(exact) => {
            report.compare_numeric(&[("n", n as i64)], &value, &exact, tol);
            report.set_value("exact", exact.to_string());
        }
        None => report = report.informational(),
    }
    Ok(report)
}

fn variant_id(v: &DobinskiVariant) -> String {
    format!("dobinski/{}", v.name())
}

fn variant_anchor(v: &DobinskiVariant) -> &'static str {
    match v {
        DobinskiVariant::Classical => "B_n = e^(-1) sum_k k^n / k!",
        DobinskiVariant::CarlitzQ(_) => "B_n(q) = exp_q(1)^(-1) sum_k k_q^n / k_q!",
        DobinskiVariant::Milne(_) => "B_(q,n+1) = exp_q(1)^(-1) sum_(k>=1) k_q^n / (k-1)_q!",
        DobinskiVariant::Psi(_) => "B_n(psi) = exp_psi(1)^(-1) sum_k k_psi^n / k_psi!",
        DobinskiVariant::Cigl(_) => "L(X(X-1+q)...(X-1+q^(n-1))) = sum_k {n,k}^cigl_q",
    }
}

/// `exp_ψ(1)^{−1} Σ_k k_ψ^{\underline n} / k_ψ! = 1` for `n ≤ n_max`.
pub fn psi_poisson_moment_check(
    seq: &PsiSequence,
    n_max: usize,
    terms: usize,
    tol: &Rational,
) -> Result<CheckReport> {
    seq.require_convergent()?;
    let mut report = CheckReport::new("poisson-moments", "L_psi(X^(n, falling)) = 1")
        .param("seq", seq.name())
        .param("n_max", n_max)
        .param("terms", terms)
        .param("tol", tol.to_string());
    for n in 0..=n_max {
        let (num, den) = psi_series_pair(seq, terms, tol, |k| {
            Ok(psi_falling_power(seq, k, n)?.as_rational().expect("numeric").clone())
        })?;
        report.compare_numeric(&[("n", n as i64)], &(num / den), &Rational::one(), tol);
    }
    Ok(report)
}

/// `p_n = exp_ψ(λ)^{−1} λ^n / n_ψ!`, with a report checking the ψ-Taylor
/// extraction `p_n = [∂_ψ^n G(t) / n_ψ!]_{t=0}` and `Σ_{k ≤ terms} p_k ≈ 1`.
pub fn psi_poisson_pmf(
    seq: &PsiSequence,
    lambda: &Rational,
    n: usize,
    terms: usize,
    tol: &Rational,
) -> Result<(Rational, CheckReport)> {
    seq.require_convergent()?;
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter(format!("need λ > 0, got {lambda}")));
    }
    if terms < n {
        return Err(Error::InvalidParameter(format!("need terms ≥ n, got {terms} < {n}")));
    }
    // normalizer, summed well past `terms` until its terms are negligible
    let fine = tol / rat(1000);
    let mut norm = Rational::zero();
    let mut term = Rational::one();
    let mut weights = Vec::new();
    let mut k = 0usize;
    loop {
        if k > 0 {
            term = term * lambda / numeric_value(seq, k)?;
        }
        norm += &term;
        if k <= terms {
            weights.push(term.clone());
        }
        k += 1;
        if k > terms && term.abs() < fine {
            break;
        }
        if k > 100 * (terms + 10) {
            return Err(Error::InsufficientTerms {
                last: to_decimal(&term, 15),
                bound: to_decimal(&fine, 15),
            });
        }
    }
    let pmf: Vec<Rational> = weights.iter().map(|w| w / &norm).collect();
    let p_n = pmf[n].clone();

    let mut report = CheckReport::new("poisson-pmf", "p_n = [d_psi^n G(t) / n_psi!]_(t=0), sum_n p_n = 1")
        .param("seq", seq.name())
        .param("lambda", lambda.to_string())
        .param("n", n)
        .param("terms", terms);
    let mut g = Polynomial::new(Tag::Rational, pmf.iter().cloned().map(Scalar::Rat).collect())?;
    for _ in 0..n {
        g = psi_derivative(&g, seq)?;
    }
    let extracted = g.coeff(0).checked_div(&psi_factorial(seq, n)?)?;
    report.compare(&[("n", n as i64)], &extracted, &Scalar::Rat(p_n.clone()));
    let total: Rational = pmf.iter().sum();
    report.compare_numeric(&[("terms", terms as i64)], &total, &Rational::one(), tol);
    report.set_value("p_n", to_decimal(&p_n, 15));
    Ok((p_n, report))
}

/// `B(ψ)_{n+1} = Σ_k binom_ψ(n,k) B(ψ)_k`, with a comparison against
/// `B∼_n(ψ)` (asserted only for the classical sequence).
pub fn bell_umbral_binomial(seq: &PsiSequence, n_max: usize) -> Result<(BellSequence, CheckReport)> {
    seq.require_invertible(n_max)?;
    let mut values = vec![Scalar::one(seq.tag())];
    for n in 0..n_max {
        let mut next = Scalar::zero(seq.tag());
        for (k, b) in values.iter().enumerate() {
            next = &next + &(&psi_binomial(seq, n, k)? * b);
        }
        values.push(next);
    }
    let mut report = CheckReport::new("umbral-bell", "B(psi)_n = B~_n(psi)")
        .param("seq", seq.name())
        .param("n_max", n_max);
    if *seq.kind() != SeqKind::Classical {
        report = report.informational();
    }
    let table = nwc_second_table(seq, n_max)?;
    for (n, v) in values.iter().enumerate() {
        report.compare(&[("n", n as i64)], v, &table.row_sum(n));
    }
    let bell = BellSequence { family: BellFamily::UmbralBinomial, seq: seq.clone(), values };
    Ok((bell, report))
}

/// Literal evaluation of the two printed `q`-Bell recurrences against the
/// table row sums. Recorded, not asserted.
pub fn check_q_bell_recurrences(n_max: usize) -> Result<CheckReport> {
    let q = PsiSequence::q_symbolic();
    let carlitz = carlitz_q_table(n_max + 1);
    let tilde = nwc_second_table(&q, n_max + 1)?;
    let mut first =
        CheckReport::new("q-bell-recurrences/carlitz", "B_q(n+1) = sum_l binom_q(n,l) q^l B_q(l)")
            .informational();
    let mut second = CheckReport::new(
        "q-bell-recurrences/tilde",
        "B~_q(n+1) = sum_l binom_q(n,l) q^(l+1) sum_k q^k {l,k}~_q",
    )
    .informational();
    for n in 0..=n_max {
        let mut rhs1 = Scalar::zero(Tag::Q);
        let mut rhs2 = Scalar::zero(Tag::Q);
        for l in 0..=n {
            let b = psi_binomial(&q, n, l)?;
            rhs1 = &rhs1 + &(&(&b * &Scalar::q_pow(l as i64)) * &carlitz.row_sum(l));
            let overline = (0..=l)
                .fold(Scalar::zero(Tag::Q), |acc, k| &acc + &(&Scalar::q_pow(k as i64) * &tilde.entry(l, k)));
            rhs2 = &rhs2 + &(&(&b * &Scalar::q_pow(l as i64 + 1)) * &overline);
        }
        first.compare(&[("n", n as i64)], &carlitz.row_sum(n + 1), &rhs1);
        second.compare(&[("n", n as i64)], &tilde.row_sum(n + 1), &rhs2);
    }
    let mut report = CheckReport::new("q-bell-recurrences", "recurrences for q-Bell numbers")
        .informational()
        .param("n_max", n_max);
    report.push_child(first);
    report.push_child(second);
    Ok(report)
}

/// Series `Σ a_k x^k / k_ψ!` are handled through their scaled coefficients
/// `a_k`; the product of two such series has scaled coefficients
/// `Σ_j binom_ψ(m,j) a_j b_{m−j}`, which stay polynomial for the
/// `q`-sequences and avoid rational-function blowup.
struct PsiEgf {
    binom: Vec<Vec<Scalar>>,
}

impl PsiEgf {
    fn new(seq: &PsiSequence, order: usize) -> Result<Self> {
        Ok(PsiEgf { binom: crate::sequences::psi_binomial_rows(seq, order)? })
    }

    fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        (0..a.len().min(b.len()))
            .map(|m| {
                (0..=m).fold(Scalar::zero(a[0].tag()), |acc, j| {
                    &acc + &(&(&self.binom[m][j] * &a[j]) * &b[m - j])
                })
            })
            .collect()
    }

    /// Solves `self · g = f` for `g`, given `e` with `e_0 = 1`.
    fn divide(&self, f: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
        let mut g: Vec<Scalar> = Vec::with_capacity(f.len());
        for m in 0..f.len() {
            let mut acc = f[m].clone();
            for j in 0..m {
                acc = &acc - &(&(&self.binom[m][j] * &g[j]) * &e[m - j]);
            }
            g.push(acc);
        }
        g
    }
}

fn unscale(seq: &PsiSequence, scaled: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut fact = Scalar::one(seq.tag());
    scaled
        .iter()
        .enumerate()
        .map(|(m, c)| {
            if m > 0 {
                fact = &fact * &seq.value(m)?;
            }
            if c.is_zero() {
                Ok(c.clone())
            } else {
                c.checked_div(&fact)
            }
        })
        .collect()
}

/// The exponential polynomial a sequence is expected to reproduce, if known.
fn known_exp_poly(seq: &PsiSequence, n: usize) -> Result<Option<Vec<Scalar>>> {
    Ok(match seq.kind() {
        SeqKind::Classical => Some(nwc_second_table(seq, n)?.row(n).to_vec()),
        SeqKind::QGaussSymbolic | SeqKind::QGaussNumeric(_) => {
            Some(carlitz_table_for(seq, n)?.row(n).to_vec())
        }
        _ => None,
    })
}

/// Coefficients of `exp_ψ(x)^{−1} Σ_k k_ψ^n x^k / k_ψ!` through `order`,
/// with a report on whether the series terminates at degree `n`.
pub fn gordian_s_psi(seq: &PsiSequence, n: usize, order: usize) -> Result<(Vec<Scalar>, CheckReport)> {
    if order < 2 * n + 8 {
        return Err(Error::InvalidParameter(format!("need order ≥ 2n + 8 = {}, got {order}", 2 * n + 8)));
    }
    let egf = PsiEgf::new(seq, order)?;
    let ones = vec![Scalar::one(seq.tag()); order + 1];
    let powers = (0..=order).map(|k| Ok(seq.value(k)?.pow(n as u32))).collect::<Result<Vec<_>>>()?;
    let coeffs = unscale(seq, &egf.divide(&powers, &ones))?;
    let known = known_exp_poly(seq, n)?;

    let mut tail =
        CheckReport::new("gordian/tail", "[x^m] exp_psi(x)^(-1) sum_k k_psi^n x^k/k_psi! = 0 for m > n");
    if known.is_none() {
        tail = tail.informational();
    }
    let zero = Scalar::zero(seq.tag());
    for (m, c) in coeffs.iter().enumerate().skip(n + 1) {
        tail.compare(&[("m", m as i64)], c, &zero);
    }
    let mut report = CheckReport::new("gordian", "phi_n(x,psi) = exp_psi(x)^(-1) sum_k k_psi^n x^k / k_psi!")
        .param("seq", seq.name())
        .param("n", n)
        .param("order", order);
    report.set_value("tail_vanishes", tail.holds());
    report.set_value("coefficients", coeffs.iter().map(scalar_to_json).collect::<Vec<_>>());
    report.push_child(tail);
    if let Some(row) = known {
        let mut head = CheckReport::new("gordian/head", "[x^k] phi_n(x,psi) = {n,k}");
        for (k, expected) in row.iter().enumerate() {
            head.compare(&[("k", k as i64)], &coeffs[k], expected);
        }
        report.push_child(head);
    }
    Ok((coeffs, report))
}

/// `exp_ψ(x)^{−1} (x̂∂_ψ)^n exp_ψ(x)` as a truncated series, compared with
/// the Gordian coefficients and, for the classical sequence, with
/// `Σ_k {n,k} x^k`.
pub fn ghw_exp_poly_series(seq: &PsiSequence, n: usize, order: usize) -> Result<CheckReport> {
    if order < n + 8 {
        return Err(Error::InvalidParameter(format!("need order ≥ n + 8 = {}, got {order}", n + 8)));
    }
    let e = exp_psi_series(seq, order)?;
    let mut p = e.to_polynomial();
    for _ in 0..n {
        p = psi_derivative(&p, seq)?.shift(1);
    }
    // scaled coefficients of the operator image and of exp_ψ(x)^{−1}
    let egf = PsiEgf::new(seq, order)?;
    let mut fact = Scalar::one(seq.tag());
    let mut image = Vec::with_capacity(order + 1);
    for k in 0..=order {
        if k > 0 {
            fact = &fact * &seq.value(k)?;
        }
        image.push(&p.coeff(k) * &fact);
    }
    let mut delta = vec![Scalar::zero(seq.tag()); order + 1];
    delta[0] = Scalar::one(seq.tag());
    let inverse = egf.divide(&delta, &vec![Scalar::one(seq.tag()); order + 1]);
    let result = TruncatedSeries::new(seq.tag(), unscale(seq, &egf.mul(&inverse, &image))?, order)?;
    let gordian_order = order.max(2 * n + 8);
    let (gordian, _) = gordian_s_psi(seq, n, gordian_order)?;

    let mut report = CheckReport::new("ghw-exp-poly", "phi_n(x) = exp_psi(x)^(-1) (x d_psi)^n exp_psi(x)")
        .param("seq", seq.name())
        .param("n", n)
        .param("order", order);
    for m in 0..=order {
        report.compare(&[("m", m as i64)], &result.coeff(m), &gordian[m]);
    }
    if *seq.kind() == SeqKind::Classical {
        let expected = Polynomial::new(seq.tag(), nwc_second_table(seq, n)?.row(n).to_vec())?;
        let mut classical = CheckReport::new("ghw-exp-poly/classical", "phi_n(x) = sum_k {n,k} x^k");
        let got = result.to_polynomial();
        let holds = got == expected;
        classical.record(holds, || Witness {
            indices: [("n".to_string(), n as i64)].into(),
            lhs: polynomial_to_json(&got),
            rhs: polynomial_to_json(&expected),
        });
        report.push_child(classical);
    }
    report.set_value("coefficients", result.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>());
    Ok(report)
}

/// `D_n = n_ψ! [x^n] exp(e_ψ(x) − 1)` for `n ≤ n_max`.
pub fn prefab_bell(seq: &PsiSequence, n_max: usize) -> Result<BellSequence> {
    let e = exp_psi_series(seq, n_max)?;
    let shifted = e.sub(&TruncatedSeries::one(seq.tag(), n_max))?;
    let series = shifted.exp()?;
    let values =
        (0..=n_max).map(|n| Ok(&series.coeff(n) * &psi_factorial(seq, n)?)).collect::<Result<Vec<_>>>()?;
    Ok(BellSequence { family: BellFamily::Prefab, seq: seq.clone(), values })
}

/// Unordered decompositions of `F_2^n` into a direct sum of nonzero
/// subspaces, counted by brute force. Vectors are bitmasks; a subspace is the
/// bitset of its members.
pub fn count_direct_sum_decompositions_f2(n: usize) -> Result<u64> {
    if n > 4 {
        return Err(Error::InvalidParameter(format!("brute force limited to n ≤ 4, got {n}")));
    }
    let size = 1usize << n;
    let mut subspaces = Vec::new();
    for set in 1u32..(1u32 << size) {
        if set & 1 == 0 || set == 1 {
            continue;
        }
        let members: Vec<usize> = (0..size).filter(|v| set >> v & 1 == 1).collect();
        if members.iter().all(|&a| members.iter().all(|&b| set >> (a ^ b) & 1 == 1)) {
            subspaces.push(members);
        }
    }
    fn ordered(current: &[usize], full: usize, subspaces: &[Vec<usize>], depth: u64, acc: &mut [u64]) {
        if current.len() == full {
            acc[depth as usize] += 1;
            return;
        }
        for w in subspaces {
            let meets = w.iter().any(|&x| x != 0 && current.contains(&x));
            if meets {
                continue;
            }
            let mut sum: Vec<usize> = current.iter().flat_map(|&a| w.iter().map(move |&b| a ^ b)).collect();
            sum.sort_unstable();
            sum.dedup();
            ordered(&sum, full, subspaces, depth + 1, acc);
        }
    }
    let mut by_length = vec![0u64; n + 1];
    ordered(&[0], size, &subspaces, 0, &mut by_length);
    let mut total = 0;
    let mut fact = 1u64;
    for (k, count) in by_length.iter().enumerate() {
        if k > 0 {
            fact *= k as u64;
        }
        total += count / fact;
    }
    Ok(total)
}

/// `D_n` at `γ = gammaGL@q=2` against the brute-force decomposition count.
pub fn check_prefab(n_max: usize) -> Result<CheckReport> {
    let seq = PsiSequence::parse("gammaGL@q=2")?;
    let d = prefab_bell(&seq, n_max)?;
    let mut report = CheckReport::new("prefab", "sum D_n x^n / n_gamma! = exp(exp_gamma(x) - 1)")
        .param("seq", seq.name())
        .param("n_max", n_max);
    for (n, value) in d.values.iter().enumerate() {
        let count = count_direct_sum_decompositions_f2(n)?;
        report.compare(&[("n", n as i64)], value, &Scalar::from_int(Tag::Rational, count as i64));
    }
    report.set_value("values", d.values.iter().map(scalar_to_json).collect::<Vec<_>>());
    Ok(report)
}

/// Every symbolic-`q` table and Bell sequence evaluated at `q = 1` equals
/// its classical counterpart.
pub fn check_specialization(n_max: usize) -> Result<CheckReport> {
    let q = PsiSequence::q_symbolic();
    let c = PsiSequence::classical();
    let one = rat(1);
    let mut tables = CheckReport::new("specialization/tables", "q -> 1 in every q-table");
    for family in [Family::NwcSecond, Family::CarlitzSecond, Family::NwcFirst, Family::CFirst] {
        let sym = table(family, &q, n_max)?.eval_q(&one)?;
        let classical_family = if family == Family::CarlitzSecond { Family::NwcSecond } else { family };
        let classical = table(classical_family, &c, n_max)?;
        let f = family as i64;
        for n in 0..=n_max {
            for k in 0..=n {
                tables.compare(
                    &[("family", f), ("n", n as i64), ("k", k as i64)],
                    &sym.entry(n, k),
                    &classical.entry(n, k),
                );
            }
        }
    }
    let mut bells = CheckReport::new("specialization/bell", "q -> 1 in every q-Bell sequence");
    let classical = bell_sequence(BellFamily::Classical, &c, n_max)?;
    let families = [
        BellFamily::Nwc,
        BellFamily::CarlitzQ,
        BellFamily::UmbralBinomial,
        BellFamily::Inv,
        BellFamily::Cigl,
    ];
    for (i, family) in families.into_iter().enumerate() {
        let sym = bell_sequence(family, &q, n_max)?;
        for n in 0..=n_max {
            bells.compare(
                &[("family", i as i64), ("n", n as i64)],
                &sym.values[n].eval_q(&one)?,
                &classical.values[n],
            );
        }
    }
    let mut report =
        CheckReport::new("specialization", "q = 1 gives the classical numbers").param("n_max", n_max);
    report.push_child(tables);
    report.push_child(bells);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, QPoly};

    fn qp(coeffs: &[i64]) -> Scalar {
        Scalar::Q(QFrac::from_poly(QPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())))
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(Tag::Rational, n)
    }

    fn tol() -> Rational {
        ratio(1, 1_000_000_000)
    }

    #[test]
    fn prefab_counts() {
        assert_eq!(count_direct_sum_decompositions_f2(1).unwrap(), 1);
        assert_eq!(count_direct_sum_decompositions_f2(2).unwrap(), 4);
        assert!(check_prefab(3).unwrap().holds());
    }

    #[test]
    fn specialization_holds() {
        assert!(check_specialization(6).unwrap().holds());
    }

    #[test]
    fn nwc_bell_values() {
        assert_eq!(bell_nwc(&PsiSequence::classical(), 4).unwrap(), int(15));
        assert_eq!(bell_nwc(&PsiSequence::q_symbolic(), 3).unwrap(), qp(&[4, 1]));
        assert_eq!(bell_nwc(&PsiSequence::fibonomial(), 0).unwrap(), int(1));
    }

    #[test]
    fn epsilon_values() {
        let c = PsiSequence::classical();
        assert_eq!(epsilon_coefficient(&c, 0, 3).unwrap(), Scalar::Rat(ratio(1, 3)));
        assert_eq!(epsilon_coefficient(&PsiSequence::q_symbolic(), 0, 1).unwrap(), Scalar::zero(Tag::Q));
        // single-term truncation
        let q = PsiSequence::q_symbolic();
        let r = 3;
        let mut expected = psi_factorial(&q, r).unwrap();
        for j in 0..r {
            expected = expected.checked_div(&(&q.value(r).unwrap() - &q.value(j).unwrap())).unwrap();
        }
        assert_eq!(epsilon_coefficient(&q, r, r).unwrap(), expected);
        assert!(matches!(
            epsilon_coefficient(&PsiSequence::fibonomial(), 0, 3),
            Err(Error::RepeatedNodes(1, 2))
        ));
        assert!(check_epsilon_literal(&c, 6).unwrap().holds());
        assert!(!check_epsilon_literal(&q, 4).unwrap().holds());
    }

    #[test]
    fn rearrangement() {
        let r = check_dobinski_rearrangement(&PsiSequence::classical(), 5, 10).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["value"], "52");
        let r = check_dobinski_rearrangement(&PsiSequence::q_symbolic(), 3, 6).unwrap();
        assert!(r.holds());
        assert!(check_dobinski_rearrangement(&PsiSequence::hyper(2).unwrap(), 4, 4).unwrap().holds());
        assert!(check_dobinski_rearrangement(&PsiSequence::classical(), 0, 0).unwrap().holds());
    }

    #[test]
    fn exp_pol_ii_and_egf() {
        let c = PsiSequence::classical();
        assert!(check_exp_pol_ii(&c, 4, &rat(1), 6).unwrap().holds());
        let r = check_exp_pol_ii(&c, 1, &rat(2), 12).unwrap();
        assert!(r.informational && !r.holds());
        assert!(check_egf18(&c, 6, 6).unwrap().holds());
        assert!(check_egf18(&PsiSequence::q_symbolic(), 5, 5).unwrap().holds());
    }

    #[test]
    fn numeric_dobinski() {
        let r = dobinski_numeric(&DobinskiVariant::Classical, 5, 60, &tol()).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["exact"], "52");
        let r = dobinski_numeric(&DobinskiVariant::CarlitzQ(ratio(1, 2)), 3, 80, &tol()).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["exact"], "19/8");
        let r = dobinski_numeric(&DobinskiVariant::Cigl(ratio(1, 2)), 2, 60, &tol()).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["exact"], "3/2");
        assert!(dobinski_numeric(&DobinskiVariant::Milne(ratio(1, 2)), 3, 80, &tol()).unwrap().holds());
        let r = dobinski_numeric(&DobinskiVariant::Psi(PsiSequence::fibonomial()), 3, 40, &tol()).unwrap();
        assert!(r.informational && r.values.contains_key("value"));
        assert!(matches!(
            dobinski_numeric(&DobinskiVariant::Classical, 5, 10, &tol()),
            Err(Error::InsufficientTerms { .. })
        ));
        assert!(matches!(
            dobinski_numeric(&DobinskiVariant::Psi(PsiSequence::parse("qferm=1/2").unwrap()), 2, 40, &tol()),
            Err(Error::NotConvergent(_))
        ));
    }

    #[test]
    fn poisson() {
        for seq in [PsiSequence::classical(), PsiSequence::q_numeric(ratio(1, 2)), PsiSequence::fibonomial()]
        {
            assert!(psi_poisson_moment_check(&seq, 4, 80, &tol()).unwrap().holds(), "{seq}");
        }
        let (p0, r) = psi_poisson_pmf(&PsiSequence::classical(), &rat(1), 0, 30, &tol()).unwrap();
        assert!(r.holds());
        assert_eq!(to_decimal(&p0, 9), "0.367879441");
        let (_, r) = psi_poisson_pmf(&PsiSequence::q_numeric(ratio(1, 2)), &rat(1), 3, 60, &tol()).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn umbral_bell() {
        let (b, r) = bell_umbral_binomial(&PsiSequence::classical(), 5).unwrap();
        assert_eq!(b.values, [1, 1, 2, 5, 15, 52].map(int).to_vec());
        assert!(r.holds());
        let (b, r) = bell_umbral_binomial(&PsiSequence::q_symbolic(), 3).unwrap();
        assert_eq!(b.values[2], qp(&[2]));
        assert!(r.informational);
    }

    #[test]
    fn q_bell_recurrences() {
        let r = check_q_bell_recurrences(4).unwrap();
        assert!(!r.asserted_failure());
        assert_eq!(r.children[0].witness.as_ref().unwrap().indices["n"], 2);
        let w = r.children[1].witness.as_ref().unwrap();
        assert_eq!(w.indices["n"], 0);
    }

    #[test]
    fn gordian_series() {
        let (c, r) = gordian_s_psi(&PsiSequence::classical(), 2, 12).unwrap();
        assert_eq!(&c[..4], &[int(0), int(1), int(1), int(0)]);
        assert!(r.holds());
        for n in 0..=4 {
            assert!(gordian_s_psi(&PsiSequence::q_symbolic(), n, 2 * n + 8).unwrap().1.holds());
        }
        let (_, r) = gordian_s_psi(&PsiSequence::fibonomial(), 2, 12).unwrap();
        assert!(!r.asserted_failure());
        assert_eq!(r.values["tail_vanishes"], false);
        let (c, _) = gordian_s_psi(&PsiSequence::classical(), 0, 8).unwrap();
        assert_eq!(c[0], int(1));
        assert!(c[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn ghw_series() {
        let r = ghw_exp_poly_series(&PsiSequence::classical(), 2, 10).unwrap();
        assert!(r.holds());
        let r = ghw_exp_poly_series(&PsiSequence::q_symbolic(), 2, 10).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["coefficients"][2], scalar_to_json(&qp(&[0, 1])));
        assert!(ghw_exp_poly_series(&PsiSequence::classical(), 0, 8).unwrap().holds());
    }

    #[test]
    fn prefab() {
        let b = prefab_bell(&PsiSequence::parse("gammaGL@q=2").unwrap(), 3).unwrap();
        assert_eq!(&b.values[..3], &[int(1), int(1), int(4)]);
        let c = prefab_bell(&PsiSequence::classical(), 5).unwrap();
        assert_eq!(c.values, [1, 1, 2, 5, 15, 52].map(int).to_vec());
    }
}
