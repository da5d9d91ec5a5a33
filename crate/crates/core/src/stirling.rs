//! ψ-extended Stirling numbers of both kinds.
//!
//! The recurrence `{n+1,k}∼ = {n,k−1}∼ + k_ψ {n,k}∼` defines the
//! Newton–Wronski–Comtet ("tilde") family for every sequence; the other
//! routes (generating function, monomial sums, divided differences, the
//! alternating sum) are cross-checks. The Carlitz family exists only for
//! the Gauss `q`-sequence.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalar::{divided_difference, scalar_to_json, Polynomial, Rational, Scalar, Tag, TruncatedSeries};
use crate::sequences::{
    falling_node_poly, psi_binomial, psi_derivative, psi_factorial, psi_falling_power, rising_node_poly,
    PsiSequence, SeqKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `{n,k}∼_ψ`
    NwcSecond,
    /// `{n,k}_q`
    CarlitzSecond,
    /// `[k,r]∼_ψ`, coefficients of `x(x − 1_ψ)⋯(x − (k−1)_ψ)`
    NwcFirst,
    /// `[k,r]^c_ψ`, coefficients of `x(x + 1_ψ)⋯(x + (k−1)_ψ)`
    CFirst,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::NwcSecond => "nwc2",
            Family::CarlitzSecond => "carlitz2",
            Family::NwcFirst => "nwc1",
            Family::CFirst => "c1",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s {
            "nwc2" => Family::NwcSecond,
            "carlitz2" => Family::CarlitzSecond,
            "nwc1" => Family::NwcFirst,
            "c1" => Family::CFirst,
            _ => return Err(Error::Parse(format!("unknown table family '{s}'"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Triangular array `0 ≤ k ≤ n ≤ n_max`; entries with `k > n` read as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingTable {
    family: Family,
    seq: PsiSequence,
    rows: Vec<Vec<Scalar>>,
}

impl StirlingTable {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn seq(&self) -> &PsiSequence {
        &self.seq
    }

    pub fn tag(&self) -> Tag {
        self.seq.tag()
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[Scalar] {
        &self.rows[n]
    }

    pub fn entry(&self, n: usize, k: usize) -> Scalar {
        self.rows.get(n).and_then(|row| row.get(k)).cloned().unwrap_or_else(|| Scalar::zero(self.tag()))
    }

    pub fn row_sum(&self, n: usize) -> Scalar {
        self.rows[n].iter().fold(Scalar::zero(self.tag()), |acc, v| &acc + v)
    }

    /// Substitutes a numeric `q` into a symbolic-`q` table.
    pub fn eval_q(&self, q: &Rational) -> Result<StirlingTable> {
        let seq = self
            .seq
            .at_q(q.clone())
            .ok_or_else(|| Error::InvalidParameter(format!("sequence {} has no symbolic q", self.seq)))?;
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|v| v.eval_q(q)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(StirlingTable { family: self.family, seq, rows })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            self.rows.iter().map(|row| Value::Array(row.iter().map(scalar_to_json).collect())).collect();
        json!({
            "family": self.family.name(),
            "seq": self.seq.name(),
            "n_max": self.n_max(),
            "rows": rows,
        })
    }

    /// One CSV record per row `n`; column `k` holds the rendered entry and
    /// cells above the diagonal are left empty.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["n".to_string()];
        header.extend((0..=self.n_max()).map(|k| format!("k={k}")));
        let csv_err = |e: csv::Error| Error::InvalidParameter(format!("csv output: {e}"));
        w.write_record(&header).map_err(csv_err)?;
        for (n, row) in self.rows.iter().enumerate() {
            let mut rec = vec![n.to_string()];
            rec.extend(row.iter().map(|v| v.to_string()));
            rec.resize(self.n_max() + 2, String::new());
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// `{n,k}∼_ψ` for `n ≤ n_max` by the defining recurrence.
pub fn nwc_second_table(seq: &PsiSequence, n_max: usize) -> Result<StirlingTable> {
    let tag = seq.tag();
    let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::one(tag)]];
    for n in 0..n_max {
        let prev = &rows[n];
        let mut next = vec![Scalar::zero(tag); n + 2];
        for k in 1..=n + 1 {
            let mut v = prev[k - 1].clone();
            if k <= n {
                v = &v + &(&seq.value(k)? * &prev[k]);
            }
            next[k] = v;
        }
        rows.push(next);
    }
    Ok(StirlingTable { family: Family::NwcSecond, seq: seq.clone(), rows })
}

/// Coefficient of `x^n` in `x^k / ((1 − 1_ψ x)⋯(1 − k_ψ x))`.
pub fn nwc_second_via_ogf(seq: &PsiSequence, n: usize, k: usize) -> Result<Scalar> {
    let tag = seq.tag();
    if n < k {
        return Ok(Scalar::zero(tag));
    }
    let order = n - k;
    let mut den = TruncatedSeries::one(tag, order);
    for i in 1..=k {
        let factor = Polynomial::new(tag, vec![Scalar::one(tag), -&seq.value(i)?])?;
        den = den.mul(&TruncatedSeries::from_polynomial(&factor, order))?;
    }
    Ok(den.inverse()?.coeff(order))
}

/// Sum over `1 ≤ i_1 ≤ ⋯ ≤ i_{n−k} ≤ k` of `(i_1)_ψ ⋯ (i_{n−k})_ψ`,
/// enumerating the index sequences one by one.
pub fn nwc_second_monomial_sum(seq: &PsiSequence, n: usize, k: usize) -> Result<Scalar> {
    let tag = seq.tag();
    if n < k {
        return Ok(Scalar::zero(tag));
    }
    let values = seq.nodes(k)?;
    let len = n - k;
    if len == 0 {
        return Ok(Scalar::one(tag));
    }
    if k == 0 {
        return Ok(Scalar::zero(tag));
    }
    let mut total = Scalar::zero(tag);
    let mut idx = vec![1usize; len];
    loop {
        let term = idx.iter().fold(Scalar::one(tag), |acc, &i| &acc * &values[i]);
        total = &total + &term;
        // next weakly increasing sequence
        let Some(pos) = idx.iter().rposition(|&i| i < k) else { break };
        let v = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = v;
        }
    }
    Ok(total)
}

/// Sum over `d_1 + ⋯ + d_k = n − k` of `1_ψ^{d_1} ⋯ k_ψ^{d_k}`.
pub fn nwc_second_compositions(seq: &PsiSequence, n: usize, k: usize) -> Result<Scalar> {
    let tag = seq.tag();
    if n < k {
        return Ok(Scalar::zero(tag));
    }
    let values = seq.nodes(k)?;
    let total = n - k;
    if k == 0 {
        return Ok(if total == 0 { Scalar::one(tag) } else { Scalar::zero(tag) });
    }
    let mut sum = Scalar::zero(tag);
    let mut d = vec![0usize; k];
    d[k - 1] = total;
    loop {
        let term =
            d.iter().enumerate().fold(Scalar::one(tag), |acc, (i, &e)| &acc * &values[i + 1].pow(e as u32));
        sum = &sum + &term;
        // advance to the next composition in reverse-lexicographic order
        let Some(pos) = (0..k - 1).rev().find(|&i| d[i + 1..].iter().sum::<usize>() > 0) else {
            break;
        };
        let rest: usize = d[pos + 1..].iter().sum();
        d[pos] += 1;
        for slot in &mut d[pos + 1..] {
            *slot = 0;
        }
        d[k - 1] = rest - 1;
    }
    Ok(sum)
}

/// `[0, 1_ψ, …, k_ψ; x^n]`; needs distinct nodes.
pub fn nwc_second_divided_diff(seq: &PsiSequence, n: usize, k: usize) -> Result<Scalar> {
    divided_difference(&seq.nodes(k)?, &Polynomial::power(seq.tag(), n))
}

/// `(1/k_ψ!) Σ_{r=1}^{k} (−1)^{k−r} binom_ψ(k, r) r_ψ^n`.
pub fn explicit_alternating_sum(seq: &PsiSequence, n: usize, k: usize) -> Result<Scalar> {
    let tag = seq.tag();
    let mut sum = Scalar::zero(tag);
    for r in 1..=k {
        let term = &psi_binomial(seq, k, r)? * &seq.value(r)?.pow(n as u32);
        sum = if (k - r) % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    sum.checked_div(&psi_factorial(seq, k)?)
}

/// Compares the alternating-sum formula with the recurrence table for
/// `1 ≤ k ≤ n ≤ n_max`. Only the classical case is asserted.
pub fn check_explicit14(seq: &PsiSequence, n_max: usize) -> Result<CheckReport> {
    seq.require_invertible(n_max)?;
    let mut report =
        CheckReport::new("explicit14", "{n,k}~ = (1/k_psi!) sum_{r=1..k} (-1)^(k-r) binom_psi(k,r) r_psi^n")
            .param("seq", seq.name())
            .param("n_max", n_max);
    if !matches!(seq.kind(), SeqKind::Classical) {
        report = report.informational();
    }
    let table = nwc_second_table(seq, n_max)?;
    for n in 1..=n_max {
        for k in 1..=n {
            let rhs = explicit_alternating_sum(seq, n, k)?;
            report.compare(&[("n", n as i64), ("k", k as i64)], &table.entry(n, k), &rhs);
        }
    }
    Ok(report)
}

/// `{n,k}_q` by `{n+1,k}_q = q^{k−1}{n,k−1}_q + k_q{n,k}_q`.
pub fn carlitz_q_table(n_max: usize) -> StirlingTable {
    let seq = PsiSequence::q_symbolic();
    let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::one(Tag::Q)]];
    for n in 0..n_max {
        let prev = &rows[n];
        let mut next = vec![Scalar::zero(Tag::Q); n + 2];
        for k in 1..=n + 1 {
            let mut v = &Scalar::q_pow(k as i64 - 1) * &prev[k - 1];
            if k <= n {
                v = &v + &(&seq.value(k).expect("q values") * &prev[k]);
            }
            next[k] = v;
        }
        rows.push(next);
    }
    StirlingTable { family: Family::CarlitzSecond, seq, rows }
}

/// The Carlitz table for a `q`-sequence, symbolic or substituted.
pub fn carlitz_table_for(seq: &PsiSequence, n_max: usize) -> Result<StirlingTable> {
    match seq.kind() {
        SeqKind::QGaussSymbolic => Ok(carlitz_q_table(n_max)),
        SeqKind::QGaussNumeric(q) => carlitz_q_table(n_max).eval_q(q),
        _ => Err(Error::InvalidParameter(format!("the Carlitz family needs a q-sequence, got {seq}"))),
    }
}

/// `N_q^n = Σ_k {n,k}_q N_q(N−1)_q⋯(N−k+1)_q` for `0 ≤ N ≤ n_max + 2`.
pub fn check_carlitz_defining(n_max: usize) -> CheckReport {
    let seq = PsiSequence::q_symbolic();
    let table = carlitz_q_table(n_max);
    let mut report = CheckReport::new("carlitz-defining", "x_q^n = sum_k {n,k}_q x_q(x-1)_q...(x-k+1)_q")
        .param("n_max", n_max);
    for n in 0..=n_max {
        for big_n in 0..=n_max + 2 {
            let lhs = seq.value(big_n).expect("q values").pow(n as u32);
            let mut rhs = Scalar::zero(Tag::Q);
            for k in 0..=n {
                let fp = psi_falling_power(&seq, big_n, k).expect("q values");
                rhs = &rhs + &(&table.entry(n, k) * &fp);
            }
            report.compare(&[("n", n as i64), ("N", big_n as i64)], &lhs, &rhs);
        }
    }
    report
}

/// `{n,k}∼_q = q^{−k(k−1)/2} {n,k}_q` for all `k ≤ n ≤ n_max`.
pub fn check_rescal(n_max: usize) -> CheckReport {
    let tilde = nwc_second_table(&PsiSequence::q_symbolic(), n_max).expect("q values");
    let carlitz = carlitz_q_table(n_max);
    let mut report = CheckReport::new("rescal", "{n,k}~_q = q^(-binom(k,2)) {n,k}_q")
        .param("seq", "q")
        .param("n_max", n_max);
    for n in 0..=n_max {
        for k in 0..=n {
            let e = (k * k.saturating_sub(1) / 2) as i64;
            let rhs = &Scalar::q_pow(-e) * &carlitz.entry(n, k);
            report.compare(&[("n", n as i64), ("k", k as i64)], &tilde.entry(n, k), &rhs);
        }
    }
    report
}

/// `Δ_q^k x_q^n |_{x=0}` through the expansion of `∏_{j<k}(E − q^j)`:
/// `Σ_m (−1)^{k−m} q^{binom(k−m,2)} [k, k−m]_q m_q^n`.
pub fn milne_delta_q(n: usize, k: usize) -> Scalar {
    let seq = PsiSequence::q_symbolic();
    let mut sum = Scalar::zero(Tag::Q);
    for m in 0..=k {
        let j = k - m;
        let gauss = psi_binomial(&seq, k, j).expect("q factorials are invertible");
        let weight = &Scalar::q_pow((j * j.saturating_sub(1) / 2) as i64) * &gauss;
        let term = &weight * &seq.value(m).expect("q values").pow(n as u32);
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    sum
}

/// `Δ_q^k x_q^n |_0 = k_q! {n,k}_q` for `k ≤ n ≤ n_max`.
pub fn check_milne(n_max: usize) -> CheckReport {
    let seq = PsiSequence::q_symbolic();
    let table = carlitz_q_table(n_max);
    let mut report = CheckReport::new("milne", "Delta_q^k x_q^n |_(x=0) = k_q! {n,k}_q")
        .param("seq", "q")
        .param("n_max", n_max);
    for n in 0..=n_max {
        for k in 0..=n {
            let rhs = &psi_factorial(&seq, k).expect("q values") * &table.entry(n, k);
            report.compare(&[("n", n as i64), ("k", k as i64)], &milne_delta_q(n, k), &rhs);
        }
    }
    report
}

/// `φ∼_n(ψ, y) = Σ_k {n,k}∼_ψ y^k`, with a report verifying
/// `φ∼_m = y(1 + ∂_ψ) φ∼_{m−1}` for `1 ≤ m ≤ n`.
pub fn exp_poly_nwc(seq: &PsiSequence, n: usize) -> Result<(Polynomial, CheckReport)> {
    let table = nwc_second_table(seq, n)?;
    let mut polys =
        (0..=n).map(|m| Polynomial::new(seq.tag(), table.row(m).to_vec())).collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new("exp-poly-operator", "phi~_n = [y(1 + d_psi)] phi~_(n-1)")
        .param("seq", seq.name())
        .param("n", n);
    for m in 1..=n {
        let prev = &polys[m - 1];
        let applied = prev.add(&psi_derivative(prev, seq)?).shift(1);
        let holds = applied == polys[m];
        report.record(holds, || crate::report::Witness {
            indices: [("n".to_string(), m as i64)].into(),
            lhs: crate::scalar::polynomial_to_json(&polys[m]),
            rhs: crate::scalar::polynomial_to_json(&applied),
        });
    }
    Ok((polys.swap_remove(n), report))
}

/// `φ_n(x, q) = Σ_k {n,k}_q x^k`, with a report checking it against the
/// `q^{binom(k,2)}`-weighted divided differences `[0, 1_q, …, k_q; e_n]`.
pub fn exp_poly_carlitz(n: usize) -> (Polynomial, CheckReport) {
    let seq = PsiSequence::q_symbolic();
    let table = carlitz_q_table(n);
    let poly = Polynomial::new(Tag::Q, table.row(n).to_vec()).expect("q entries");
    let mut report =
        CheckReport::new("q-exp-pol", "sum_k {n,k}_q x^k = sum_k q^binom(k,2) [0,1_q,...,k_q; e_n] x^k")
            .param("n", n);
    for k in 0..=n {
        let dd = nwc_second_divided_diff(&seq, n, k).expect("q nodes are distinct");
        let weighted = &Scalar::q_pow((k * k.saturating_sub(1) / 2) as i64) * &dd;
        report.compare(&[("n", n as i64), ("k", k as i64)], &table.entry(n, k), &weighted);
    }
    (poly, report)
}

fn coefficient_table(
    family: Family,
    seq: &PsiSequence,
    k_max: usize,
    poly: fn(&PsiSequence, usize) -> Result<Polynomial>,
) -> Result<StirlingTable> {
    let rows = (0..=k_max)
        .map(|k| {
            let p = poly(seq, k)?;
            Ok((0..=k).map(|r| p.coeff(r)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StirlingTable { family, seq: seq.clone(), rows })
}

/// `[k,r]∼_ψ`: coefficients of the falling node polynomial.
pub fn first_kind_nwc_table(seq: &PsiSequence, k_max: usize) -> Result<StirlingTable> {
    coefficient_table(Family::NwcFirst, seq, k_max, falling_node_poly)
}

/// `[k,r]^c_ψ`: coefficients of the rising node polynomial.
pub fn first_kind_c_table(seq: &PsiSequence, k_max: usize) -> Result<StirlingTable> {
    coefficient_table(Family::CFirst, seq, k_max, rising_node_poly)
}

/// Any family by name, as used by the `table` command.
pub fn table(family: Family, seq: &PsiSequence, n_max: usize) -> Result<StirlingTable> {
    match family {
        Family::NwcSecond => nwc_second_table(seq, n_max),
        Family::CarlitzSecond => carlitz_table_for(seq, n_max),
        Family::NwcFirst => first_kind_nwc_table(seq, n_max),
        Family::CFirst => first_kind_c_table(seq, n_max),
    }
}

/// `Σ_r [k,r]∼_ψ {r,l}∼_ψ = δ_{k,l}` for `k, l ≤ k_max`.
pub fn check_orthogonality(seq: &PsiSequence, k_max: usize) -> Result<CheckReport> {
    let first = first_kind_nwc_table(seq, k_max)?;
    let second = nwc_second_table(seq, k_max)?;
    let tag = seq.tag();
    let mut report = CheckReport::new("orthogonality", "sum_r [k,r]~ {r,l}~ = delta_(k,l)")
        .param("seq", seq.name())
        .param("k_max", k_max);
    for k in 0..=k_max {
        for l in 0..=k_max {
            let mut sum = Scalar::zero(tag);
            for r in l..=k {
                sum = &sum + &(&first.entry(k, r) * &second.entry(r, l));
            }
            let delta = if k == l { Scalar::one(tag) } else { Scalar::zero(tag) };
            report.compare(&[("k", k as i64), ("l", l as i64)], &sum, &delta);
        }
    }
    Ok(report)
}

/// `x^n = Σ_k {n,k}∼_ψ x(x − 1_ψ)⋯(x − (k−1)_ψ)` as polynomials.
pub fn check_basis_change(seq: &PsiSequence, n_max: usize) -> Result<CheckReport> {
    let table = nwc_second_table(seq, n_max)?;
    let falling = (0..=n_max).map(|k| falling_node_poly(seq, k)).collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new("basis-change", "x^n = sum_k {n,k}~ psi_k(x)")
        .param("seq", seq.name())
        .param("n_max", n_max);
    for n in 0..=n_max {
        let mut sum = Polynomial::zero(seq.tag());
        for (k, p) in falling.iter().enumerate().take(n + 1) {
            sum = sum.add(&p.scale(&table.entry(n, k)));
        }
        let target = Polynomial::power(seq.tag(), n);
        let holds = sum == target;
        report.record(holds, || crate::report::Witness {
            indices: [("n".to_string(), n as i64)].into(),
            lhs: crate::scalar::polynomial_to_json(&target),
            rhs: crate::scalar::polynomial_to_json(&sum),
        });
    }
    Ok(report)
}

/// Agreement of the recurrence with the generating function, both monomial
/// sums and (for distinct nodes) divided differences, `k ≤ n ≤ n_max`.
pub fn check_nwc_routes(seq: &PsiSequence, n_max: usize) -> Result<CheckReport> {
    let table = nwc_second_table(seq, n_max)?;
    let with_dd = seq.require_distinct(n_max).is_ok();
    let mut report = CheckReport::new(
        "nwc-routes",
        "recurrence = x^k/prod(1 - i_psi x) = monomial sums = [0,1_psi,...,k_psi; e_n]",
    )
    .param("seq", seq.name())
    .param("n_max", n_max)
    .param("divided_differences", with_dd);
    for n in 0..=n_max {
        for k in 0..=n {
            let idx = [("n", n as i64), ("k", k as i64)];
            let expected = table.entry(n, k);
            report.compare(&idx, &expected, &nwc_second_via_ogf(seq, n, k)?);
            report.compare(&idx, &expected, &nwc_second_monomial_sum(seq, n, k)?);
            report.compare(&idx, &expected, &nwc_second_compositions(seq, n, k)?);
            if with_dd {
                report.compare(&idx, &expected, &nwc_second_divided_diff(seq, n, k)?);
            }
        }
    }
    Ok(report)
}

/// Literal evaluation of the two binomial-convolution recurrences printed
/// for `{n,k}_q` and `{n,k}∼_q`. Recorded, not asserted.
pub fn check_convolution_recurrences(n_max: usize) -> CheckReport {
    let seq = PsiSequence::q_symbolic();
    let carlitz = carlitz_q_table(n_max + 1);
    let tilde = nwc_second_table(&seq, n_max + 1).expect("q values");
    let binom = |n: usize, l: usize| psi_binomial(&seq, n, l).expect("q binomials");

    let mut first =
        CheckReport::new("conv-recurrences/carlitz", "{n+1,k}_q = sum_l binom_q(n,l) q^l {l,k-1}_q")
            .informational()
            .param("n_max", n_max);
    let mut second =
        CheckReport::new("conv-recurrences/tilde", "{n+1,k}~_q = sum_l binom_q(n,l) q^(l-k+1) {l,k-1}~_q")
            .informational()
            .param("n_max", n_max);
    for n in 0..=n_max {
        for k in 1..=n + 1 {
            let idx = [("n", n as i64), ("k", k as i64)];
            let mut rhs1 = Scalar::zero(Tag::Q);
            let mut rhs2 = Scalar::zero(Tag::Q);
            for l in 0..=n {
                let b = binom(n, l);
                rhs1 = &rhs1 + &(&(&b * &Scalar::q_pow(l as i64)) * &carlitz.entry(l, k - 1));
                let e = l as i64 - k as i64 + 1;
                rhs2 = &rhs2 + &(&(&b * &Scalar::q_pow(e)) * &tilde.entry(l, k - 1));
            }
            first.compare(&idx, &carlitz.entry(n + 1, k), &rhs1);
            second.compare(&idx, &tilde.entry(n + 1, k), &rhs2);
        }
    }
    let mut report =
        CheckReport::new("conv-recurrences", "binomial-convolution recurrences for q-Stirling numbers")
            .informational()
            .param("n_max", n_max);
    report.push_child(first);
    report.push_child(second);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, QFrac, QPoly};

    fn qp(coeffs: &[i64]) -> Scalar {
        Scalar::Q(QFrac::from_poly(QPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())))
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(Tag::Rational, n)
    }

    #[test]
    fn recurrence_values() {
        let q = nwc_second_table(&PsiSequence::q_symbolic(), 3).unwrap();
        assert_eq!(q.entry(3, 2), qp(&[2, 1]));
        let fib = nwc_second_table(&PsiSequence::fibonomial(), 3).unwrap();
        assert_eq!(fib.entry(3, 2), int(2));
        for n in 0..=3 {
            assert_eq!(fib.entry(n, 0), int(i64::from(n == 0)));
            assert_eq!(fib.entry(n, n), int(1));
        }
    }

    #[test]
    fn ogf_and_sums() {
        let c = PsiSequence::classical();
        assert_eq!(nwc_second_via_ogf(&c, 3, 2).unwrap(), int(3));
        assert_eq!(nwc_second_via_ogf(&PsiSequence::q_symbolic(), 3, 2).unwrap(), qp(&[2, 1]));
        assert_eq!(nwc_second_via_ogf(&c, 4, 4).unwrap(), int(1));
        let fib = PsiSequence::fibonomial();
        assert_eq!(nwc_second_monomial_sum(&fib, 3, 2).unwrap(), int(2));
        assert_eq!(nwc_second_monomial_sum(&fib, 5, 5).unwrap(), int(1));
        assert_eq!(nwc_second_monomial_sum(&c, 4, 2).unwrap(), int(7));
        assert_eq!(nwc_second_compositions(&c, 4, 2).unwrap(), int(7));
        assert_eq!(nwc_second_compositions(&c, 6, 3).unwrap(), int(90));
    }

    #[test]
    fn divided_difference_route() {
        let c = PsiSequence::classical();
        assert_eq!(nwc_second_divided_diff(&c, 3, 2).unwrap(), int(3));
        assert!(nwc_second_divided_diff(&PsiSequence::q_symbolic(), 3, 3).unwrap().is_one());
        assert_eq!(
            nwc_second_divided_diff(&PsiSequence::fibonomial(), 3, 2),
            Err(Error::RepeatedNodes(1, 2))
        );
    }

    #[test]
    fn explicit_formula() {
        assert!(check_explicit14(&PsiSequence::classical(), 6).unwrap().holds());
        let vacuous = check_explicit14(&PsiSequence::classical(), 0).unwrap();
        assert!(vacuous.holds() && vacuous.cases == 0);
        let q = check_explicit14(&PsiSequence::q_symbolic(), 4).unwrap();
        assert!(q.informational);
    }

    #[test]
    fn carlitz_values() {
        let t = carlitz_q_table(8);
        assert_eq!(t.entry(2, 2), qp(&[0, 1]));
        assert_eq!(t.entry(3, 2), qp(&[0, 2, 1]));
        for n in 0..=8i64 {
            assert_eq!(t.entry(n as usize, n as usize), Scalar::q_pow(n * (n - 1) / 2));
        }
        assert!(check_carlitz_defining(6).holds());
        assert!(check_rescal(8).holds());
    }

    #[test]
    fn milne_values() {
        assert_eq!(milne_delta_q(2, 2), qp(&[0, 1, 1]));
        assert!(milne_delta_q(4, 1).is_one());
        assert!(milne_delta_q(0, 0).is_one());
        assert!(milne_delta_q(3, 0).is_zero());
        assert!(check_milne(6).holds());
    }

    #[test]
    fn exponential_polynomials() {
        let (p, r) = exp_poly_nwc(&PsiSequence::classical(), 2).unwrap();
        assert_eq!(p, Polynomial::from_ints(Tag::Rational, &[0, 1, 1]));
        assert!(r.holds());
        let (p, r) = exp_poly_nwc(&PsiSequence::q_symbolic(), 2).unwrap();
        assert_eq!(p, Polynomial::from_ints(Tag::Q, &[0, 1, 1]));
        assert!(r.holds());
        let (p, _) = exp_poly_nwc(&PsiSequence::fibonomial(), 0).unwrap();
        assert_eq!(p, Polynomial::one(Tag::Rational));
        let (p, r) = exp_poly_carlitz(2);
        assert_eq!(p, Polynomial::new(Tag::Q, vec![Scalar::zero(Tag::Q), qp(&[1]), qp(&[0, 1])]).unwrap());
        assert!(r.holds());
    }

    #[test]
    fn first_kind() {
        let c = PsiSequence::classical();
        let t = first_kind_nwc_table(&c, 3).unwrap();
        assert_eq!(t.row(3), &[int(0), int(2), int(-3), int(1)]);
        let t = first_kind_nwc_table(&PsiSequence::q_symbolic(), 2).unwrap();
        assert_eq!(t.row(2), &[qp(&[]), qp(&[-1]), qp(&[1])]);
        let t = first_kind_c_table(&c, 2).unwrap();
        assert_eq!(t.row(2), &[int(0), int(1), int(1)]);
        let t = first_kind_c_table(&PsiSequence::fibonomial(), 3).unwrap();
        assert_eq!(t.row(3), &[int(0), int(1), int(2), int(1)]);
        assert_eq!(t.row(0), &[int(1)]);
    }

    #[test]
    fn orthogonality_and_basis() {
        for seq in [PsiSequence::classical(), PsiSequence::fibonomial()] {
            assert!(check_orthogonality(&seq, 8).unwrap().holds());
            assert!(check_basis_change(&seq, 8).unwrap().holds());
        }
    }

    #[test]
    fn convolution_recurrence_witnesses() {
        let r = check_convolution_recurrences(4);
        assert!(r.informational);
        let tilde = &r.children[1];
        let w = tilde.witness.as_ref().unwrap();
        // first failure of the tilde form is at n = 2, k = 2
        assert_eq!((w.indices["n"], w.indices["k"]), (2, 2));
        assert_eq!(w.lhs, scalar_to_json(&qp(&[2, 1])));
        assert_eq!(w.rhs, scalar_to_json(&qp(&[1, 2])));
    }

    #[test]
    fn csv_and_json() {
        let t = nwc_second_table(&PsiSequence::q_symbolic(), 2).unwrap();
        let csv = t.to_csv().unwrap();
        assert_eq!(csv.lines().next().unwrap(), "n,k=0,k=1,k=2");
        assert_eq!(csv.lines().nth(3).unwrap(), "2,0,1,1");
        assert_eq!(t.to_json()["rows"][1][1], json!({"num": ["1"], "den": ["1"]}));
    }
}
