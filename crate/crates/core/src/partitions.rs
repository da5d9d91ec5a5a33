//! Set partitions, the `inv` and `cigl` statistics, and the q-Stirling
//! polynomials they generate.
//!
//! A partition of an `n`-element set is stored as its restricted growth
//! string: element `i` (0-based) carries the label of its block, labels
//! numbered in order of first appearance.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalar::{rat, scalar_to_json, Polynomial, QFrac, QPoly, Rational, Scalar, Tag};
use crate::sequences::{falling_node_poly, psi_binomial, PsiSequence};
use crate::stirling::{carlitz_q_table, nwc_second_table};

/// Largest `n` the statistic tables accept.
pub const MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Inversions of the standard form over `{1..n}`.
    Inv,
    /// Sum of the elements in the block of `0`, over `{0..n−1}`.
    Cigl,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Inv => "inv",
            Statistic::Cigl => "cigl",
        }
    }

    pub fn parse(s: &str) -> Result<Statistic> {
        match s {
            "inv" => Ok(Statistic::Inv),
            "cigl" => Ok(Statistic::Cigl),
            _ => Err(Error::Parse(format!("unknown statistic '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        let mut next = 0u8;
        for &a in &rgs {
            if a > next {
                return Err(Error::InvalidParameter(format!("{rgs:?} is not a restricted growth string")));
            }
            if a == next {
                next += 1;
            }
        }
        Ok(SetPartition { rgs })
    }

    /// Builds a partition from blocks over `{base, …, base + n − 1}`.
    pub fn from_blocks(blocks: &[Vec<usize>], base: usize) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut label = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidParameter("empty block".into()));
            }
            for &e in block {
                let i = e
                    .checked_sub(base)
                    .filter(|&i| i < n)
                    .ok_or_else(|| Error::InvalidParameter(format!("element {e} outside the ground set")))?;
                if label[i].replace(b).is_some() {
                    return Err(Error::InvalidParameter(format!("element {e} appears twice")));
                }
            }
        }
        // relabel in order of first appearance
        let mut map = BTreeMap::new();
        let rgs = label
            .into_iter()
            .map(|b| {
                let b = b.expect("every element is covered");
                let fresh = map.len() as u8;
                *map.entry(b).or_insert(fresh)
            })
            .collect();
        Ok(SetPartition { rgs })
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks over `{base, …}` ordered by their smallest element.
    pub fn blocks(&self, base: usize) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &a) in self.rgs.iter().enumerate() {
            blocks[a as usize].push(i + base);
        }
        blocks
    }

    /// Standard form over `{1..n}`: blocks ordered by increasing maximum.
    pub fn standard_form(&self) -> Vec<Vec<usize>> {
        let mut blocks = self.blocks(1);
        blocks.sort_by_key(|b| *b.last().expect("blocks are nonempty"));
        blocks
    }

    /// `b_i` = 1-based position in the standard form of the block holding `i`.
    pub fn block_index_vector(&self) -> Vec<usize> {
        block_ranks(&self.rgs)
    }

    pub fn inv(&self) -> usize {
        inv_of(&self.rgs)
    }

    pub fn cigl(&self) -> usize {
        cigl_of(&self.rgs)
    }

    pub fn statistic(&self, stat: Statistic) -> usize {
        match stat {
            Statistic::Inv => self.inv(),
            Statistic::Cigl => self.cigl(),
        }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .standard_form()
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", parts.join("}/{"))
    }
}

fn block_ranks(rgs: &[u8]) -> Vec<usize> {
    let blocks = rgs.iter().max().map_or(0, |&m| m as usize + 1);
    let mut max_of = vec![0usize; blocks];
    for (i, &a) in rgs.iter().enumerate() {
        max_of[a as usize] = i;
    }
    // rank of a block = number of blocks whose maximum is not larger
    let rank: Vec<usize> = (0..blocks).map(|b| max_of.iter().filter(|&&m| m <= max_of[b]).count()).collect();
    rgs.iter().map(|&a| rank[a as usize]).collect()
}

fn inv_of(rgs: &[u8]) -> usize {
    let b = block_ranks(rgs);
    let mut count = 0;
    for i in 0..b.len() {
        for j in 0..i {
            if b[i] < b[j] {
                count += 1;
            }
        }
    }
    count
}

fn cigl_of(rgs: &[u8]) -> usize {
    rgs.iter().enumerate().filter(|(_, &a)| a == 0).map(|(i, _)| i).sum()
}

/// Restricted growth strings of length `n` in lexicographic order.
struct RgsCursor {
    a: Vec<u8>,
    // prefix maxima: m[i] = max(a[0..=i])
    m: Vec<u8>,
    started: bool,
}

impl RgsCursor {
    fn new(n: usize) -> Self {
        RgsCursor { a: vec![0; n], m: vec![0; n], started: false }
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.a.len();
        for i in (1..n).rev() {
            if self.a[i] <= self.m[i - 1] {
                self.a[i] += 1;
                self.m[i] = self.m[i - 1].max(self.a[i]);
                for j in i + 1..n {
                    self.a[j] = 0;
                    self.m[j] = self.m[i];
                }
                return true;
            }
        }
        false
    }
}

/// Iterator over the partitions of an `n`-set.
pub struct Partitions {
    cursor: RgsCursor,
    k: Option<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        while !self.done {
            if !self.cursor.advance() {
                self.done = true;
                break;
            }
            let blocks = self.cursor.m.last().map_or(0, |&m| m as usize + 1);
            if self.k.is_none_or(|k| k == blocks) {
                return Some(SetPartition { rgs: self.cursor.a.clone() });
            }
        }
        None
    }
}

/// Every partition of an `n`-set exactly once, in restricted-growth-string
/// order, optionally only those with `k` blocks.
pub fn enumerate_partitions(n: usize, k: Option<usize>) -> Result<Partitions> {
    if n == 0 || n > MAX_N {
        return Err(Error::IndexOutOfRange(format!("partitions need 1 ≤ n ≤ {MAX_N}, got {n}")));
    }
    Ok(Partitions { cursor: RgsCursor::new(n), k, done: false })
}

pub fn inv_statistic(p: &SetPartition) -> usize {
    p.inv()
}

pub fn cigl_statistic(p: &SetPartition) -> usize {
    p.cigl()
}

/// Distribution of a statistic: `counts[k][s]` = number of `k`-block
/// partitions of an `n`-set with statistic value `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatisticTable {
    pub n: usize,
    pub stat: Statistic,
    pub counts: Vec<Vec<u64>>,
}

impl StatisticTable {
    pub fn compute(n: usize, stat: Statistic) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::IndexOutOfRange(format!("statistics need n ≤ {MAX_N}, got {n}")));
        }
        let mut counts = vec![Vec::new(); n + 1];
        if n == 0 {
            counts[0] = vec![1];
            return Ok(StatisticTable { n, stat, counts });
        }
        let mut cursor = RgsCursor::new(n);
        while cursor.advance() {
            let k = cursor.m[n - 1] as usize + 1;
            let s = match stat {
                Statistic::Inv => inv_of(&cursor.a),
                Statistic::Cigl => cigl_of(&cursor.a),
            };
            let row = &mut counts[k];
            if row.len() <= s {
                row.resize(s + 1, 0);
            }
            row[s] += 1;
        }
        Ok(StatisticTable { n, stat, counts })
    }

    /// `Σ_{π ∈ A_{n,k}} q^{stat(π)}`.
    pub fn stirling(&self, k: usize) -> QPoly {
        counts_poly(self.counts.get(k).map_or(&[][..], |c| c.as_slice()))
    }

    /// Sum over all `k`.
    pub fn bell(&self) -> QPoly {
        let mut total: Vec<u64> = Vec::new();
        for row in &self.counts {
            if total.len() < row.len() {
                total.resize(row.len(), 0);
            }
            for (s, c) in row.iter().enumerate() {
                total[s] += c;
            }
        }
        counts_poly(&total)
    }
}

fn counts_poly(counts: &[u64]) -> QPoly {
    QPoly::from_coeffs(counts.iter().map(|&c| Rational::from_integer(c.into())).collect())
}

fn q_scalar(p: QPoly) -> Scalar {
    Scalar::Q(QFrac::from_poly(p))
}

/// `{n,k}^{stat}_q` as a polynomial in `q`.
pub fn statistic_stirling(n: usize, k: usize, stat: Statistic) -> Result<QPoly> {
    Ok(StatisticTable::compute(n, stat)?.stirling(k))
}

/// `Σ_k {n,k}^{stat}_q`.
pub fn statistic_bell(n: usize, stat: Statistic) -> Result<QPoly> {
    Ok(StatisticTable::compute(n, stat)?.bell())
}

fn stat_tables(n_max: usize, stat: Statistic) -> Result<Vec<StatisticTable>> {
    (0..=n_max).map(|n| StatisticTable::compute(n, stat)).collect()
}

/// `{n+1,k}^{inv}_q = Σ_l binom_q(n,l) {n−l,k−1}^{inv}_q` against enumeration.
pub fn check_inv_recurrence(n_max: usize) -> Result<CheckReport> {
    let tables = stat_tables(n_max + 1, Statistic::Inv)?;
    let q = PsiSequence::q_symbolic();
    let mut report = CheckReport::new("inv-recurrence", "{n+1,k}^inv_q = sum_l binom_q(n,l) {n-l,k-1}^inv_q")
        .param("n_max", n_max);
    for n in 0..=n_max {
        for k in 1..=n + 1 {
            let lhs = q_scalar(tables[n + 1].stirling(k));
            let mut rhs = Scalar::zero(Tag::Q);
            for l in 0..=n {
                let term = &psi_binomial(&q, n, l)? * &q_scalar(tables[n - l].stirling(k - 1));
                rhs = &rhs + &term;
            }
            report.compare(&[("n", n as i64), ("k", k as i64)], &lhs, &rhs);
        }
    }
    Ok(report)
}

/// The printed `cigl` recurrence (recorded only) and the identity
/// `x(x−1+q)⋯(x−1+q^{n−1}) = Σ_k {n,k}^{cigl}_q x(x−1)⋯(x−k+1)` (asserted).
pub fn check_cigl(n_max: usize) -> Result<CheckReport> {
    let tables = stat_tables(n_max + 1, Statistic::Cigl)?;
    let q = PsiSequence::q_symbolic();

    let mut literal = CheckReport::new(
        "cigl/recurrence",
        "{n+1,k}^cigl_q = sum_l binom_q(n,l) q^binom(n-l+1,2) {n-l,k-1}^cigl_q",
    )
    .informational()
    .param("n_max", n_max);
    for n in 0..=n_max {
        for k in 1..=n + 1 {
            let lhs = q_scalar(tables[n + 1].stirling(k));
            let mut rhs = Scalar::zero(Tag::Q);
            for l in 0..=n {
                let m = n - l + 1;
                let weight = &psi_binomial(&q, n, l)? * &Scalar::q_pow((m * (m - 1) / 2) as i64);
                rhs = &rhs + &(&weight * &q_scalar(tables[n - l].stirling(k - 1)));
            }
            literal.compare(&[("n", n as i64), ("k", k as i64)], &lhs, &rhs);
        }
    }

    let mut identity =
        CheckReport::new("cigl/identity", "x(x-1+q)...(x-1+q^(n-1)) = sum_k {n,k}^cigl_q x(x-1)...(x-k+1)")
            .param("n_max", n_max);
    let classical = PsiSequence::classical();
    for n in 0..=n_max {
        let mut lhs = Polynomial::one(Tag::Q);
        for j in 0..n {
            let root = &Scalar::one(Tag::Q) - &Scalar::q_pow(j as i64);
            lhs = lhs.mul_linear(&root);
        }
        let mut rhs = Polynomial::zero(Tag::Q);
        for k in 0..=n {
            let falling = falling_node_poly(&classical, k)?.try_map(Tag::Q, |c| {
                Ok(Scalar::from_rational(Tag::Q, c.as_rational().expect("rational").clone()))
            })?;
            rhs = rhs.add(&falling.scale(&q_scalar(tables[n].stirling(k))));
        }
        let holds = lhs == rhs;
        identity.record(holds, || crate::report::Witness {
            indices: [("n".to_string(), n as i64)].into(),
            lhs: crate::scalar::polynomial_to_json(&lhs),
            rhs: crate::scalar::polynomial_to_json(&rhs),
        });
    }

    let mut report = CheckReport::new("cigl", "cigl-q-Stirling numbers: recurrence and Cigler identity")
        .param("n_max", n_max);
    report.push_child(literal);
    report.push_child(identity);
    Ok(report)
}

/// For each statistic and `k ≤ n ≤ n_max`, which named `q`-Stirling family
/// the statistic polynomial coincides with.
pub fn family_match_report(n_max: usize) -> Result<CheckReport> {
    let tilde = nwc_second_table(&PsiSequence::q_symbolic(), n_max)?;
    let carlitz = carlitz_q_table(n_max);
    let mut report =
        CheckReport::new("family-match", "which q-Stirling family each partition statistic counts")
            .informational()
            .param("n_max", n_max);
    for stat in [Statistic::Inv, Statistic::Cigl] {
        let tables = stat_tables(n_max, stat)?;
        let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
        let mut cells = Vec::new();
        for n in 0..=n_max {
            for k in 0..=n {
                let value = q_scalar(tables[n].stirling(k));
                let c = carlitz.entry(n, k);
                let rescaled = &Scalar::q_pow(-((k * k.saturating_sub(1) / 2) as i64)) * &c;
                let mut labels = Vec::new();
                if value == tilde.entry(n, k) {
                    labels.push("tilde");
                }
                if value == c {
                    labels.push("carlitz");
                }
                if value == rescaled {
                    labels.push("rescaled-carlitz");
                }
                if labels.is_empty() {
                    labels.push("neither");
                }
                for l in &labels {
                    *tally.entry(l).or_default() += 1;
                }
                cells.push(json!({"n": n, "k": k, "value": scalar_to_json(&value), "matches": labels}));
            }
        }
        let total = cells.len();
        let everywhere: Vec<&str> = tally.iter().filter(|(_, &c)| c == total).map(|(l, _)| *l).collect();
        let summary: Value = json!({
            "cells": cells,
            "tally": tally,
            "matches_everywhere": everywhere,
        });
        report.set_value(stat.name(), summary);
    }
    Ok(report)
}

/// Statistic polynomials at `q = 1` count partitions: both equal `{n,k}`.
pub fn check_statistics_classical(n_max: usize) -> Result<CheckReport> {
    let classical = nwc_second_table(&PsiSequence::classical(), n_max)?;
    let mut report =
        CheckReport::new("statistics-classical", "{n,k}^stat_q at q=1 = {n,k}").param("n_max", n_max);
    for stat in [Statistic::Inv, Statistic::Cigl] {
        let tables = stat_tables(n_max, stat)?;
        for n in 0..=n_max {
            for k in 0..=n {
                let at_one = Scalar::Rat(tables[n].stirling(k).eval(&rat(1)));
                report.compare(&[("n", n as i64), ("k", k as i64)], &at_one, &classical.entry(n, k));
            }
        }
    }
    Ok(report)
}

/// Bell numbers by `B_{n+1} = Σ_k C(n,k) B_k`.
pub fn bell_numbers(n_max: usize) -> Vec<Rational> {
    let mut b = vec![rat(1)];
    for n in 0..n_max {
        let next = (0..=n).map(|k| crate::scalar::binomial(n, k) * &b[k]).sum();
        b.push(next);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(3, None).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(3, Some(2)).unwrap().count(), 3);
        assert_eq!(enumerate_partitions(1, None).unwrap().count(), 1);
        let bell = bell_numbers(8);
        for n in 1..=8 {
            assert_eq!(
                Rational::from_integer(enumerate_partitions(n, None).unwrap().count().into()),
                bell[n]
            );
        }
    }

    #[test]
    fn rgs_order_is_lexicographic() {
        let all: Vec<Vec<u8>> = enumerate_partitions(3, None).unwrap().map(|p| p.rgs().to_vec()).collect();
        assert_eq!(all, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn inversions() {
        let p = SetPartition::from_blocks(&[vec![2], vec![1, 3]], 1).unwrap();
        assert_eq!(p.block_index_vector(), vec![2, 1, 2]);
        assert_eq!(inv_statistic(&p), 1);
        assert_eq!(p.to_string(), "{2}/{1,3}");
        let single = SetPartition::from_blocks(&[vec![1, 2, 3, 4]], 1).unwrap();
        assert_eq!(single.inv(), 0);
        let singletons = SetPartition::from_rgs(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(singletons.inv(), 0);
    }

    #[test]
    fn cigl_values() {
        let p = |blocks: &[Vec<usize>]| SetPartition::from_blocks(blocks, 0).unwrap();
        assert_eq!(cigl_statistic(&p(&[vec![0, 1]])), 1);
        assert_eq!(cigl_statistic(&p(&[vec![0], vec![1]])), 0);
        assert_eq!(cigl_statistic(&p(&[vec![0, 2], vec![1]])), 2);
    }

    #[test]
    fn statistic_polynomials() {
        assert_eq!(statistic_stirling(3, 2, Statistic::Inv).unwrap(), qp(&[2, 1]));
        assert_eq!(statistic_stirling(2, 1, Statistic::Cigl).unwrap(), qp(&[0, 1]));
        // all singletons: inv 0, cigl 0
        assert_eq!(statistic_stirling(4, 4, Statistic::Inv).unwrap(), qp(&[1]));
        assert_eq!(statistic_stirling(4, 4, Statistic::Cigl).unwrap(), qp(&[1]));
        assert_eq!(statistic_bell(3, Statistic::Inv).unwrap().eval(&rat(1)), rat(5));
        assert_eq!(statistic_bell(1, Statistic::Cigl).unwrap(), qp(&[1]));
        assert_eq!(statistic_bell(2, Statistic::Inv).unwrap(), qp(&[2]));
    }

    #[test]
    fn checks() {
        assert!(check_inv_recurrence(6).unwrap().holds());
        let cigl = check_cigl(6).unwrap();
        assert!(!cigl.asserted_failure());
        let literal = &cigl.children[0];
        let w = literal.witness.as_ref().unwrap();
        assert_eq!((w.indices["n"], w.indices["k"]), (1, 1));
        assert_eq!(w.lhs, scalar_to_json(&q_scalar(qp(&[0, 1]))));
        assert_eq!(w.rhs, scalar_to_json(&q_scalar(qp(&[1]))));
        assert!(cigl.children[1].holds());
    }

    #[test]
    fn family_matches() {
        let r = family_match_report(4).unwrap();
        let inv = &r.values["inv"];
        let cell = inv["cells"].as_array().unwrap().iter().find(|c| c["n"] == 3 && c["k"] == 2).unwrap();
        assert_eq!(cell["matches"], json!(["tilde", "rescaled-carlitz"]));
        let cigl = &r.values["cigl"];
        let cell = cigl["cells"].as_array().unwrap().iter().find(|c| c["n"] == 2 && c["k"] == 1).unwrap();
        assert_eq!(cell["matches"], json!(["neither"]));
    }
}
