//! Normal ordering of `(x̂∂_ψ)^n` through its action on monomials.
//!
//! Acting on `x^N` turns `(x̂∂_ψ)^n = Σ_k c_k x̂^k ∂_ψ^k` into the equations
//! `N_ψ^n = Σ_k c_k N_ψ(N−1)_ψ⋯(N−k+1)_ψ`, one per `N ≥ 0`. The first
//! `n + 1` equations are triangular and fix the `c_k`; the rest either agree
//! or expose an inconsistency.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};
use crate::scalar::{scalar_to_json, Scalar};
use crate::sequences::{psi_falling_power, PsiSequence};
use crate::stirling::carlitz_q_table;

/// Probe range used when none is given.
pub fn default_probe(n: usize) -> usize {
    2 * n + 4
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalOrderSystem {
    pub seq: PsiSequence,
    pub n: usize,
    /// `rows[N] = (coefficients over k = 0..=n, right-hand side N_ψ^n)`.
    pub rows: Vec<(Vec<Scalar>, Scalar)>,
}

impl NormalOrderSystem {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `Σ_k a_{N,k} c_k`.
    pub fn apply(&self, big_n: usize, c: &[Scalar]) -> Scalar {
        let (a, rhs) = &self.rows[big_n];
        a.iter().zip(c).fold(Scalar::zero(rhs.tag()), |acc, (a, c)| &acc + &(a * c))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalOrderStatus {
    /// `c_0, …, c_n`, satisfying every probe equation exactly.
    UniqueSolution(Vec<Scalar>),
    /// The first violated equation: `N_ψ^n = lhs` but the solution gives `rhs`.
    Inconsistent { big_n: usize, lhs: Scalar, rhs: Scalar, coefficients: Vec<Scalar> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalOrderOutcome {
    pub seq: PsiSequence,
    pub n: usize,
    pub status: NormalOrderStatus,
    pub checked_range: usize,
}

impl NormalOrderOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self.status, NormalOrderStatus::UniqueSolution(_))
    }

    pub fn to_json(&self) -> Value {
        let coeffs = |c: &[Scalar]| c.iter().map(scalar_to_json).collect::<Vec<_>>();
        let mut v = json!({
            "seq": self.seq.name(),
            "n": self.n,
            "checked_range": self.checked_range,
        });
        match &self.status {
            NormalOrderStatus::UniqueSolution(c) => {
                v["status"] = json!("unique_solution");
                v["coefficients"] = json!(coeffs(c));
            }
            NormalOrderStatus::Inconsistent { big_n, lhs, rhs, coefficients } => {
                v["status"] = json!("inconsistent");
                v["coefficients"] = json!(coeffs(coefficients));
                v["witness"] = json!({
                    "N": big_n,
                    "lhs": scalar_to_json(lhs),
                    "rhs": scalar_to_json(rhs),
                });
            }
        }
        v
    }
}

/// Equations for `0 ≤ N ≤ n_max`.
pub fn build_system(seq: &PsiSequence, n: usize, n_max: usize) -> Result<NormalOrderSystem> {
    if n_max < n + 2 {
        return Err(Error::InvalidParameter(format!(
            "probe range {n_max} must be at least n + 2 = {}",
            n + 2
        )));
    }
    let rows = (0..=n_max)
        .map(|big_n| {
            let a = (0..=n).map(|k| psi_falling_power(seq, big_n, k)).collect::<Result<Vec<_>>>()?;
            Ok((a, seq.value(big_n)?.pow(n as u32)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NormalOrderSystem { seq: seq.clone(), n, rows })
}

/// Solves the equations `N = 0..=n` and substitutes into `N = n+1..=n_max`.
pub fn normal_order_solve(seq: &PsiSequence, n: usize, n_max: usize) -> Result<NormalOrderOutcome> {
    let system = build_system(seq, n, n_max)?;
    let mut c: Vec<Scalar> = Vec::with_capacity(n + 1);
    for big_n in 0..=n {
        let (a, rhs) = &system.rows[big_n];
        let mut acc = rhs.clone();
        for (k, ck) in c.iter().enumerate() {
            acc = &acc - &(&a[k] * ck);
        }
        let pivot = &a[big_n];
        if pivot.is_zero() {
            return Err(Error::SingularSystem(format!("{seq}: pivot {big_n}_psi! vanishes")));
        }
        c.push(acc.checked_div(pivot)?);
    }
    for big_n in n + 1..=n_max {
        let lhs = system.rows[big_n].1.clone();
        let rhs = system.apply(big_n, &c);
        if lhs != rhs {
            return Ok(NormalOrderOutcome {
                seq: seq.clone(),
                n,
                status: NormalOrderStatus::Inconsistent { big_n, lhs, rhs, coefficients: c },
                checked_range: n_max,
            });
        }
    }
    Ok(NormalOrderOutcome {
        seq: seq.clone(),
        n,
        status: NormalOrderStatus::UniqueSolution(c),
        checked_range: n_max,
    })
}

/// For symbolic `q`: the normal-order coefficients are the Carlitz numbers
/// for `n ≤ n_max`, and `N_q − k_q = q^k (N−k)_q` for `k ≤ N ≤ probe`.
pub fn check_observation_21(n_max: usize, probe: Option<usize>) -> Result<CheckReport> {
    let q = PsiSequence::q_symbolic();
    let carlitz = carlitz_q_table(n_max);
    let mut solutions = CheckReport::new("obs21/solutions", "(x d_q)^n = sum_k {n,k}_q x^k d_q^k");
    for n in 0..=n_max {
        let range = probe.unwrap_or_else(|| default_probe(n)).max(n + 2);
        let outcome = normal_order_solve(&q, n, range)?;
        match &outcome.status {
            NormalOrderStatus::UniqueSolution(c) => {
                for (k, ck) in c.iter().enumerate() {
                    solutions.compare(&[("n", n as i64), ("k", k as i64)], ck, &carlitz.entry(n, k));
                }
            }
            NormalOrderStatus::Inconsistent { big_n, lhs, rhs, .. } => {
                solutions
                    .record(false, || Witness::exact(&[("n", n as i64), ("N", *big_n as i64)], lhs, rhs));
            }
        }
    }
    let top = probe.unwrap_or_else(|| default_probe(n_max));
    let mut identity = CheckReport::new("obs21/identity", "N_q - k_q = q^k (N-k)_q");
    for big_n in 0..=top {
        for k in 0..=big_n {
            let lhs = &q.value(big_n)? - &q.value(k)?;
            let rhs = &Scalar::q_pow(k as i64) * &q.value(big_n - k)?;
            identity.compare(&[("N", big_n as i64), ("k", k as i64)], &lhs, &rhs);
        }
    }
    let mut report = CheckReport::new("obs21", "normal ordering reproduces the Carlitz recurrence for q")
        .param("n_max", n_max)
        .param("probe", top);
    report.push_child(solutions);
    report.push_child(identity);
    Ok(report)
}

/// Sequences probed when none are given: Fibonomial, `n^3`, and the odd
/// numbers.
pub fn default_observation_22_seqs() -> Vec<PsiSequence> {
    let odd = (0..64i64).map(|i| crate::scalar::rat(if i == 0 { 0 } else { 2 * i - 1 }));
    vec![
        PsiSequence::fibonomial(),
        PsiSequence::hyper(2).expect("L = 2 is valid"),
        PsiSequence::custom(odd.collect()).expect("nonempty"),
    ]
}

/// For every non-`q` sequence, some `2 ≤ n ≤ n_max` has no consistent
/// normal ordering; symbolic `q` is solvable for all of them.
pub fn check_observation_22(seqs: &[PsiSequence], n_max: usize, probe: Option<usize>) -> Result<CheckReport> {
    if let Some(s) = seqs.iter().find(|s| s.is_q_family()) {
        return Err(Error::InvalidParameter(format!("{s} is a q-sequence; it is the control case")));
    }
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("need n_max ≥ 2, got {n_max}")));
    }
    let q = PsiSequence::q_symbolic();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 0..=seqs.len() {
        for n in 2..=n_max {
            cells.push((i, n));
        }
    }
    let outcomes = cells
        .par_iter()
        .map(|&(i, n)| {
            let seq = if i == seqs.len() { &q } else { &seqs[i] };
            normal_order_solve(seq, n, probe.unwrap_or_else(|| default_probe(n)).max(n + 2))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = CheckReport::new("obs22", "(x d_psi)^n has no normal ordering beyond the q-case")
        .param("n_max", n_max)
        .param("seqs", seqs.iter().map(PsiSequence::name).collect::<Vec<_>>());
    for i in 0..=seqs.len() {
        let mine: Vec<&NormalOrderOutcome> =
            outcomes.iter().zip(&cells).filter(|(_, c)| c.0 == i).map(|(o, _)| o).collect();
        let control = i == seqs.len();
        let seq = if control { &q } else { &seqs[i] };
        let mut child = if control {
            CheckReport::new("obs22/q-control", "(x d_q)^n is normal-orderable for every n")
        } else {
            CheckReport::new(format!("obs22/{}", seq.name()), "some n has an inconsistent probe equation")
        };
        if control {
            for o in &mine {
                child.record(o.is_solvable(), || outcome_witness(o));
            }
        } else {
            let first_bad = mine.iter().find(|o| !o.is_solvable());
            child.record(first_bad.is_some(), || {
                let last = mine.last().expect("n_max ≥ 2");
                Witness {
                    indices: [("n".to_string(), last.n as i64)].into(),
                    lhs: json!("solvable for every n"),
                    rhs: json!("an inconsistent n"),
                }
            });
            if let Some(o) = first_bad {
                child.witness = Some(outcome_witness(o));
            }
        }
        child.set_value("outcomes", mine.iter().map(|o| o.to_json()).collect::<Vec<_>>());
        report.push_child(child);
    }
    Ok(report)
}

fn outcome_witness(o: &NormalOrderOutcome) -> Witness {
    match &o.status {
        NormalOrderStatus::Inconsistent { big_n, lhs, rhs, .. } => {
            Witness::exact(&[("n", o.n as i64), ("N", *big_n as i64)], lhs, rhs)
        }
        NormalOrderStatus::UniqueSolution(_) => Witness {
            indices: [("n".to_string(), o.n as i64)].into(),
            lhs: json!("unique_solution"),
            rhs: json!("unique_solution"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, QFrac, QPoly, Tag};

    fn int(n: i64) -> Scalar {
        Scalar::from_int(Tag::Rational, n)
    }

    #[test]
    fn fibonomial_system() {
        let s = build_system(&PsiSequence::fibonomial(), 2, 4).unwrap();
        assert_eq!(s.rows[1].0, vec![int(1), int(1), int(0)]);
        assert_eq!(s.rows[2].0, vec![int(1), int(1), int(1)]);
        assert_eq!(s.rows[3].0, vec![int(1), int(2), int(2)]);
        assert_eq!(s.rows[3].1, int(4));
        let o = normal_order_solve(&PsiSequence::fibonomial(), 2, 5).unwrap();
        match o.status {
            NormalOrderStatus::Inconsistent { big_n, lhs, rhs, .. } => {
                assert_eq!((big_n, lhs, rhs), (3, int(4), int(2)));
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
        assert!(build_system(&PsiSequence::fibonomial(), 2, 3).is_err());
    }

    #[test]
    fn solvable_cases() {
        let o = normal_order_solve(&PsiSequence::classical(), 3, 6).unwrap();
        assert_eq!(o.status, NormalOrderStatus::UniqueSolution(vec![int(0), int(1), int(3), int(1)]));
        let o = normal_order_solve(&PsiSequence::q_symbolic(), 2, 6).unwrap();
        let q = Scalar::Q(QFrac::from_poly(QPoly::from_coeffs(vec![rat(0), rat(1)])));
        assert_eq!(
            o.status,
            NormalOrderStatus::UniqueSolution(vec![Scalar::zero(Tag::Q), Scalar::one(Tag::Q), q])
        );
        let o = normal_order_solve(&PsiSequence::hyper(2).unwrap(), 0, 4).unwrap();
        assert_eq!(o.status, NormalOrderStatus::UniqueSolution(vec![int(1)]));
        for seq in default_observation_22_seqs() {
            assert!(normal_order_solve(&seq, 1, 6).unwrap().is_solvable());
        }
    }

    #[test]
    fn observations() {
        let r = check_observation_21(5, None).unwrap();
        assert!(r.holds());
        let r = check_observation_22(&default_observation_22_seqs(), 4, None).unwrap();
        assert!(r.holds(), "{:#}", r.to_json());
        assert!(check_observation_22(&[PsiSequence::q_symbolic()], 3, None).is_err());
    }

    #[test]
    fn fibonomial_witness_is_early() {
        for n in 2..=6 {
            match normal_order_solve(&PsiSequence::fibonomial(), n, default_probe(n)).unwrap().status {
                NormalOrderStatus::Inconsistent { big_n, .. } => assert!(big_n <= 2 * n + 3),
                NormalOrderStatus::UniqueSolution(_) => panic!("n = {n} solvable"),
            }
        }
    }
}
