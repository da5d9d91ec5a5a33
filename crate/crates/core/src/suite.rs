//! The full identity check-set, run concurrently and assembled in id order.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bell::{
    check_dobinski_rearrangement, check_egf18, check_epsilon_literal, check_exp_pol_ii, check_prefab,
    check_q_bell_recurrences, check_specialization, dobinski_numeric, ghw_exp_poly_series, gordian_s_psi,
    psi_poisson_moment_check, DobinskiVariant,
};
use crate::error::{Error, Result};
use crate::newton::{
    check_abel_goncharov, check_generalized_reduction, default_tolerance, ns_dobinski_numeric,
};
use crate::normal_order::{check_observation_21, check_observation_22, default_observation_22_seqs};
use crate::partitions::{check_cigl, check_inv_recurrence, check_statistics_classical, family_match_report};
use crate::report::{CheckReport, Witness};
use crate::scalar::{ratio, Polynomial, Rational, Tag};
use crate::sequences::PsiSequence;
use crate::stirling::{
    check_basis_change, check_carlitz_defining, check_convolution_recurrences, check_explicit14, check_milne,
    check_nwc_routes, check_orthogonality, check_rescal,
};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "UMBRA_STIRLING_THREADS";

type CheckFn = Box<dyn Fn() -> Result<CheckReport> + Send + Sync>;

/// One entry of the check-set.
pub struct SuiteCheck {
    pub id: String,
    run: CheckFn,
}

impl SuiteCheck {
    fn new(id: impl Into<String>, run: impl Fn() -> Result<CheckReport> + Send + Sync + 'static) -> Self {
        SuiteCheck { id: id.into(), run: Box::new(run) }
    }

    /// Runs the check. An error becomes a failing report carrying the error.
    pub fn run(&self) -> CheckReport {
        match (self.run)() {
            Ok(mut report) => {
                report.id = self.id.clone();
                report
            }
            Err(e) => {
                let mut report = CheckReport::new(self.id.clone(), "check did not complete");
                report.record(false, || Witness {
                    indices: Default::default(),
                    lhs: json!(e.kind()),
                    rhs: json!(e.to_string()),
                });
                report
            }
        }
    }
}

fn sequences() -> Vec<PsiSequence> {
    vec![
        PsiSequence::classical(),
        PsiSequence::q_symbolic(),
        PsiSequence::hyper(2).expect("L = 2 is valid"),
        PsiSequence::fibonomial(),
    ]
}

fn group(id: &str, anchor: &str, children: Result<Vec<CheckReport>>) -> Result<CheckReport> {
    let mut report = CheckReport::new(id, anchor);
    for child in children? {
        report.push_child(child);
    }
    Ok(report)
}

fn per_seq(
    id: &'static str,
    anchor: &'static str,
    seqs: Vec<PsiSequence>,
    f: impl Fn(&PsiSequence) -> Result<CheckReport> + Send + Sync + 'static,
) -> SuiteCheck {
    SuiteCheck::new(id, move || {
        let children = seqs
            .iter()
            .map(|s| {
                let mut r = f(s)?;
                r.id = format!("{id}/{}", s.name());
                Ok(r)
            })
            .collect();
        group(id, anchor, children)
    })
}

/// The check-set. `quick` shrinks every range; the full ranges are the
/// acceptance ranges.
pub fn suite_checks(quick: bool) -> Vec<SuiteCheck> {
    let pick = move |full: usize, small: usize| if quick { small } else { full };
    let tol = default_tolerance();
    let half = ratio(1, 2);
    let n10 = pick(10, 5);
    let n8 = pick(8, 5);
    let n6 = pick(6, 4);
    let mut checks = Vec::new();

    checks.push(per_seq(
        "nwc-routes",
        "{n,k}~_psi by recurrence, ogf, monomial sums and divided differences",
        sequences(),
        move |s| check_nwc_routes(s, n10),
    ));
    checks.push(per_seq(
        "basis-change",
        "sum_k {n,k}~_psi x(x-1_psi)...(x-(k-1)_psi) = x^n",
        sequences(),
        move |s| check_basis_change(s, n10),
    ));
    checks.push(per_seq(
        "orthogonality",
        "sum_r [k,r]~_psi {r,l}~_psi = delta_(k,l)",
        sequences(),
        move |s| check_orthogonality(s, n10),
    ));
    checks.push(SuiteCheck::new("rescal", move || Ok(check_rescal(pick(12, 6)))));
    checks.push(SuiteCheck::new("milne", move || Ok(check_milne(n8))));
    checks.push(SuiteCheck::new("carlitz-defining", move || Ok(check_carlitz_defining(n6))));
    checks.push(SuiteCheck::new("conv-recurrences", move || Ok(check_convolution_recurrences(n6))));
    checks.push(per_seq(
        "explicit14",
        "{n,k}~_psi = (1/k_psi!) sum_r (-1)^(k-r) binom_psi(k,r) r_psi^n",
        vec![PsiSequence::classical(), PsiSequence::q_symbolic(), PsiSequence::fibonomial()],
        move |s| check_explicit14(s, n8),
    ));
    checks.push(per_seq(
        "dobinski-rearrangement",
        "B~_n(psi) = sum_r eps_K(psi,r) r_psi^n / r_psi!",
        vec![PsiSequence::classical(), PsiSequence::q_symbolic(), PsiSequence::hyper(2).expect("valid")],
        move |s| {
            let children = (0..=n8).map(|n| check_dobinski_rearrangement(s, n, n)).collect();
            group("dobinski-rearrangement", "K = n", children)
        },
    ));
    checks.push(SuiteCheck::new("epsilon-literal", move || {
        check_epsilon_literal(&PsiSequence::q_symbolic(), n6)
    }));
    checks.push(SuiteCheck::new("exp-pol-ii", move || {
        check_exp_pol_ii(&PsiSequence::classical(), 2, &Rational::from_integer(2.into()), pick(12, 8))
    }));
    checks.push(per_seq(
        "egf18",
        "sum_n B~_n(psi) x^n / n_psi! = exp_psi(x)^(-1) sum_k ...",
        vec![PsiSequence::classical(), PsiSequence::q_symbolic()],
        move |s| check_egf18(s, n6, n6),
    ));
    let dob = tol.clone();
    checks.push(SuiteCheck::new("dobinski/classical", move || {
        group(
            "dobinski/classical",
            "B_n = e^(-1) sum_k k^n / k!",
            (1..=n8).map(|n| dobinski_numeric(&DobinskiVariant::Classical, n, 80, &dob)).collect(),
        )
    }));
    let (dob, q) = (tol.clone(), half.clone());
    checks.push(SuiteCheck::new("dobinski/q", move || {
        group(
            "dobinski/q",
            "B_n(q) at q = 1/2",
            (0..=n8).map(|n| dobinski_numeric(&DobinskiVariant::CarlitzQ(q.clone()), n, 80, &dob)).collect(),
        )
    }));
    let (dob, q) = (tol.clone(), half.clone());
    checks.push(SuiteCheck::new("dobinski/milne", move || {
        group(
            "dobinski/milne",
            "B_(q,n+1) at q = 1/2",
            (0..=n6).map(|n| dobinski_numeric(&DobinskiVariant::Milne(q.clone()), n, 80, &dob)).collect(),
        )
    }));
    let (dob, q) = (tol.clone(), half.clone());
    checks.push(SuiteCheck::new("dobinski/cigl", move || {
        group(
            "dobinski/cigl",
            "cigl Dobinski at q = 1/2",
            (0..=n6).map(|n| dobinski_numeric(&DobinskiVariant::Cigl(q.clone()), n, 80, &dob)).collect(),
        )
    }));
    let (dob, q) = (tol.clone(), half.clone());
    checks.push(per_seq(
        "poisson-moments",
        "L_psi(X^(n, falling)) = 1",
        vec![PsiSequence::classical(), PsiSequence::q_numeric(q), PsiSequence::fibonomial()],
        move |s| psi_poisson_moment_check(s, n6, 80, &dob),
    ));
    checks.push(SuiteCheck::new("q-bell-recurrences", move || check_q_bell_recurrences(n6)));
    checks.push(per_seq(
        "gordian",
        "S_psi(x) coefficients from the series definition",
        vec![PsiSequence::classical(), PsiSequence::q_symbolic()],
        move |s| {
            let children = (0..=pick(4, 2)).map(|n| gordian_s_psi(s, n, 2 * n + 8).map(|r| r.1)).collect();
            group("gordian", "per n", children)
        },
    ));
    checks.push(per_seq(
        "ghw-exp-poly",
        "phi_n(x) = exp_psi(x)^(-1) (x d_psi)^n exp_psi(x)",
        vec![PsiSequence::classical(), PsiSequence::q_symbolic()],
        move |s| {
            let children = (0..=pick(4, 2)).map(|n| ghw_exp_poly_series(s, n, n + 8)).collect();
            group("ghw-exp-poly", "per n", children)
        },
    ));
    checks.push(SuiteCheck::new("prefab", move || check_prefab(pick(3, 2))));
    checks.push(SuiteCheck::new("obs21", move || check_observation_21(n6, None)));
    checks.push(SuiteCheck::new("obs22", move || {
        check_observation_22(&default_observation_22_seqs(), n6, None)
    }));
    checks.push(SuiteCheck::new("inv-recurrence", move || check_inv_recurrence(n8)));
    checks.push(SuiteCheck::new("cigl", move || check_cigl(n8)));
    checks.push(SuiteCheck::new("statistics-classical", move || check_statistics_classical(n10)));
    checks.push(SuiteCheck::new("family-match", move || family_match_report(n8)));
    checks.push(SuiteCheck::new("abel-goncharov", move || check_abel_goncharov(n8)));
    checks.push(SuiteCheck::new("s11-reduction", move || check_generalized_reduction(n6)));
    checks.push(SuiteCheck::new("ns-dob", move || {
        let b = Polynomial::power(Tag::Rational, 3);
        let xs = [ratio(1, 2), ratio(1, 1), ratio(2, 1)];
        group(
            "ns-dob",
            "e^(-x) sum_m b(m) x^m / m! = sum_k [0..k; b] x^k",
            xs.iter().map(|x| ns_dobinski_numeric(&b, x, 80)).collect(),
        )
    }));
    checks.push(SuiteCheck::new("specialization", move || check_specialization(n10)));
    checks
}

/// Worker cap from the environment, if set to a positive integer.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
    }
}

pub struct SuiteOutcome {
    pub quick: bool,
    pub reports: Vec<CheckReport>,
}

impl SuiteOutcome {
    pub fn asserted_failures(&self) -> Vec<&str> {
        self.reports.iter().filter(|r| r.asserted_failure()).map(|r| r.id.as_str()).collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.asserted_failures().is_empty() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let informational_fails = self
            .reports
            .iter()
            .flat_map(flatten)
            .filter(|r| r.informational && !r.holds())
            .map(|r| r.id.clone())
            .collect::<Vec<_>>();
        json!({
            "metadata": {
                "tool": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "quick": self.quick,
            },
            "summary": {
                "checks": self.reports.len(),
                "holds": self.reports.iter().filter(|r| r.holds()).count(),
                "asserted_failures": self.asserted_failures(),
                "informational_failures": informational_fails,
            },
            "reports": self.reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }
}

fn flatten(r: &CheckReport) -> Vec<&CheckReport> {
    let mut out = vec![r];
    for c in &r.children {
        out.extend(flatten(c));
    }
    out
}

/// Runs every check, at most `UMBRA_STIRLING_THREADS` at a time.
pub fn run_suite(quick: bool) -> Result<SuiteOutcome> {
    let checks = suite_checks(quick);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let mut reports: Vec<CheckReport> = pool.install(|| checks.par_iter().map(SuiteCheck::run).collect());
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteOutcome { quick, reports })
}
