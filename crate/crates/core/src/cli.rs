//! Command-line front end. `run` takes the full argv and returns the exit
//! code with everything that should go to stdout.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bell::{
    bell_sequence, check_dobinski_rearrangement, check_egf18, check_epsilon_literal, check_exp_pol_ii,
    check_prefab, check_q_bell_recurrences, check_specialization, dobinski_numeric, ghw_exp_poly_series,
    gordian_s_psi, psi_poisson_moment_check, BellFamily, DobinskiVariant,
};
use crate::error::{Error, Result};
use crate::newton::{
    check_abel_goncharov, check_generalized_reduction, newton_binomial_sum, newton_divided_difference,
    newton_stirling, ns_dobinski_numeric_tol,
};
use crate::normal_order::{
    check_observation_21, check_observation_22, default_observation_22_seqs, default_probe,
    normal_order_solve,
};
use crate::partitions::{
    check_cigl, check_inv_recurrence, check_statistics_classical, enumerate_partitions, family_match_report,
    Statistic, StatisticTable,
};
use crate::report::CheckReport;
use crate::scalar::{parse_polynomial, parse_rational, polynomial_to_json, Rational};
use crate::sequences::PsiSequence;
use crate::stirling::{
    check_basis_change, check_carlitz_defining, check_convolution_recurrences, check_explicit14, check_milne,
    check_nwc_routes, check_orthogonality, check_rescal, table, Family,
};
use crate::suite::run_suite;

#[derive(Parser, Debug)]
#[command(name = "umbra-stirling", version, about = "Exact psi-extended Stirling and Bell numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum JsonOnly {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangular Stirling table.
    Table {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "classical")]
        seq: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bell numbers of one family.
    Bell {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "classical")]
        seq: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Numeric Dobinski series against the exact Bell number.
    Dobinski {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value = "classical")]
        seq: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 80)]
        terms: usize,
        #[arg(long, default_value = "1e-9")]
        tol: String,
    },
    /// Set-partition statistics inv and cigl.
    Partitions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        stat: String,
        /// Also list every partition with its statistic.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: JsonOnly,
    },
    /// Normal ordering of (x d_psi)^n.
    NormalOrder {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "nmax-probe")]
        nmax_probe: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: JsonOnly,
    },
    /// Newton coefficient [0, 1, ..., k; b].
    NewtonStirling {
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: usize,
    },
    /// One identity check.
    Check {
        #[arg(long)]
        id: String,
        #[arg(long, default_value = "classical")]
        seq: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long)]
        n: Option<usize>,
        /// Truncation K of the epsilon-coefficient sums.
        #[arg(long = "K")]
        big_k: Option<usize>,
        #[arg(long, default_value = "x^3")]
        b: String,
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long, default_value_t = 80)]
        terms: usize,
        #[arg(long, default_value = "1e-9")]
        tol: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        probe: Option<usize>,
    },
    /// The full check-set as one aggregate report.
    Suite {
        #[arg(long)]
        quick: bool,
    },
}

/// Runs one command line. Usage errors exit 2, computational errors exit 1
/// with an error JSON, and checks exit 1 when an asserted identity fails.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(cli.command) {
        Ok((code, out)) => (code, out),
        Err(e) => {
            let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            (1, pretty(&body))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn report_out(report: CheckReport) -> (i32, String) {
    (if report.asserted_failure() { 1 } else { 0 }, pretty(&report.to_json()))
}

fn execute(command: Command) -> Result<(i32, String)> {
    match command {
        Command::Table { family, seq, nmax, format } => {
            let t = table(Family::parse(&family)?, &PsiSequence::parse(&seq)?, nmax)?;
            Ok((
                0,
                match format {
                    Format::Json => pretty(&t.to_json()),
                    Format::Csv => t.to_csv()?,
                },
            ))
        }
        Command::Bell { family, seq, nmax } => {
            let b = bell_sequence(BellFamily::parse(&family)?, &PsiSequence::parse(&seq)?, nmax)?;
            Ok((0, pretty(&b.to_json())))
        }
        Command::Dobinski { variant, q, seq, n, terms, tol } => {
            let tol = parse_rational(&tol)?;
            let need_q = || -> Result<Rational> {
                parse_rational(q.as_deref().ok_or_else(|| {
                    Error::InvalidParameter(format!("--q is required for variant {variant}"))
                })?)
            };
            let v = match variant.as_str() {
                "classical" => DobinskiVariant::Classical,
                "q" => DobinskiVariant::CarlitzQ(need_q()?),
                "milne" => DobinskiVariant::Milne(need_q()?),
                "cigl" => DobinskiVariant::Cigl(need_q()?),
                "psi" => DobinskiVariant::Psi(PsiSequence::parse(&seq)?),
                other => return Err(Error::Parse(format!("unknown Dobinski variant '{other}'"))),
            };
            Ok(report_out(dobinski_numeric(&v, n, terms, &tol)?))
        }
        Command::Partitions { n, k, stat, list, format: JsonOnly::Json } => {
            let stat = Statistic::parse(&stat)?;
            let t = StatisticTable::compute(n, stat)?;
            let ks: Vec<usize> = match k {
                Some(k) if k > n => return Err(Error::IndexOutOfRange(format!("k = {k} exceeds n = {n}"))),
                Some(k) => vec![k],
                None => (0..=n).collect(),
            };
            let stirling: Vec<Value> = ks
                .iter()
                .map(|&k| json!({ "k": k, "coefficients": coefficient_array(&t.counts[k]) }))
                .collect();
            let mut body = json!({
                "n": n,
                "stat": stat.name(),
                "stirling": stirling,
                "bell": coefficient_array(&sum_counts(&t.counts)),
            });
            if list {
                let parts: Vec<Value> = enumerate_partitions(n, k)?
                    .map(|p| json!({ "blocks": p.to_string(), "value": p.statistic(stat) }))
                    .collect();
                body["partitions"] = Value::Array(parts);
            }
            Ok((0, pretty(&body)))
        }
        Command::NormalOrder { seq, n, nmax_probe, format: JsonOnly::Json } => {
            let seq = PsiSequence::parse(&seq)?;
            let outcome = normal_order_solve(&seq, n, nmax_probe.unwrap_or_else(|| default_probe(n)))?;
            Ok((0, pretty(&outcome.to_json())))
        }
        Command::NewtonStirling { b, k } => {
            let poly = parse_polynomial(&b)?;
            let value = newton_stirling(&poly, k)?;
            let body = json!({
                "b": polynomial_to_json(&poly),
                "k": k,
                "value": value.to_string(),
                "binomial_sum": newton_binomial_sum(&poly, k)?.to_string(),
                "divided_difference": newton_divided_difference(&poly, k)?.to_string(),
            });
            Ok((0, pretty(&body)))
        }
        Command::Check { id, seq, nmax, n, big_k, b, x, terms, tol, order, probe } => {
            let seq = PsiSequence::parse(&seq)?;
            let n = n.unwrap_or(nmax);
            let tol = parse_rational(&tol)?;
            let report = match id.as_str() {
                "rescal" => check_rescal(nmax),
                "milne" => check_milne(nmax),
                "carlitz-defining" => check_carlitz_defining(nmax),
                "conv-recurrences" => check_convolution_recurrences(nmax),
                "explicit14" => check_explicit14(&seq, nmax)?,
                "orthogonality" => check_orthogonality(&seq, nmax)?,
                "basis-change" => check_basis_change(&seq, nmax)?,
                "nwc-routes" => check_nwc_routes(&seq, nmax)?,
                "ns-dob" => {
                    ns_dobinski_numeric_tol(&parse_polynomial(&b)?, &parse_rational(&x)?, terms, &tol)?
                }
                "abel-goncharov" => check_abel_goncharov(nmax)?,
                "s11-reduction" => check_generalized_reduction(nmax)?,
                "inv-recurrence" => check_inv_recurrence(nmax)?,
                "cigl" => check_cigl(nmax)?,
                "family-match" => family_match_report(nmax)?,
                "statistics-classical" => check_statistics_classical(nmax)?,
                "dobinski-rearrangement" => check_dobinski_rearrangement(&seq, n, big_k.unwrap_or(n))?,
                "epsilon-literal" => check_epsilon_literal(&seq, big_k.unwrap_or(nmax))?,
                "exp-pol-ii" => check_exp_pol_ii(&seq, n, &parse_rational(&x)?, big_k.unwrap_or(n + 8))?,
                "egf18" => check_egf18(&seq, nmax, big_k.unwrap_or(nmax))?,
                "poisson-moments" => psi_poisson_moment_check(&seq, nmax, terms, &tol)?,
                "q-bell-recurrences" => check_q_bell_recurrences(nmax)?,
                "gordian" => gordian_s_psi(&seq, n, order.unwrap_or(2 * n + 8))?.1,
                "ghw-exp-poly" => ghw_exp_poly_series(&seq, n, order.unwrap_or(n + 8))?,
                "prefab" => check_prefab(nmax)?,
                "obs21" => check_observation_21(nmax, probe)?,
                "obs22" => check_observation_22(&default_observation_22_seqs(), nmax, probe)?,
                "specialization" => check_specialization(nmax)?,
                other => return Err(Error::InvalidParameter(format!("unknown check id '{other}'"))),
            };
            Ok(report_out(report))
        }
        Command::Suite { quick } => {
            let outcome = run_suite(quick)?;
            Ok((outcome.exit_code(), pretty(&outcome.to_json())))
        }
    }
}

fn coefficient_array(counts: &[u64]) -> Vec<u64> {
    let mut v = counts.to_vec();
    if v.is_empty() {
        v.push(0);
    }
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn sum_counts(rows: &[Vec<u64>]) -> Vec<u64> {
    let len = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![0u64; len.max(1)];
    for row in rows {
        for (i, c) in row.iter().enumerate() {
            out[i] += c;
        }
    }
    out
}
