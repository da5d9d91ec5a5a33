//! Set partitions in restricted-growth order and the inv / cigl statistics.

use umbra_stirling::partitions::{
    check_cigl, check_inv_recurrence, enumerate_partitions, family_match_report, statistic_stirling,
    Statistic,
};

fn main() -> umbra_stirling::Result<()> {
    for p in enumerate_partitions(4, Some(2))? {
        println!("{:<14} inv = {}  cigl = {}", p.to_string(), p.inv(), p.cigl());
    }
    for stat in [Statistic::Inv, Statistic::Cigl] {
        println!("{{5,3}}^{} = {}", stat.name(), statistic_stirling(5, 3, stat)?);
    }
    for report in [check_inv_recurrence(7)?, check_cigl(7)?] {
        println!("{:<16} {:?}", report.id, report.status);
        for child in &report.children {
            println!("  {:<14} {:?} informational={}", child.id, child.status, child.informational);
        }
    }
    let matches = family_match_report(6)?;
    println!("{}", serde_json::to_string_pretty(&matches.values["inv"]["tally"]).unwrap_or_default());
    Ok(())
}
