//! Runs the quick check-set and prints one line per check.

use umbra_stirling::suite::run_suite;

fn main() -> umbra_stirling::Result<()> {
    let outcome = run_suite(true)?;
    for r in &outcome.reports {
        let tag = if r.informational { " (informational)" } else { "" };
        println!("{:<24} {:?}{tag}", r.id, r.status);
    }
    println!("exit code {}", outcome.exit_code());
    Ok(())
}
