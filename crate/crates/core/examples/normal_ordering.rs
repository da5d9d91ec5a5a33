//! Normal ordering of (x d_psi)^n: solvable for q, inconsistent otherwise.

use umbra_stirling::normal_order::{normal_order_solve, NormalOrderStatus};
use umbra_stirling::sequences::PsiSequence;

fn main() -> umbra_stirling::Result<()> {
    for spec in ["q", "fib", "hyperL=2"] {
        let seq = PsiSequence::parse(spec)?;
        for n in 1..=4 {
            let outcome = normal_order_solve(&seq, n, 2 * n + 4)?;
            match &outcome.status {
                NormalOrderStatus::UniqueSolution(c) => {
                    let c: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                    println!("{spec:<9} n={n}: c = [{}]", c.join(", "));
                }
                NormalOrderStatus::Inconsistent { big_n, lhs, rhs, .. } => {
                    println!("{spec:<9} n={n}: inconsistent at N={big_n}: {lhs} != {rhs}");
                }
            }
        }
    }
    Ok(())
}
