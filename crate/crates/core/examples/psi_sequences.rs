//! Admissible sequences: values, factorials, psi-binomials and the
//! psi-exponential.

use umbra_stirling::sequences::{exp_psi_series, psi_binomial, psi_factorial, PsiSequence};

fn main() -> umbra_stirling::Result<()> {
    for spec in ["classical", "q", "q=1/2", "fib", "hyperL=2", "pq", "gammaGL@q=2", "custom:[0,1,3,5,7]"] {
        let seq = PsiSequence::parse(spec)?;
        let values: Vec<String> =
            (0..5).map(|n| seq.value(n).map(|v| v.to_string())).collect::<Result<_, _>>()?;
        println!("{:<14} n_psi: {}", seq.name(), values.join(", "));
    }

    let q = PsiSequence::q_symbolic();
    println!("3_q!           = {}", psi_factorial(&q, 3)?);
    println!("binom_q(4, 2)  = {}", psi_binomial(&q, 4, 2)?);

    let fib = PsiSequence::fibonomial();
    let row: Vec<String> =
        (0..=6).map(|k| psi_binomial(&fib, 6, k).map(|v| v.to_string())).collect::<Result<_, _>>()?;
    println!("fibonomials n=6: {}", row.join(" "));

    // repeated nodes 1_F = 2_F = 1 are reported, not divided by
    if let Err(e) = fib.require_distinct(3) {
        println!("fib nodes      -> {e}");
    }
    println!("exp_q(x)       = {}", exp_psi_series(&q, 3)?.to_polynomial());
    Ok(())
}
