//! Stirling tables of both kinds and the identities that tie them together.

use umbra_stirling::sequences::PsiSequence;
use umbra_stirling::stirling::{
    carlitz_q_table, check_nwc_routes, check_orthogonality, check_rescal, exp_poly_carlitz, table, Family,
};

fn main() -> umbra_stirling::Result<()> {
    let q = PsiSequence::q_symbolic();
    let tilde = table(Family::NwcSecond, &q, 4)?;
    let carlitz = carlitz_q_table(4);
    for n in 0..=4 {
        let t: Vec<String> = tilde.row(n).iter().map(|v| v.to_string()).collect();
        let c: Vec<String> = carlitz.row(n).iter().map(|v| v.to_string()).collect();
        println!("n={n}  tilde: [{}]   carlitz: [{}]", t.join(", "), c.join(", "));
    }

    print!("{}", table(Family::NwcSecond, &PsiSequence::classical(), 5)?.to_csv()?);
    println!("phi_3(x, q) = {}", exp_poly_carlitz(3).0);

    for report in [
        check_rescal(8),
        check_nwc_routes(&PsiSequence::fibonomial(), 6)?,
        check_orthogonality(&PsiSequence::hyper(2)?, 6)?,
    ] {
        println!("{:<14} {:?} over {} cases", report.id, report.status, report.cases);
    }
    Ok(())
}
