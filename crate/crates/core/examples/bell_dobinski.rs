//! Bell numbers of each family and Dobinski-type formulas, exact and numeric.

use umbra_stirling::bell::{
    bell_sequence, check_dobinski_rearrangement, dobinski_numeric, prefab_bell, psi_poisson_moment_check,
    BellFamily, DobinskiVariant,
};
use umbra_stirling::newton::default_tolerance;
use umbra_stirling::scalar::ratio;
use umbra_stirling::sequences::PsiSequence;

fn main() -> umbra_stirling::Result<()> {
    let q = PsiSequence::q_symbolic();
    for family in [BellFamily::Nwc, BellFamily::CarlitzQ, BellFamily::Inv, BellFamily::Cigl] {
        let b = bell_sequence(family, &q, 4)?;
        let v: Vec<String> = b.values.iter().map(|s| s.to_string()).collect();
        println!("{:<8} {}", family.name(), v.join(", "));
    }

    let r = check_dobinski_rearrangement(&PsiSequence::hyper(2)?, 4, 4)?;
    println!("rearranged Dobinski, n_psi = n^3: {} ({:?})", r.values["value"], r.status);

    let tol = default_tolerance();
    for variant in [
        DobinskiVariant::Classical,
        DobinskiVariant::CarlitzQ(ratio(1, 2)),
        DobinskiVariant::Milne(ratio(1, 2)),
    ] {
        let r = dobinski_numeric(&variant, 5, 80, &tol)?;
        println!("{:<20} value {} exact {} {:?}", r.id, r.values["value"], r.values["exact"], r.status);
    }

    let moments = psi_poisson_moment_check(&PsiSequence::fibonomial(), 4, 80, &tol)?;
    println!("fibonomial Poisson moments: {:?}", moments.status);

    let gl = prefab_bell(&PsiSequence::parse("gammaGL@q=2")?, 3)?;
    let v: Vec<String> = gl.values.iter().map(|s| s.to_string()).collect();
    println!("direct-sum decompositions of F_2^n: {}", v.join(", "));
    Ok(())
}
