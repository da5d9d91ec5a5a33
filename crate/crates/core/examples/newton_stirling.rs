//! Newton coefficients of a polynomial, generalized Stirling numbers
//! S_{r,s}(n,k), the Abel-Goncharov d_{n,k} and the Newton-Dobinski series.

use umbra_stirling::newton::{
    abel_goncharov_d, check_abel_goncharov, generalized_s_rs, newton_bell_rs, newton_stirling,
    ns_dobinski_numeric,
};
use umbra_stirling::scalar::{parse_polynomial, ratio};

fn main() -> umbra_stirling::Result<()> {
    let b = parse_polynomial("x^3")?;
    for k in 0..=3 {
        println!("[0..{k}; x^3] = {}", newton_stirling(&b, k)?);
    }

    // normal-ordering coefficients of ((a^+)^2 a)^3, the Lah numbers
    let row: Vec<String> =
        (1..=3).map(|k| generalized_s_rs(3, k, 2, 1).map(|v| v.to_string())).collect::<Result<_, _>>()?;
    println!("S_(2,1)(3, k) = {}", row.join(", "));
    println!("B_(2,1)(3)    = {}", newton_bell_rs(3, 2, 1)?);
    println!("d_(4,2)       = {}", abel_goncharov_d(4, 2)?);
    println!("abel-goncharov: {:?}", check_abel_goncharov(6)?.status);

    for x in [ratio(1, 2), ratio(2, 1)] {
        let r = ns_dobinski_numeric(&b, &x, 80)?;
        println!("x = {x}: series {} newton {} -> {:?}", r.values["series"], r.values["newton"], r.status);
    }
    Ok(())
}
