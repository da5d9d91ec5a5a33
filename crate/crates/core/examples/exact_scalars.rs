//! Exact arithmetic in Q, Q(q) and Q(p,q), plus truncated power series.

use umbra_stirling::scalar::{divided_difference, ratio, Polynomial, Scalar, Tag, TruncatedSeries};

fn main() -> umbra_stirling::Result<()> {
    let q = Scalar::q();
    let one = Scalar::one(Tag::Q);
    // 3_q = 1 + q + q^2 as a ratio of polynomials
    let three_q = (&one - &q.pow(3)).checked_div(&(&one - &q))?;
    println!("3_q            = {three_q}");
    println!("3_q at q = 1/2 = {}", three_q.eval_q(&ratio(1, 2))?);

    let p = Scalar::pq_p();
    let pq = Scalar::pq_q();
    let two_pq = (&p.pow(2) - &pq.pow(2)).checked_div(&(&p - &pq))?;
    println!("2_(p,q)        = {two_pq}");

    // mixing tags is an error, not a silent coercion
    let err = Scalar::from_int(Tag::Rational, 2).checked_add(&q).unwrap_err();
    println!("2 + q          -> {err}");

    let exp = TruncatedSeries::classical_exp(Tag::Rational, 6);
    let inv = exp.inverse()?;
    println!("1/e^x          = {}", inv.to_polynomial());

    let nodes: Vec<Scalar> = (0..=3).map(|i| Scalar::from_int(Tag::Rational, i)).collect();
    let x5 = Polynomial::power(Tag::Rational, 5);
    println!("[0,1,2,3; x^5] = {}", divided_difference(&nodes, &x5)?);
    Ok(())
}
