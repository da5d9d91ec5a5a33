use umbra_stirling::bell::gordian_s_psi;
use umbra_stirling::newton::{newton_bell_rs, newton_stirling};
use umbra_stirling::normal_order::{build_system, normal_order_solve, NormalOrderStatus};
use umbra_stirling::partitions::enumerate_partitions;
use umbra_stirling::scalar::{binomial, factorial, rat, ratio, Polynomial, Scalar, Tag};
use umbra_stirling::sequences::{
    falling_node_poly, psi_binomial, psi_derivative, psi_factorial, psi_falling_power, PsiSequence,
};
use umbra_stirling::stirling::nwc_second_table;

fn int(n: i64) -> Scalar {
    Scalar::from_int(Tag::Rational, n)
}

#[test]
fn classical_primitives_match_integer_formulas() {
    let c = PsiSequence::classical();
    for n in 0..=12usize {
        assert_eq!(psi_factorial(&c, n).unwrap(), Scalar::Rat(factorial(n)));
        let mut falling = 1i64;
        for k in 0..=n {
            assert_eq!(psi_binomial(&c, n, k).unwrap(), Scalar::Rat(binomial(n, k)));
            assert_eq!(psi_falling_power(&c, n, k).unwrap(), int(falling));
            falling *= (n - k) as i64;
        }
    }
}

#[test]
fn numeric_q_is_symbolic_q_substituted() {
    let sym = PsiSequence::q_symbolic();
    for q0 in [ratio(1, 2), ratio(3, 1), ratio(-2, 5)] {
        let num = PsiSequence::q_numeric(q0.clone());
        for n in 0..=12 {
            assert_eq!(num.value(n).unwrap(), sym.value(n).unwrap().eval_q(&q0).unwrap());
        }
    }
}

#[test]
fn falling_node_polys_grow_by_one_factor() {
    for seq in [PsiSequence::q_symbolic(), PsiSequence::fibonomial(), PsiSequence::hyper(2).unwrap()] {
        for k in 0..=10 {
            let next = falling_node_poly(&seq, k).unwrap().mul_linear(&seq.value(k).unwrap());
            assert_eq!(falling_node_poly(&seq, k + 1).unwrap(), next);
        }
    }
}

#[test]
fn psi_derivative_lowers_monomial_degree_by_one() {
    let seq = PsiSequence::q_symbolic();
    for n in 1..=8 {
        let d = psi_derivative(&Polynomial::power(Tag::Q, n), &seq).unwrap();
        assert_eq!(d.degree(), Some(n - 1));
        assert_eq!(d.coeff(n - 1), seq.value(n).unwrap());
    }
    assert!(psi_derivative(&Polynomial::one(Tag::Q), &seq).unwrap().is_zero());
}

#[test]
fn partition_counts_follow_bell_recurrence() {
    // B_{n+1} = Σ C(n,k) B_k
    let mut bell = vec![rat(1)];
    for n in 0..12 {
        bell.push((0..=n).map(|k| binomial(n, k) * &bell[k]).sum());
    }
    for n in 1..=12 {
        let count = enumerate_partitions(n, None).unwrap().count();
        assert_eq!(rat(count as i64), bell[n], "n = {n}");
    }
}

#[test]
fn newton_coefficients_of_monomials_count_partitions() {
    for n in 0..=10 {
        let x_n = Polynomial::power(Tag::Rational, n);
        for k in 0..=n {
            let count = if n == 0 { 1 } else { enumerate_partitions(n, Some(k)).unwrap().count() as i64 };
            assert_eq!(newton_stirling(&x_n, k).unwrap(), rat(count), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn newton_bell_numbers_are_positive() {
    for r in 1..=3 {
        for s in 1..=r {
            for n in 1..=6 {
                assert!(newton_bell_rs(n, r, s).unwrap() > rat(0), "B_({r},{s})({n})");
            }
        }
    }
}

#[test]
fn gordian_series_for_classical_and_q() {
    for seq in [PsiSequence::classical(), PsiSequence::q_symbolic()] {
        for n in 0..=6 {
            let (_, report) = gordian_s_psi(&seq, n, 2 * n + 8).unwrap();
            assert!(report.holds(), "{} n = {n}: {:?}", seq.name(), report.witness);
        }
    }
}

#[test]
fn normal_order_solutions_satisfy_every_probe() {
    let q = PsiSequence::q_symbolic();
    let classical = nwc_second_table(&PsiSequence::classical(), 6).unwrap();
    for n in 0..=6 {
        let probe = 2 * n + 4;
        let system = build_system(&q, n, probe).unwrap();
        let outcome = normal_order_solve(&q, n, probe).unwrap();
        let NormalOrderStatus::UniqueSolution(c) = outcome.status else {
            panic!("q is solvable at n = {n}");
        };
        for big_n in 0..=probe {
            assert_eq!(system.apply(big_n, &c), system.rows[big_n].1);
        }
        for (k, ck) in c.iter().enumerate() {
            assert_eq!(ck.eval_q(&rat(1)).unwrap(), classical.entry(n, k));
        }
    }
}
