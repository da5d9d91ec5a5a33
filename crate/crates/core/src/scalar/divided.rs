use super::polynomial::Polynomial;
use super::value::Scalar;
use crate::error::{Error, Result};

/// `[x_0, …, x_k; f]` by the recursive rule
/// `([x_0..x_{k-1}; f] − [x_1..x_k; f]) / (x_0 − x_k)`.
///
/// Nodes must be pairwise distinct; a collision is reported even when the
/// result would be zero by degree.
pub fn divided_difference(nodes: &[Scalar], f: &Polynomial) -> Result<Scalar> {
    let tag = f.tag();
    if nodes.is_empty() {
        return Err(Error::InvalidParameter("divided difference needs at least one node".into()));
    }
    if let Some(x) = nodes.iter().find(|x| x.tag() != tag) {
        return Err(Error::TagMismatch(tag.name(), x.tag().name()));
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::RepeatedNodes(i, j));
            }
        }
    }
    let k = nodes.len() - 1;
    // column j holds [x_i .. x_{i+j}; f] for i = 0..=k-j
    let mut col = nodes.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    for j in 1..=k {
        col = (0..=k - j)
            .map(|i| (&col[i] - &col[i + 1]).checked_div(&(&nodes[i] - &nodes[i + j])))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(col.swap_remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{rat, ratio};
    use crate::scalar::value::Tag;

    fn nodes(values: &[(i64, i64)]) -> Vec<Scalar> {
        values.iter().map(|&(n, d)| Scalar::Rat(ratio(n, d))).collect()
    }

    #[test]
    fn cube_at_half_steps() {
        let f = Polynomial::power(Tag::Rational, 3);
        let v = divided_difference(&nodes(&[(0, 1), (1, 2), (1, 1)]), &f).unwrap();
        assert_eq!(v, Scalar::Rat(ratio(3, 2)));
    }

    #[test]
    fn vanishes_above_degree() {
        let f = Polynomial::power(Tag::Rational, 2);
        let v = divided_difference(&nodes(&[(0, 1), (1, 1), (2, 1), (3, 1)]), &f).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn single_node_is_evaluation() {
        let f = Polynomial::from_ints(Tag::Rational, &[1, 2, 3]);
        let v = divided_difference(&nodes(&[(2, 1)]), &f).unwrap();
        assert_eq!(v, Scalar::Rat(rat(17)));
    }

    #[test]
    fn repeated_nodes_rejected() {
        let f = Polynomial::power(Tag::Rational, 1);
        let r = divided_difference(&nodes(&[(0, 1), (1, 1), (1, 1)]), &f);
        assert_eq!(r, Err(Error::RepeatedNodes(1, 2)));
    }
}
