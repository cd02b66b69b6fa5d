use crate::graph::{Graph, UnionFind};
use crate::Rational;

/// Kruskal over the positive-weight edges, heaviest first (ties by edge
/// index). By matroid optimality this is the maximum of `w·x` over the
/// forest polytope.
pub fn max_weight_forest(g: &Graph, w: &[Rational]) -> Rational {
    assert_eq!(w.len(), g.m(), "one weight per edge");
    let mut order: Vec<usize> = (0..g.m()).filter(|&e| w[e].is_positive()).collect();
    order.sort_by(|&a, &b| w[b].cmp(&w[a]).then(a.cmp(&b)));
    let mut uf = UnionFind::new(g.n());
    let mut total = Rational::zero();
    for e in order {
        let (u, v) = g.edge(e);
        if uf.union(u, v) {
            total += &w[e];
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{enumerate_forests, EnumerationCaps};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(max_weight_forest(&fixtures::complete(3), &ints(&[3, 2, 1])), Rational::from_int(5));
        assert_eq!(max_weight_forest(&fixtures::complete(3), &ints(&[-3, -2, -1])), Rational::zero());
        assert_eq!(max_weight_forest(&fixtures::path(3), &ints(&[1, 1])), Rational::from_int(2));
    }

    #[test]
    fn matches_brute_force_over_forests() {
        let g = fixtures::complete(4);
        let forests = enumerate_forests(&g, EnumerationCaps::default()).unwrap();
        for w in [[5, -1, 3, 3, 2, 0], [1, 1, 1, 1, 1, 1], [-2, 7, 7, -1, 4, 4]] {
            let w = ints(&w);
            let best = forests
                .iter()
                .map(|f| f.iter().map(|e| w[e].clone()).sum::<Rational>())
                .max()
                .unwrap();
            assert_eq!(max_weight_forest(&g, &w), best);
        }
    }
}
