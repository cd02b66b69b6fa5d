use super::{bipartition_components, check_alpha, SeparatorError, SeparatorResult};
use crate::graph::{Graph, GraphError, VertexSubset};
use crate::Rational;

/// Minimum-cardinality α-balanced separator by exhaustive search over
/// vertex subsets in increasing size, each size in lexicographic order.
/// The first subset admitting a balanced split of the remaining components
/// wins; side A holds the smallest vertex outside `X`.
pub fn find_separator_exact(
    g: &Graph,
    alpha: &Rational,
    cap: usize,
) -> Result<SeparatorResult, SeparatorError> {
    check_alpha(alpha)?;
    let n = g.n();
    if n > cap {
        return Err(GraphError::CapExceeded {
            what: "vertices (exact separator search)",
            actual: n,
            cap,
        }
        .into());
    }
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let x = VertexSubset::from_indices(n, combo.iter().copied());
            if let Some(r) = bipartition_components(g, &x, alpha) {
                r.validate(g, alpha)?;
                return Ok(r);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Err(SeparatorError::NotFound {
        alpha: alpha.clone(),
        n,
    })
}

/// Advance to the next k-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::simple(n, &e).unwrap()
    }

    /// Independent brute force: smallest |X| over all 2^n subsets and all
    /// component bipartitions.
    fn brute_min_size(g: &Graph, alpha: &Rational) -> usize {
        let n = g.n();
        let mut best = n;
        for xmask in 0u64..1 << n {
            let x = VertexSubset::from_mask(n, xmask);
            let rest = x.complement();
            let (labels, k) = g.component_labels_within(&rest);
            for amask in 0u64..1 << k {
                let a = rest.iter().filter(|&v| amask >> labels[v] & 1 == 1).count();
                let b = rest.count() - a;
                let lim = alpha * Rational::from(n);
                if Rational::from(a) <= lim && Rational::from(b) <= lim {
                    best = best.min(x.count());
                }
            }
        }
        best
    }

    #[test]
    fn path3_middle_vertex() {
        let r = find_separator_exact(&path(3), &half(), 14).unwrap();
        assert_eq!(r.x, VertexSubset::from_indices(3, [1]));
        assert_eq!(r.part_a, VertexSubset::from_indices(3, [0]));
        assert_eq!(r.part_b, VertexSubset::from_indices(3, [2]));
    }

    #[test]
    fn k4_needs_two() {
        let k4 = Graph::simple(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = find_separator_exact(&k4, &half(), 14).unwrap();
        assert_eq!(r.x.count(), 2);
        assert_eq!(r.x, VertexSubset::from_indices(4, [0, 1]));
        r.validate(&k4, &half()).unwrap();
    }

    #[test]
    fn star_centre() {
        let star = Graph::simple(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let r = find_separator_exact(&star, &half(), 14).unwrap();
        assert_eq!(r.x, VertexSubset::from_indices(5, [0]));
    }

    #[test]
    fn minimality_against_brute_force() {
        let graphs = vec![
            path(7),
            Graph::simple(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap(),
            Graph::simple(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap(),
        ];
        for g in &graphs {
            for alpha in [half(), Rational::new(2, 3)] {
                let r = find_separator_exact(g, &alpha, 14).unwrap();
                assert_eq!(r.x.count(), brute_min_size(g, &alpha));
            }
        }
    }

    #[test]
    fn rejects_bad_alpha_and_cap() {
        assert!(matches!(
            find_separator_exact(&path(3), &Rational::one(), 14),
            Err(SeparatorError::InvalidAlpha(_))
        ));
        assert!(find_separator_exact(&path(16), &half(), 14).is_err());
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}
