use super::{EdgeSubset, EnumerationCaps, Graph, GraphError, GraphMode, VertexSubset};
use crate::Rational;

fn check_universe(expected: usize, actual: usize) -> Result<(), GraphError> {
    if expected != actual {
        return Err(GraphError::UniverseMismatch { expected, actual });
    }
    Ok(())
}

/// `|U| - 1 - |F ∩ E(U)|` for a non-empty proper `U` and a forest `F`.
pub fn slack_oracle(g: &Graph, u: &VertexSubset, f: &EdgeSubset) -> Result<Rational, GraphError> {
    check_universe(g.n(), u.universe())?;
    check_universe(g.m(), f.universe())?;
    let k = u.count();
    if k == 0 || k == g.n() {
        return Err(GraphError::ImproperSubset);
    }
    if !g.is_forest(f) {
        return Err(GraphError::NotForest);
    }
    let inside = g.induced_edges(u).intersection(f).count();
    Ok(Rational::from(k as i64 - 1 - inside as i64))
}

pub fn is_connected_subset(g: &Graph, u: &VertexSubset) -> bool {
    !u.is_empty() && g.component_labels_within(u).1 == 1
}

/// Every non-empty `U` with `G[U]` connected, ascending by bitmask.
/// `U = V(G)` is included only when `include_full` is set (and `G` is
/// connected).
pub fn connected_vertex_subsets(
    g: &Graph,
    include_full: bool,
    caps: EnumerationCaps,
) -> Result<Vec<VertexSubset>, GraphError> {
    caps.check_vertices(g)?;
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
        .collect();
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    for mask in 1..=full {
        if mask == full && !include_full {
            continue;
        }
        let start = mask & mask.wrapping_neg();
        let mut reach = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & mask & !reach;
            reach |= new;
            frontier |= new;
        }
        if reach == mask {
            out.push(VertexSubset::from_mask(n, mask));
        }
    }
    Ok(out)
}

/// `G/U` with its index maps.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    /// host vertex -> contracted vertex
    pub vertex_map: Vec<usize>,
    /// host edge -> contracted edge, `None` for edges inside `U`
    pub edge_map: Vec<Option<usize>>,
}

/// Contract `G[U]` to a single vertex occupying the slot of `min(U)`.
/// Parallel edges are kept; edges inside `U` (which would become loops)
/// are discarded.
pub fn contract(g: &Graph, u: &VertexSubset) -> Result<Contraction, GraphError> {
    check_universe(g.n(), u.universe())?;
    if !is_connected_subset(g, u) {
        return Err(GraphError::DisconnectedSubset);
    }
    let rep = u.first().unwrap();
    let mut vertex_map = vec![0; g.n()];
    let mut next = 0;
    for (v, slot) in vertex_map.iter_mut().enumerate() {
        if u.contains(v) && v != rep {
            continue;
        }
        *slot = next;
        next += 1;
    }
    for v in u.iter() {
        vertex_map[v] = vertex_map[rep];
    }
    let mut edges = Vec::new();
    let mut edge_map = Vec::with_capacity(g.m());
    for &(a, b) in g.edges() {
        if u.contains(a) && u.contains(b) {
            edge_map.push(None);
        } else {
            edge_map.push(Some(edges.len()));
            edges.push((vertex_map[a], vertex_map[b]));
        }
    }
    Ok(Contraction {
        graph: Graph::new(next, edges, GraphMode::Multi)?,
        vertex_map,
        edge_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::simple(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::simple(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn slack_examples() {
        let g = p3();
        let f = EdgeSubset::full(2);
        let ab = VertexSubset::from_indices(3, [0, 1]);
        let ac = VertexSubset::from_indices(3, [0, 2]);
        assert_eq!(slack_oracle(&g, &ab, &f).unwrap(), Rational::zero());
        assert_eq!(slack_oracle(&g, &ac, &f).unwrap(), Rational::one());
        for v in 0..3 {
            let single = VertexSubset::from_indices(3, [v]);
            assert_eq!(slack_oracle(&g, &single, &f).unwrap(), Rational::zero());
        }
        assert_eq!(
            slack_oracle(&g, &VertexSubset::full(3), &f),
            Err(GraphError::ImproperSubset)
        );
        assert_eq!(
            slack_oracle(&g, &VertexSubset::empty(3), &f),
            Err(GraphError::ImproperSubset)
        );
        assert_eq!(
            slack_oracle(&k3(), &ab, &EdgeSubset::full(3)),
            Err(GraphError::NotForest)
        );
    }

    #[test]
    fn connected_subsets_examples() {
        let caps = EnumerationCaps::default();
        assert_eq!(connected_vertex_subsets(&k3(), true, caps).unwrap().len(), 7);
        let p = connected_vertex_subsets(&p3(), true, caps).unwrap();
        assert_eq!(p.len(), 6);
        assert!(!p.contains(&VertexSubset::from_indices(3, [0, 2])));
        let k1 = Graph::simple(1, &[]).unwrap();
        assert!(connected_vertex_subsets(&k1, false, caps).unwrap().is_empty());
    }

    #[test]
    fn contraction_examples() {
        let c = contract(&k3(), &VertexSubset::from_indices(3, [0, 1])).unwrap();
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.edges(), &[(0, 1), (0, 1)]);

        let c4 = Graph::simple(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = contract(&c4, &VertexSubset::from_indices(4, [0, 1])).unwrap();
        assert_eq!((c.graph.n(), c.graph.m()), (3, 3));
        assert_eq!(c.edge_map[0], None);

        let same = contract(&c4, &VertexSubset::from_indices(4, [2])).unwrap();
        assert_eq!(same.graph.edges(), c4.edges());

        assert_eq!(
            contract(&c4, &VertexSubset::from_indices(4, [0, 2])).unwrap_err(),
            GraphError::DisconnectedSubset
        );
    }
}
