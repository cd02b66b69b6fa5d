use super::{FormulationError, LinearSystem, Row};
use crate::graph::{connected_vertex_subsets, EnumerationCaps, Graph, VertexSubset};
use crate::Rational;

/// `x >= 0` and the rank rows `x(E(U)) <= |U| - 1` for `|U| >= 2`.
///
/// With `connected_only`, only sets inducing a connected subgraph are used.
/// With `include_full`, `U = V(G)` is among them (for `connected_only`, only
/// when `G` itself is connected).
pub fn edmonds_system(
    g: &Graph,
    connected_only: bool,
    include_full: bool,
    caps: EnumerationCaps,
) -> Result<LinearSystem, FormulationError> {
    caps.check_vertices(g)?;
    let n = g.n();
    let mut sys = LinearSystem::new(g.m());
    for e in 0..g.m() {
        sys.add_inequality(Row::new([(e, Rational::from_int(-1))], Rational::zero()));
    }
    let sets: Vec<VertexSubset> = if connected_only {
        connected_vertex_subsets(g, include_full, caps)?
    } else {
        let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
        (1..=full)
            .filter(|&m| include_full || m != full)
            .map(|m| VertexSubset::from_mask(n, m))
            .collect()
    };
    for u in sets.into_iter().filter(|u| u.count() >= 2) {
        let inside = g.induced_edges(&u);
        sys.add_inequality(Row::new(
            inside.iter().map(|e| (e, Rational::one())),
            Rational::from(u.count() - 1),
        ));
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn caps() -> EnumerationCaps {
        EnumerationCaps::default()
    }

    #[test]
    fn sizes() {
        assert_eq!(edmonds_system(&fixtures::complete(3), true, true, caps()).unwrap().size(), 7);
        assert_eq!(edmonds_system(&fixtures::path(3), true, true, caps()).unwrap().size(), 5);
        assert_eq!(edmonds_system(&fixtures::path(1), true, true, caps()).unwrap().size(), 0);
        // without U = V(G)
        assert_eq!(edmonds_system(&fixtures::complete(3), true, false, caps()).unwrap().size(), 6);
        // all subsets of size >= 2 of K3: 3 pairs + the triple
        assert_eq!(edmonds_system(&fixtures::complete(3), false, true, caps()).unwrap().size(), 7);
        // path a-b-c, all subsets: {a,c} gives the row 0 <= 1
        assert_eq!(edmonds_system(&fixtures::path(3), false, true, caps()).unwrap().size(), 6);
    }

    #[test]
    fn forests_satisfy_every_row() {
        let g = fixtures::bowtie();
        let sys = edmonds_system(&g, false, true, caps()).unwrap();
        for f in crate::graph::enumerate_forests(&g, caps()).unwrap() {
            let point: Vec<Rational> = (0..g.m())
                .map(|e| if f.contains(e) { Rational::one() } else { Rational::zero() })
                .collect();
            assert!(sys.first_violation(&point).is_none());
        }
        // the triangle itself violates its rank row
        let tri: Vec<Rational> = (0..g.m()).map(|e| Rational::from(usize::from(e < 3))).collect();
        assert!(sys.first_violation(&tri).is_some());
    }
}
