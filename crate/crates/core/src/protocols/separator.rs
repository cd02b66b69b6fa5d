use super::{index_bits, rooted_protocol, AliceChoice, ProtocolError, ProtocolRun};
use crate::bounds::{ceil_log2, ceil_log2_scaled_power};
use crate::graph::{is_connected_subset, EdgeSubset, Graph, GraphError};
use crate::separators::SeparatorTree;
use crate::{Rational, VertexSubset};

/// Additive slack allowed on top of [`BitBudget::bound_value`]: one bit for
/// the stop signal and one for the factor 2 in the arc universe.
pub const KAPPA: i64 = 2;

/// Bit accounting of one separator-protocol run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitBudget {
    /// 1-based level at which the descent stopped.
    pub level: usize,
    /// One bit per descent step plus the stop signal.
    pub routing_bits: usize,
    pub alice_vertex_bits: usize,
    pub bob_arc_bits: usize,
    /// `(t-1) + ceil(log2(c n^beta)) + ceil(log2((d+1) n / 2^(t-1)))`.
    pub bound_value: i64,
}

impl BitBudget {
    pub fn total(&self) -> usize {
        self.routing_bits + self.alice_vertex_bits + self.bob_arc_bits
    }

    pub fn within_bound(&self) -> bool {
        self.total() as i64 <= self.bound_value + KAPPA
    }
}

pub fn separator_protocol(
    g: &Graph,
    tree: &SeparatorTree,
    u: &VertexSubset,
    f: &EdgeSubset,
    d: &Rational,
) -> Result<(ProtocolRun, BitBudget), ProtocolError> {
    separator_protocol_with(g, tree, u, f, d, AliceChoice::Min)
}

/// Alice walks down `tree` while `U` misses the separator, sending the side
/// that contains `U` (one bit per level), then a stop bit. At the stopping
/// node she names a vertex of `U ∩ X` (or of `U` at a leaf) and both run
/// the rooted protocol on the host subgraph.
pub fn separator_protocol_with(
    g: &Graph,
    tree: &SeparatorTree,
    u: &VertexSubset,
    f: &EdgeSubset,
    d: &Rational,
    choice: AliceChoice,
) -> Result<(ProtocolRun, BitBudget), ProtocolError> {
    tree.validate(g)?;
    run_on_valid_tree(g, tree, u, f, d, choice)
}

pub(super) fn run_on_valid_tree(
    g: &Graph,
    tree: &SeparatorTree,
    u: &VertexSubset,
    f: &EdgeSubset,
    d: &Rational,
    choice: AliceChoice,
) -> Result<(ProtocolRun, BitBudget), ProtocolError> {
    if u.universe() != g.n() {
        return Err(GraphError::UniverseMismatch {
            expected: g.n(),
            actual: u.universe(),
        }
        .into());
    }
    if u.is_empty() || u.count() == g.n() {
        return Err(GraphError::ImproperSubset.into());
    }
    if !is_connected_subset(g, u) {
        return Err(ProtocolError::DisconnectedSubset);
    }
    if d.is_negative() {
        return Err(ProtocolError::Invalid(format!("density {d} is negative")));
    }

    let mut id = 0;
    let mut level = 1;
    loop {
        let node = tree.node(id);
        let Some((left, right)) = node.children else { break };
        if !u.is_disjoint(&node.separator) {
            break;
        }
        id = if u.is_subset(&tree.node(left).host) {
            left
        } else if u.is_subset(&tree.node(right).host) {
            right
        } else {
            return Err(ProtocolError::Invalid(format!("U straddles the separator at node {id}")));
        };
        level += 1;
    }

    let node = tree.node(id);
    let (candidates, alice_bits) = if node.is_leaf() {
        (u.clone(), index_bits(node.host.count()))
    } else {
        (u.intersection(&node.separator), index_bits(node.separator.count()))
    };
    let a = choice.pick(&candidates).expect("U meets the stopping node");
    let sub = g.induced_subgraph(&node.host);
    let local_a = sub.vertex_map.iter().position(|&v| v == a).expect("a in host");
    let local_u = sub.restrict_vertices(u);
    let local_f = sub.restrict_edges(f);
    let run = rooted_protocol(&sub.graph, &local_u, &local_f, local_a, alice_bits)?.with_extra_bits(level);

    let n = g.n();
    let params = &tree.params;
    let halvings = Rational::from_bigints(1.into(), num_bigint::BigInt::from(1) << (level - 1));
    let arc_term = (d + Rational::one()) * Rational::from(n) * halvings;
    let budget = BitBudget {
        level,
        routing_bits: level,
        alice_vertex_bits: alice_bits,
        bob_arc_bits: index_bits(2 * (sub.graph.m() + sub.graph.n())),
        bound_value: (level as i64 - 1) + ceil_log2_scaled_power(&params.c, n, params.beta) + ceil_log2(&arc_term),
    };
    debug_assert_eq!(budget.total(), run.max_bits);
    Ok((run, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Exponent;
    use crate::fixtures;
    use crate::graph::{connected_vertex_subsets, enumerate_forests, slack_oracle, EnumerationCaps};
    use crate::separators::{build_separator_tree, ExactOracle, TreeParams};

    fn tree_for(g: &Graph) -> SeparatorTree {
        let params = TreeParams::new(Rational::from_int(2), Exponent { p: 1, q: 2 }).with_leaf_threshold(2);
        build_separator_tree(g, params, &ExactOracle::new(Rational::new(1, 2))).unwrap()
    }

    #[test]
    fn path_descends_before_naming_a_vertex() {
        let g = fixtures::path(8);
        let tree = tree_for(&g);
        let f = EdgeSubset::full(7);
        let far = tree.root().children.map(|(l, _)| tree.node(l).host.first().unwrap()).unwrap();
        let u = VertexSubset::from_indices(8, [far]);
        let (run, budget) = separator_protocol(&g, &tree, &u, &f, &Rational::one()).unwrap();
        assert_eq!(run.expectation, Rational::zero());
        assert!(budget.level > 1);
        assert_eq!(budget.total(), run.max_bits);
        assert!(budget.within_bound());
    }

    #[test]
    fn expectation_is_slack_and_choice_invariant() {
        for (g, stride) in [(fixtures::cycle(6), 5), (fixtures::bowtie(), 5), (fixtures::grid(3), 97)] {
            let tree = tree_for(&g);
            let forests = enumerate_forests(&g, EnumerationCaps::default()).unwrap();
            let d = g.density();
            for u in connected_vertex_subsets(&g, false, EnumerationCaps::default()).unwrap() {
                for f in forests.iter().step_by(stride) {
                    let want = slack_oracle(&g, &u, f).unwrap();
                    let (lo, b) = separator_protocol_with(&g, &tree, &u, f, &d, AliceChoice::Min).unwrap();
                    let (hi, _) = separator_protocol_with(&g, &tree, &u, f, &d, AliceChoice::Max).unwrap();
                    assert_eq!(lo.expectation, want);
                    assert_eq!(hi.expectation, want);
                    assert!(b.within_bound(), "{b:?}");
                }
            }
        }
    }

    #[test]
    fn disconnected_subset_is_rejected() {
        let g = fixtures::path(4);
        let tree = tree_for(&g);
        let u = VertexSubset::from_indices(4, [0, 2]);
        assert_eq!(
            separator_protocol(&g, &tree, &u, &EdgeSubset::empty(3), &Rational::one()).unwrap_err(),
            ProtocolError::DisconnectedSubset
        );
    }
}
