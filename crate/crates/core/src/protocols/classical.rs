use super::{index_bits, Outcome, ProtocolError, ProtocolRun};
use crate::formulations::{forest_witness, q_arcs, Node};
use crate::graph::{EdgeSubset, Graph, GraphError};
use crate::{Rational, VertexSubset};

/// Which vertex of her set Alice announces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AliceChoice {
    #[default]
    Min,
    Max,
}

impl AliceChoice {
    pub fn pick(self, set: &VertexSubset) -> Option<usize> {
        match self {
            AliceChoice::Min => set.first(),
            AliceChoice::Max => set.last(),
        }
    }
}

fn check_inputs(g: &Graph, u: &VertexSubset, f: &EdgeSubset) -> Result<(), GraphError> {
    if u.universe() != g.n() {
        return Err(GraphError::UniverseMismatch {
            expected: g.n(),
            actual: u.universe(),
        });
    }
    if f.universe() != g.m() {
        return Err(GraphError::UniverseMismatch {
            expected: g.m(),
            actual: f.universe(),
        });
    }
    if !g.is_forest(f) {
        return Err(GraphError::NotForest);
    }
    Ok(())
}

/// Alice announces `a ∈ U` using `alice_bits`. Bob completes `F` to a
/// spanning tree of `G^+` rooted at `a`, picks one of its `n` arcs
/// (oriented away from the root) uniformly and announces it. Alice outputs
/// `n` when the arc enters `U` from outside, else 0. `U = V` is allowed.
pub fn rooted_protocol(
    g: &Graph,
    u: &VertexSubset,
    f: &EdgeSubset,
    a: usize,
    alice_bits: usize,
) -> Result<ProtocolRun, ProtocolError> {
    check_inputs(g, u, f)?;
    if !u.contains(a) {
        return Err(ProtocolError::VertexNotInSubset(a));
    }
    let n = g.n();
    let z = forest_witness(g, a, f)?;
    let arc_bits = index_bits(2 * (g.m() + n));
    let inside = |x: Node| matches!(x, Node::Vertex(v) if u.contains(v));
    let p = Rational::new(1, n as i64);
    let outcomes: Vec<Outcome> = q_arcs(g)
        .into_iter()
        .zip(z)
        .filter(|(_, zi)| !zi.is_zero())
        // z marks (child, parent); Bob's arc points from parent to child
        .map(|((child, parent), _)| Outcome {
            probability: p.clone(),
            bits: alice_bits + arc_bits,
            output: if inside(child) && !inside(parent) {
                Rational::from(n)
            } else {
                Rational::zero()
            },
        })
        .collect();
    debug_assert_eq!(outcomes.len(), n);
    Ok(ProtocolRun::from_outcomes(outcomes))
}

/// Spanning-tree variant: Bob already holds a spanning tree `T` of `g`
/// (which may be a multigraph), so no apex is needed. He roots `T` at `a`,
/// picks one of its `n - 1` arcs uniformly and announces it among the `2m`
/// arcs of `g`; Alice outputs `n - 1` when it enters `U`.
pub fn spanning_tree_protocol(
    g: &Graph,
    u: &VertexSubset,
    t: &EdgeSubset,
    a: usize,
    alice_bits: usize,
) -> Result<ProtocolRun, ProtocolError> {
    check_inputs(g, u, t)?;
    if !g.is_spanning_tree(t) || g.n() < 2 {
        return Err(ProtocolError::Invalid("expected a spanning tree on at least two vertices".into()));
    }
    if !u.contains(a) {
        return Err(ProtocolError::VertexNotInSubset(a));
    }
    let n = g.n();
    let arc_bits = index_bits(2 * g.m());
    let p = Rational::new(1, (n - 1) as i64);
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut stack = vec![a];
    let mut outcomes = Vec::with_capacity(n - 1);
    while let Some(v) = stack.pop() {
        for &e in g.incident(v) {
            let w = g.other_end(e, v);
            if !t.contains(e) || seen[w] {
                continue;
            }
            seen[w] = true;
            stack.push(w);
            outcomes.push(Outcome {
                probability: p.clone(),
                bits: alice_bits + arc_bits,
                output: if u.contains(w) && !u.contains(v) {
                    Rational::from(n - 1)
                } else {
                    Rational::zero()
                },
            });
        }
    }
    Ok(ProtocolRun::from_outcomes(outcomes))
}

/// The protocol on the whole graph: Alice names a vertex of `U` among all
/// `n`, Bob names an arc of `G^+`.
pub fn classical_protocol(
    g: &Graph,
    u: &VertexSubset,
    f: &EdgeSubset,
    choice: AliceChoice,
) -> Result<ProtocolRun, ProtocolError> {
    check_inputs(g, u, f)?;
    if u.is_empty() || u.count() == g.n() {
        return Err(GraphError::ImproperSubset.into());
    }
    let a = choice.pick(u).expect("non-empty");
    rooted_protocol(g, u, f, a, index_bits(g.n()))
}
