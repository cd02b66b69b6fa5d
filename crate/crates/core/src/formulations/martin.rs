//! The arc system `Q(G, r)` over `G^+`, the graph `G` plus an apex adjacent
//! to every vertex: each non-root node of `G^+` picks exactly one parent
//! arc, the root picks none, and `x_vw` is the sum of the two orientations
//! of `vw`.

use std::collections::VecDeque;
use std::fmt;

use super::{FormulationError, LinearSystem, Row};
use crate::graph::{EdgeSubset, Graph, GraphError};
use crate::Rational;

pub const APEX_TAG: &str = "+";

/// A node of `G^+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Vertex(usize),
    Apex,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Vertex(v) => write!(f, "{v}"),
            Node::Apex => f.write_str(APEX_TAG),
        }
    }
}

impl Node {
    fn parse(s: &str) -> Option<Node> {
        if s == APEX_TAG {
            Some(Node::Apex)
        } else {
            s.parse().ok().map(Node::Vertex)
        }
    }

    fn map(self, names: &[usize]) -> Node {
        match self {
            Node::Vertex(v) => Node::Vertex(names[v]),
            Node::Apex => Node::Apex,
        }
    }
}

/// Arcs of `G^+`: both orientations of each edge in edge order, then
/// `(v, apex), (apex, v)` for each vertex.
pub fn q_arcs(g: &Graph) -> Vec<(Node, Node)> {
    let mut arcs = Vec::with_capacity(2 * (g.m() + g.n()));
    for &(u, v) in g.edges() {
        arcs.push((Node::Vertex(u), Node::Vertex(v)));
        arcs.push((Node::Vertex(v), Node::Vertex(u)));
    }
    for v in 0..g.n() {
        arcs.push((Node::Vertex(v), Node::Apex));
        arcs.push((Node::Apex, Node::Vertex(v)));
    }
    arcs
}

/// Parsed auxiliary tag `q<block>/r<root>/<tail>-<head>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcTag {
    pub block: String,
    pub root: usize,
    pub tail: Node,
    pub head: Node,
}

pub fn parse_arc_tag(tag: &str) -> Option<ArcTag> {
    let rest = tag.strip_prefix('q')?;
    let mut parts = rest.split('/');
    let block = parts.next()?;
    let root = parts.next()?.strip_prefix('r')?.parse().ok()?;
    let (tail, head) = parts.next()?.split_once('-')?;
    if parts.next().is_some() || block.is_empty() {
        return None;
    }
    Some(ArcTag {
        block: block.to_string(),
        root,
        tail: Node::parse(tail)?,
        head: Node::parse(head)?,
    })
}

fn arc_tag(block: &str, root: usize, tail: Node, head: Node) -> String {
    format!("q{block}/r{root}/{tail}-{head}")
}

/// `Q(G, r)` with `G`'s edges as the original variables.
pub fn martin_q(g: &Graph, r: usize) -> Result<LinearSystem, FormulationError> {
    let mut sys = LinearSystem::new(g.m());
    let orig: Vec<usize> = (0..g.m()).collect();
    let names: Vec<usize> = (0..g.n()).collect();
    append_martin_q(&mut sys, g, &orig, &names, "0", r)?;
    Ok(sys)
}

/// Add `Q(g, r)` to `sys`. Edge `e` of `g` is the variable `orig[e]` of
/// `sys`; vertex `v` of `g` is written as `names[v]` in the tags. Returns
/// the variable index of each arc, in [`q_arcs`] order.
pub fn append_martin_q(
    sys: &mut LinearSystem,
    g: &Graph,
    orig: &[usize],
    names: &[usize],
    block: &str,
    r: usize,
) -> Result<Vec<usize>, FormulationError> {
    if r >= g.n() {
        return Err(FormulationError::RootOutOfRange(r));
    }
    let root = names[r];
    let arcs = q_arcs(g);
    let vars: Vec<usize> = arcs
        .iter()
        .map(|&(t, h)| sys.add_aux(arc_tag(block, root, t.map(names), h.map(names))))
        .collect();
    let one = Rational::one;
    for &z in &vars {
        sys.add_inequality(Row::new([(z, Rational::from_int(-1))], Rational::zero()));
    }
    // the root has no parent
    for (i, &(t, _)) in arcs.iter().enumerate() {
        if t == Node::Vertex(r) {
            sys.add_equality(Row::new([(vars[i], one())], Rational::zero()));
        }
    }
    // x_vw = z_(v,w) + z_(w,v)
    for e in 0..g.m() {
        sys.add_equality(Row::new(
            [
                (orig[e], one()),
                (vars[2 * e], Rational::from_int(-1)),
                (vars[2 * e + 1], Rational::from_int(-1)),
            ],
            Rational::zero(),
        ));
    }
    // every other node has exactly one parent arc
    let mut tails: Vec<Node> = (0..g.n()).filter(|&v| v != r).map(Node::Vertex).collect();
    tails.push(Node::Apex);
    for node in tails {
        let row = arcs
            .iter()
            .enumerate()
            .filter(|(_, &(t, _))| t == node)
            .map(|(i, _)| (vars[i], one()));
        sys.add_equality(Row::new(row, one()));
    }
    Ok(vars)
}

/// How a node of the completed tree reaches its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ParentLink {
    Root,
    Edge(usize),
    ToApex,
    FromApex(usize),
}

/// Complete the forest `f` to a spanning tree of `G^+` by joining the apex
/// to the smallest vertex of each component of `f`, root it at `r`, and
/// return the parent indicator over [`q_arcs`].
pub fn forest_witness(g: &Graph, r: usize, f: &EdgeSubset) -> Result<Vec<Rational>, FormulationError> {
    if r >= g.n() {
        return Err(FormulationError::RootOutOfRange(r));
    }
    if f.universe() != g.m() {
        return Err(GraphError::UniverseMismatch {
            expected: g.m(),
            actual: f.universe(),
        }
        .into());
    }
    if !g.is_forest(f) {
        return Err(GraphError::NotForest.into());
    }
    let links = parent_links(g, r, f);
    let n = g.n();
    let mut z = Vec::with_capacity(2 * (g.m() + n));
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        z.push(Rational::from(usize::from(links[u] == ParentLink::Edge(e))));
        z.push(Rational::from(usize::from(links[v] == ParentLink::Edge(e))));
    }
    for v in 0..n {
        z.push(Rational::from(usize::from(links[v] == ParentLink::ToApex)));
        z.push(Rational::from(usize::from(links[n] == ParentLink::FromApex(v))));
    }
    Ok(z)
}

/// Parent links of the completed tree, indexed by vertex, with the apex at
/// index `n`.
fn parent_links(g: &Graph, r: usize, f: &EdgeSubset) -> Vec<ParentLink> {
    let n = g.n();
    // adjacency over forest edges plus apex edges: (neighbour, link used by neighbour)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for e in f.iter() {
        let (u, v) = g.edge(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut seen = vec![false; n];
    const APEX_EDGE: usize = usize::MAX;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        // s is the smallest vertex of its component
        adj[n].push((s, APEX_EDGE));
        adj[s].push((n, APEX_EDGE));
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &(w, e) in &adj[v] {
                if w < n && e != APEX_EDGE && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut links = vec![ParentLink::Root; n + 1];
    let mut visited = vec![false; n + 1];
    visited[r] = true;
    let mut queue = VecDeque::from([r]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if visited[w] {
                continue;
            }
            visited[w] = true;
            links[w] = if e != APEX_EDGE {
                ParentLink::Edge(e)
            } else if w == n {
                ParentLink::FromApex(v)
            } else {
                ParentLink::ToApex
            };
            queue.push_back(w);
        }
    }
    links
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{enumerate_forests, EnumerationCaps};

    fn point(g: &Graph, f: &EdgeSubset, z: &[Rational]) -> Vec<Rational> {
        (0..g.m())
            .map(|e| Rational::from(usize::from(f.contains(e))))
            .chain(z.iter().cloned())
            .collect()
    }

    #[test]
    fn k3_counts() {
        let q = martin_q(&fixtures::complete(3), 0).unwrap();
        assert_eq!(q.num_aux(), 12);
        assert_eq!(q.size(), 12);
        assert_eq!(q.equalities.len(), 9);
    }

    #[test]
    fn small_sizes() {
        let k1 = martin_q(&fixtures::path(1), 0).unwrap();
        assert_eq!((k1.num_aux(), k1.size()), (2, 2));
        assert_eq!(martin_q(&fixtures::path(3), 1).unwrap().size(), 10);
        assert!(matches!(
            martin_q(&fixtures::path(3), 3),
            Err(FormulationError::RootOutOfRange(3))
        ));
    }

    #[test]
    fn witness_examples() {
        let k3 = fixtures::complete(3);
        let f = EdgeSubset::from_indices(3, [0]);
        let z = forest_witness(&k3, 0, &f).unwrap();
        assert_eq!(z.iter().filter(|v| v.is_positive()).count(), 3);

        let p = fixtures::path(3);
        let z = forest_witness(&p, 0, &EdgeSubset::full(2)).unwrap();
        let ones: Vec<(Node, Node)> = q_arcs(&p)
            .into_iter()
            .zip(&z)
            .filter(|(_, v)| v.is_positive())
            .map(|(a, _)| a)
            .collect();
        use Node::{Apex, Vertex};
        assert_eq!(
            ones,
            vec![(Vertex(1), Vertex(0)), (Vertex(2), Vertex(1)), (Apex, Vertex(0))]
        );
    }

    #[test]
    fn empty_forest_is_a_star() {
        let g = fixtures::cycle(4);
        let z = forest_witness(&g, 2, &EdgeSubset::empty(4)).unwrap();
        for ((t, h), v) in q_arcs(&g).into_iter().zip(&z) {
            let expect = matches!((t, h), (Node::Vertex(x), Node::Apex) if x != 2)
                || (t, h) == (Node::Apex, Node::Vertex(2));
            assert_eq!(v.is_positive(), expect, "{t}->{h}");
        }
    }

    #[test]
    fn every_forest_has_a_witness_for_every_root() {
        for g in [fixtures::complete(4), fixtures::bowtie(), fixtures::path(4)] {
            for r in 0..g.n() {
                let q = martin_q(&g, r).unwrap();
                for f in enumerate_forests(&g, EnumerationCaps::default()).unwrap() {
                    let z = forest_witness(&g, r, &f).unwrap();
                    assert_eq!(q.first_violation(&point(&g, &f, &z)), None);
                }
            }
        }
    }

    #[test]
    fn tags_round_trip() {
        let q = martin_q(&fixtures::path(2), 1).unwrap();
        let tags: Vec<ArcTag> = q.tags[1..].iter().map(|t| parse_arc_tag(t).unwrap()).collect();
        assert_eq!(tags[0].tail, Node::Vertex(0));
        assert_eq!(tags[0].root, 1);
        assert_eq!(tags[2].head, Node::Apex);
        assert_eq!(tags[3].tail, Node::Apex);
        assert_eq!(parse_arc_tag("x0"), None);
        assert_eq!(parse_arc_tag("q1/r2/3-4/5"), None);
    }

    #[test]
    fn witness_rejects_cycles() {
        let g = fixtures::complete(3);
        let f = EdgeSubset::full(3);
        assert!(forest_witness(&g, 0, &f).is_err());
    }
}
