//! Graphs with positional edge identity, vertex/edge subsets, and the
//! enumeration and decomposition routines the rest of the crate is
//! verified against.
//!
//! Edge `i` is the `i`-th entry of the edge list for the lifetime of a
//! [`Graph`]. Duals and contractions are multigraphs, so every cross-graph
//! correspondence is an index map rather than an endpoint-pair lookup.

mod blocks;
mod enumerate;
mod ops;
mod subset;

pub use blocks::{blocks, Block};
pub use enumerate::{
    enumerate_forests, enumerate_spanning_trees, forest_masks, matrix_tree_count,
    EnumerationCaps,
};
pub use ops::{
    connected_vertex_subsets, contract, is_connected_subset, slack_oracle, Contraction,
};
pub use subset::{EdgeSubset, VertexSubset};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0} not allowed in a simple graph")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}} not allowed in a simple graph")]
    DuplicateEdge(usize, usize),
    #[error("enumeration cap exceeded: {what} = {actual} > {cap}")]
    CapExceeded { what: &'static str, actual: usize, cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge set is not a forest")]
    NotForest,
    #[error("vertex set must be non-empty and proper")]
    ImproperSubset,
    #[error("subset universe {actual} does not match host size {expected}")]
    UniverseMismatch { expected: usize, actual: usize },
    #[error("induced subgraph on the given vertex set is disconnected")]
    DisconnectedSubset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    /// No loops, no parallel edges.
    Simple,
    /// Parallel edges and loops allowed (planar duals, contractions).
    Multi,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    multigraph: bool,
    incidence: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .field("multigraph", &self.multigraph)
            .finish()
    }
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, mode: GraphMode) -> Result<Self, GraphError> {
        let mut incidence = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if mode == GraphMode::Simple {
                if u == v {
                    return Err(GraphError::Loop(u));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
            }
            incidence[u].push(i);
            incidence[v].push(i);
        }
        Ok(Graph {
            n,
            edges,
            multigraph: mode == GraphMode::Multi,
            incidence,
        })
    }

    pub fn simple(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(n, edges.to_vec(), GraphMode::Simple)
    }

    pub fn multi(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(n, edges.to_vec(), GraphMode::Multi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge indices incident to `v`; a loop is listed twice.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(move |&e| self.other_end(e, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn all_vertices(&self) -> VertexSubset {
        VertexSubset::full(self.n)
    }

    /// `E(U)`: edges with both ends in `u`.
    pub fn induced_edges(&self, u: &VertexSubset) -> EdgeSubset {
        EdgeSubset::from_indices(
            self.m(),
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| u.contains(a) && u.contains(b))
                .map(|(i, _)| i),
        )
    }

    /// Induced subgraph on `u`, vertices and edges kept in ascending host order.
    pub fn induced_subgraph(&self, u: &VertexSubset) -> Subgraph {
        let vertex_map: Vec<usize> = u.iter().collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertex_map.iter().enumerate() {
            local[v] = i;
        }
        let mut edge_map = Vec::new();
        let mut edges = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if u.contains(a) && u.contains(b) {
                edge_map.push(i);
                edges.push((local[a], local[b]));
            }
        }
        let graph = Graph::new(
            vertex_map.len(),
            edges,
            if self.multigraph { GraphMode::Multi } else { GraphMode::Simple },
        )
        .expect("induced subgraph of a valid graph is valid");
        Subgraph {
            graph,
            vertex_map,
            edge_map,
        }
    }

    /// Component label per vertex, labels in order of smallest member.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        self.component_labels_within(&self.all_vertices())
    }

    /// Components of `G[u]`; vertices outside `u` get `usize::MAX`.
    pub fn component_labels_within(&self, u: &VertexSubset) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in u.iter() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if u.contains(w) && label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// Acyclic edge set (loops are cycles).
    pub fn is_forest(&self, f: &EdgeSubset) -> bool {
        if f.universe() != self.m() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        f.iter().all(|e| {
            let (a, b) = self.edges[e];
            uf.union(a, b)
        })
    }

    pub fn is_spanning_tree(&self, t: &EdgeSubset) -> bool {
        self.n > 0 && t.count() + 1 == self.n && self.is_forest(t)
    }

    /// 2-connectivity with the small-graph convention: graphs on one or two
    /// vertices count when connected; larger graphs need connectivity and no
    /// cut vertex. Parallel edges and loops do not affect the answer.
    pub fn is_two_connected(&self) -> bool {
        match self.n {
            0 => false,
            1 => true,
            2 => self.is_connected(),
            _ => {
                self.is_connected()
                    && (0..self.n).all(|v| {
                        let rest = VertexSubset::full(self.n).difference(&VertexSubset::from_indices(self.n, [v]));
                        self.component_labels_within(&rest).1 == 1
                    })
            }
        }
    }

    /// `|E| / |V|`, or zero for the empty graph.
    pub fn density(&self) -> crate::Rational {
        if self.n == 0 {
            return crate::Rational::zero();
        }
        crate::Rational::from(self.m()) / crate::Rational::from(self.n)
    }

    /// Graph file text: `n m`, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(a, b) in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

/// Induced subgraph with index maps back into the host.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// local vertex -> host vertex
    pub vertex_map: Vec<usize>,
    /// local edge -> host edge
    pub edge_map: Vec<usize>,
}

impl Subgraph {
    pub fn lift_vertices(&self, local: &VertexSubset, host_n: usize) -> VertexSubset {
        VertexSubset::from_indices(host_n, local.iter().map(|v| self.vertex_map[v]))
    }

    pub fn restrict_edges(&self, host: &EdgeSubset) -> EdgeSubset {
        EdgeSubset::from_indices(
            self.edge_map.len(),
            self.edge_map.iter().enumerate().filter(|(_, &e)| host.contains(e)).map(|(i, _)| i),
        )
    }

    pub fn restrict_vertices(&self, host: &VertexSubset) -> VertexSubset {
        VertexSubset::from_indices(
            self.vertex_map.len(),
            self.vertex_map.iter().enumerate().filter(|(_, &v)| host.contains(v)).map(|(i, _)| i),
        )
    }
}

/// Parse the graph file format. `#` starts a comment line; blank lines are
/// skipped.
pub fn parse_graph(text: &str, mode: GraphMode) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(GraphError::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines.by_ref().take(m) {
        edges.push(parse_pair(line, l)?);
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(GraphError::Parse {
            line,
            msg: "trailing content after edge list".into(),
        });
    }
    Graph::new(n, edges, mode)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let bad = |msg: &str| GraphError::Parse {
        line,
        msg: format!("{msg}: {l:?}"),
    };
    let mut it = l.split_whitespace();
    let a = it.next().ok_or_else(|| bad("expected two integers"))?;
    let b = it.next().ok_or_else(|| bad("expected two integers"))?;
    if it.next().is_some() {
        return Err(bad("expected exactly two integers"));
    }
    Ok((
        a.parse().map_err(|_| bad("not a non-negative integer"))?,
        b.parse().map_err(|_| bad("not a non-negative integer"))?,
    ))
}

/// Union-find by size with an undo log.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// False when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.log.push((ra, rb));
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.log.len()
    }

    pub fn rollback(&mut self, to: usize) {
        while self.log.len() > to {
            let (ra, rb) = self.log.pop().unwrap();
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}
