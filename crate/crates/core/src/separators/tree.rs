use super::{SeparatorError, SeparatorOracle};
use crate::bounds::{within_power_bound, Exponent};
use crate::graph::{Graph, VertexSubset};
use crate::Rational;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeParams {
    pub c: Rational,
    pub beta: Exponent,
    pub leaf_threshold: usize,
}

impl TreeParams {
    /// Leaf threshold defaults to `max(ceil(c), 2)`.
    pub fn new(c: Rational, beta: Exponent) -> Self {
        let leaf = num_traits::ToPrimitive::to_usize(&c.ceil()).unwrap_or(usize::MAX).max(2);
        TreeParams {
            c,
            beta,
            leaf_threshold: leaf,
        }
    }

    pub fn with_leaf_threshold(mut self, t: usize) -> Self {
        self.leaf_threshold = t;
        self
    }

    fn check(&self) -> Result<(), SeparatorError> {
        if !self.c.is_positive() {
            return Err(SeparatorError::InvalidParameter(format!("c = {} must be positive", self.c)));
        }
        if self.leaf_threshold == 0 {
            return Err(SeparatorError::InvalidParameter("leaf threshold must be at least 1".into()));
        }
        if self.beta.p == 0 || self.beta.p >= self.beta.q {
            return Err(SeparatorError::InvalidParameter(format!(
                "beta = {}/{} outside (0, 1)",
                self.beta.p, self.beta.q
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    /// Host vertex set, over the vertices of the root graph.
    pub host: VertexSubset,
    /// Empty at leaves.
    pub separator: VertexSubset,
    /// `(left, right)`; the left child holds the smallest non-separator vertex.
    pub children: Option<(NodeId, NodeId)>,
    pub depth: usize,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

/// Nodes are stored in preorder; node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorTree {
    pub n: usize,
    pub nodes: Vec<TreeNode>,
    pub params: TreeParams,
}

pub fn build_separator_tree(
    g: &Graph,
    params: TreeParams,
    oracle: &dyn SeparatorOracle,
) -> Result<SeparatorTree, SeparatorError> {
    params.check()?;
    let mut tree = SeparatorTree {
        n: g.n(),
        nodes: Vec::new(),
        params,
    };
    tree.grow(g, g.all_vertices(), 0, oracle)?;
    Ok(tree)
}

fn ceil_half(h: usize) -> usize {
    h.div_ceil(2)
}

impl SeparatorTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(|t| t.depth).max().unwrap_or(0)
    }

    fn grow(
        &mut self,
        g: &Graph,
        host: VertexSubset,
        depth: usize,
        oracle: &dyn SeparatorOracle,
    ) -> Result<NodeId, SeparatorError> {
        let id = self.nodes.len();
        let h = host.count();
        self.nodes.push(TreeNode {
            host: host.clone(),
            separator: VertexSubset::empty(self.n),
            children: None,
            depth,
        });
        if h <= self.params.leaf_threshold {
            return Ok(id);
        }
        let sub = g.induced_subgraph(&host);
        let r = oracle.separate(&sub.graph)?;
        r.validate_split(&sub.graph)?;
        let y = sub.lift_vertices(&r.x, self.n);
        let a = sub.lift_vertices(&r.part_a, self.n);
        let b = sub.lift_vertices(&r.part_b, self.n);
        self.check_node(&host, &y, &a, &b)?;
        let (left, right) = order_sides(a, b);
        self.nodes[id].separator = y;
        let l = self.grow(g, left, depth + 1, oracle)?;
        let r = self.grow(g, right, depth + 1, oracle)?;
        self.nodes[id].children = Some((l, r));
        Ok(id)
    }

    fn check_node(
        &self,
        host: &VertexSubset,
        y: &VertexSubset,
        a: &VertexSubset,
        b: &VertexSubset,
    ) -> Result<(), SeparatorError> {
        let h = host.count();
        if !within_power_bound(y.count(), &self.params.c, h, self.params.beta) {
            return Err(SeparatorError::TooLarge {
                host: host.to_hex(),
                host_size: h,
                size: y.count(),
            });
        }
        if a.count() > ceil_half(h) || b.count() > ceil_half(h) {
            return Err(SeparatorError::NotHalved {
                host: host.to_hex(),
                n: h,
                a: a.count(),
                b: b.count(),
            });
        }
        Ok(())
    }

    /// Check every structural invariant against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), SeparatorError> {
        self.params.check()?;
        let mismatch = |m: String| Err(SeparatorError::TreeMismatch(m));
        if self.n != g.n() || self.nodes.is_empty() {
            return mismatch(format!("tree over {} vertices, graph has {}", self.n, g.n()));
        }
        if self.root().host != g.all_vertices() {
            return mismatch("root host is not V(G)".into());
        }
        let mut seen = vec![false; self.nodes.len()];
        seen[0] = true;
        for (id, node) in self.nodes.iter().enumerate() {
            let h = node.host.count();
            let leaf_by_size = h <= self.params.leaf_threshold;
            match node.children {
                None => {
                    if !leaf_by_size {
                        return mismatch(format!("node {id} is a leaf with {h} vertices"));
                    }
                    if !node.separator.is_empty() {
                        return mismatch(format!("leaf {id} has a separator"));
                    }
                }
                Some((l, r)) => {
                    if leaf_by_size {
                        return mismatch(format!("node {id} is internal with {h} vertices"));
                    }
                    if l >= self.nodes.len() || r >= self.nodes.len() || seen[l] || seen[r] || l <= id || r <= id {
                        return mismatch(format!("node {id} has bad child links"));
                    }
                    seen[l] = true;
                    seen[r] = true;
                    let (a, b) = (&self.nodes[l].host, &self.nodes[r].host);
                    let y = &node.separator;
                    if !y.is_subset(&node.host)
                        || !a.is_disjoint(b)
                        || !a.is_disjoint(y)
                        || !b.is_disjoint(y)
                        || a.union(b).union(y) != node.host
                    {
                        return mismatch(format!("node {id}: children and separator do not partition the host"));
                    }
                    for &(u, v) in g.edges() {
                        if (a.contains(u) && b.contains(v)) || (b.contains(u) && a.contains(v)) {
                            return mismatch(format!("node {id}: edge {{{u}, {v}}} joins the two children"));
                        }
                    }
                    if (a.clone(), b.clone()) != order_sides(a.clone(), b.clone()) {
                        return mismatch(format!("node {id}: children out of order"));
                    }
                    for (child, parent_depth) in [(l, node.depth), (r, node.depth)] {
                        if self.nodes[child].depth != parent_depth + 1 {
                            return mismatch(format!("node {child}: wrong depth"));
                        }
                    }
                    self.check_node(&node.host, y, a, b)?;
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return mismatch("unreachable nodes".into());
        }
        Ok(())
    }

    /// One line per node in preorder, after a parameter comment.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# n={} c={} beta={}/{} leaf={}\n",
            self.n,
            self.params.c.to_fraction_string(),
            self.params.beta.p,
            self.params.beta.q,
            self.params.leaf_threshold
        );
        for node in &self.nodes {
            s.push_str(&format!(
                "host={} sep={} {}\n",
                node.host.to_hex(),
                node.separator.to_hex(),
                if node.is_leaf() { "leaf" } else { "internal" }
            ));
        }
        s
    }

    /// Parse the text format. Parameters come from the header comment if
    /// present, otherwise from `params`. Structure is rebuilt from preorder;
    /// call [`SeparatorTree::validate`] afterwards.
    pub fn from_text(n: usize, text: &str, params: TreeParams) -> Result<Self, SeparatorError> {
        let mut params = params;
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                parse_header(comment, &mut params).map_err(|msg| SeparatorError::Parse { line: lineno, msg })?;
                continue;
            }
            let perr = |msg: String| SeparatorError::Parse { line: lineno, msg };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(perr(format!("expected 3 fields, found {}", parts.len())));
            }
            let host = parts[0]
                .strip_prefix("host=")
                .and_then(|h| VertexSubset::from_hex(n, h))
                .ok_or_else(|| perr("bad host field".into()))?;
            let sep = parts[1]
                .strip_prefix("sep=")
                .and_then(|h| VertexSubset::from_hex(n, h))
                .ok_or_else(|| perr("bad sep field".into()))?;
            let leaf = match parts[2] {
                "leaf" => true,
                "internal" => false,
                other => return Err(perr(format!("expected leaf|internal, found {other:?}"))),
            };
            rows.push((lineno, host, sep, leaf));
        }
        let mut tree = SeparatorTree {
            n,
            nodes: Vec::with_capacity(rows.len()),
            params,
        };
        let mut next = 0;
        tree.read_preorder(&rows, &mut next, 0)?;
        if next != rows.len() {
            return Err(SeparatorError::Parse {
                line: rows[next].0,
                msg: "trailing nodes after a complete tree".into(),
            });
        }
        Ok(tree)
    }

    fn read_preorder(
        &mut self,
        rows: &[(usize, VertexSubset, VertexSubset, bool)],
        next: &mut usize,
        depth: usize,
    ) -> Result<NodeId, SeparatorError> {
        let Some((_, host, sep, leaf)) = rows.get(*next).cloned() else {
            return Err(SeparatorError::Parse {
                line: rows.last().map_or(0, |r| r.0),
                msg: "tree ends early".into(),
            });
        };
        *next += 1;
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            host,
            separator: sep,
            children: None,
            depth,
        });
        if !leaf {
            let l = self.read_preorder(rows, next, depth + 1)?;
            let r = self.read_preorder(rows, next, depth + 1)?;
            self.nodes[id].children = Some((l, r));
        }
        Ok(id)
    }
}

fn parse_header(comment: &str, params: &mut TreeParams) -> Result<(), String> {
    for field in comment.split_whitespace() {
        let Some((key, value)) = field.split_once('=') else {
            continue;
        };
        match key {
            "c" => params.c = value.parse().map_err(|_| format!("bad c {value:?}"))?,
            "beta" => {
                let r: Rational = value.parse().map_err(|_| format!("bad beta {value:?}"))?;
                params.beta = Exponent::from_rational(&r).ok_or(format!("beta {value} outside (0, 1)"))?;
            }
            "leaf" => params.leaf_threshold = value.parse().map_err(|_| format!("bad leaf {value:?}"))?,
            _ => {}
        }
    }
    Ok(())
}

/// Left side first: the one containing the smaller vertex overall.
fn order_sides(a: VertexSubset, b: VertexSubset) -> (VertexSubset, VertexSubset) {
    match (a.first(), b.first()) {
        (Some(x), Some(y)) if y < x => (b, a),
        (None, Some(_)) => (b, a),
        _ => (a, b),
    }
}
