use std::fmt::Write as _;

use super::{append_martin_q, edmonds_system, FormulationError, LinearSystem};
use crate::bounds::{trivial_leaf_allowance, Exponent, RecurrenceBound};
use crate::graph::{EnumerationCaps, Graph};
use crate::separators::{NodeId, SeparatorTree};
use crate::Rational;

/// Rows added at one construction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub node: NodeId,
    pub step: String,
    pub added: usize,
    pub running: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeLedger {
    pub n: usize,
    pub c: Rational,
    pub beta: Exponent,
    pub entries: Vec<LedgerEntry>,
    /// Vertex count of every leaf host.
    pub leaf_hosts: Vec<usize>,
    /// `Σ 2|Y|(|E(H)| + |V(H)|)` over internal nodes plus the leaf systems.
    pub node_budget: usize,
    /// Largest `|E(H)| / |V(H)|` over all tree hosts.
    pub max_host_density: Rational,
}

impl SizeLedger {
    pub fn total(&self) -> usize {
        self.entries.last().map_or(0, |e| e.running)
    }

    pub fn closed_form(&self, d: &Rational) -> RecurrenceBound {
        RecurrenceBound::new(self.c.clone(), d.clone(), self.beta, self.n)
    }

    /// `Σ 2^(d·n_leaf)` over the leaves.
    pub fn leaf_allowance(&self, d: &Rational) -> Rational {
        self.leaf_hosts.iter().map(|&h| trivial_leaf_allowance(d, h)).sum()
    }

    /// `total <= 3/(1 - 2^-beta) · c·d·n^(1+beta) + leaf allowance`, exactly.
    pub fn within_bound(&self, d: &Rational) -> bool {
        let excess = Rational::from(self.total()) - self.leaf_allowance(d);
        !excess.is_positive() || self.closed_form(d).admits(&excess)
    }

    pub fn to_text(&self, d: &Rational) -> String {
        let mut out = format!(
            "# n={} c={} beta={}/{} d={}\n",
            self.n,
            self.c.to_fraction_string(),
            self.beta.p,
            self.beta.q,
            d.to_fraction_string()
        );
        for e in &self.entries {
            writeln!(out, "node {} {} +{} total={}", e.node, e.step, e.added, e.running).unwrap();
        }
        let (lo, hi) = self.closed_form(d).bracket(32);
        writeln!(out, "total {}", self.total()).unwrap();
        writeln!(out, "node_budget {}", self.node_budget).unwrap();
        writeln!(out, "closed_form {:.3} in [{}, {}]", self.closed_form(d).approx(), lo.floor(), hi.ceil()).unwrap();
        writeln!(out, "leaf_allowance {}", self.leaf_allowance(d)).unwrap();
        writeln!(out, "max_host_density {}", self.max_host_density.to_fraction_string()).unwrap();
        writeln!(out, "within_bound {}", self.within_bound(d)).unwrap();
        out
    }
}

/// Default leaf system: connected-set rank rows including the full set.
pub fn edmonds_base(g: &Graph) -> Result<LinearSystem, FormulationError> {
    edmonds_system(g, true, true, EnumerationCaps::default())
}

/// Assemble an extended formulation of the forest polytope of `g` along
/// `tree`. At an internal node with host `H` and separator `y_1 < … < y_k`,
/// the arc system of `H - {y_1..y_(i-1)}` rooted at `y_i` is added for each
/// `i`; leaves get `base` on their induced subgraph. Edges at a deleted
/// vertex simply do not occur further down.
pub fn recursive_ef(
    g: &Graph,
    tree: &SeparatorTree,
    base: &dyn Fn(&Graph) -> Result<LinearSystem, FormulationError>,
) -> Result<(LinearSystem, SizeLedger), FormulationError> {
    tree.validate(g)?;
    let mut sys = LinearSystem::new(g.m());
    let mut ledger = SizeLedger {
        n: g.n(),
        c: tree.params.c.clone(),
        beta: tree.params.beta,
        entries: Vec::new(),
        leaf_hosts: Vec::new(),
        node_budget: 0,
        max_host_density: Rational::zero(),
    };
    let record = |sys: &LinearSystem, ledger: &mut SizeLedger, node, step: String, before: usize| {
        ledger.entries.push(LedgerEntry {
            node,
            step,
            added: sys.size() - before,
            running: sys.size(),
        });
    };
    for (id, node) in tree.nodes.iter().enumerate() {
        let host_graph = g.induced_subgraph(&node.host);
        if node.host.count() > 0 {
            ledger.max_host_density = ledger.max_host_density.clone().max(host_graph.graph.density());
        }
        if node.is_leaf() {
            let before = sys.size();
            let leaf = base(&host_graph.graph)?;
            sys.absorb(&leaf, &host_graph.edge_map, |t| format!("L{id}:{t}"));
            ledger.leaf_hosts.push(node.host.count());
            ledger.node_budget += leaf.size();
            record(&sys, &mut ledger, id, format!("leaf |V|={}", node.host.count()), before);
            continue;
        }
        let h = &host_graph.graph;
        ledger.node_budget += 2 * node.separator.count() * (h.m() + h.n());
        let mut residual = node.host.clone();
        for (i, y) in node.separator.iter().enumerate() {
            let sub = g.induced_subgraph(&residual);
            let r = sub.vertex_map.iter().position(|&v| v == y).expect("separator vertex in host");
            let before = sys.size();
            append_martin_q(&mut sys, &sub.graph, &sub.edge_map, &sub.vertex_map, &format!("{id}.{i}"), r)?;
            record(
                &sys,
                &mut ledger,
                id,
                format!("Q root={y} |V|={} |E|={}", sub.graph.n(), sub.graph.m()),
                before,
            );
            residual.remove(y);
        }
    }
    Ok((sys, ledger))
}
