use std::fmt::Write as _;

use super::separator::run_on_valid_tree;
use super::{classical_protocol, index_bits, AliceChoice, ProtocolError};
use crate::graph::{connected_vertex_subsets, enumerate_forests, slack_oracle, EnumerationCaps, Graph};
use crate::separators::SeparatorTree;
use crate::{EdgeSubset, Rational, VertexSubset};

/// Bits sent by the classical protocol: `ceil(log2 n) + ceil(log2 2(|E|+|V|))`.
pub fn classical_bits_bound(g: &Graph) -> usize {
    index_bits(g.n()) + index_bits(2 * (g.m() + g.n()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepLine {
    pub pass: bool,
    pub u: VertexSubset,
    pub f: EdgeSubset,
    pub expectation: Rational,
    pub slack: Rational,
    pub bits: usize,
    /// Per-run bound (separator protocol only).
    pub bound: Option<i64>,
}

impl SweepLine {
    pub fn to_line(&self) -> String {
        let mut s = format!(
            "{} {} {} exp={} slack={} bits={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.u.to_hex(),
            self.f.to_hex(),
            self.expectation.to_fraction_string(),
            self.slack.to_fraction_string(),
            self.bits
        );
        if let Some(b) = self.bound {
            write!(s, " bound={b}").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub protocol: &'static str,
    pub n: usize,
    pub m: usize,
    pub lines: Vec<SweepLine>,
    pub max_bits: usize,
    /// Classical: the fixed bit count. Separator: the largest per-run bound.
    pub bound: i64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.pass).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# protocol={} n={} m={} runs={} failures={} max_bits={} bound={}\n",
            self.protocol,
            self.n,
            self.m,
            self.lines.len(),
            self.failures(),
            self.max_bits,
            self.bound
        );
        for l in &self.lines {
            out.push_str(&l.to_line());
            out.push('\n');
        }
        out
    }
}

/// Run the classical protocol (`tree = None`, every non-empty proper `U`)
/// or the separator protocol (every connected proper `U`) against every
/// forest of `g`. A line passes when the expectation equals the slack and
/// the bits respect the bound; separator runs must also agree when Alice
/// picks her largest vertex instead of her smallest.
pub fn protocol_sweep(
    g: &Graph,
    tree: Option<&SeparatorTree>,
    d: &Rational,
    caps: EnumerationCaps,
) -> Result<SweepReport, ProtocolError> {
    caps.check_vertices(g)?;
    if let Some(tree) = tree {
        tree.validate(g)?;
    }
    let forests = enumerate_forests(g, caps)?;
    let n = g.n();
    let subsets: Vec<VertexSubset> = match tree {
        None => (1..(1u64 << n).saturating_sub(1))
            .map(|mask| VertexSubset::from_mask(n, mask))
            .collect(),
        Some(_) => connected_vertex_subsets(g, false, caps)?,
    };
    let mut lines = Vec::with_capacity(subsets.len() * forests.len());
    let classical_bound = classical_bits_bound(g) as i64;
    let mut bound = if tree.is_some() { 0 } else { classical_bound };
    for u in &subsets {
        for f in &forests {
            let slack = slack_oracle(g, u, f)?;
            let line = match tree {
                None => {
                    let run = classical_protocol(g, u, f, AliceChoice::Min)?;
                    SweepLine {
                        pass: run.expectation == slack && run.max_bits as i64 <= classical_bound,
                        u: u.clone(),
                        f: f.clone(),
                        expectation: run.expectation,
                        slack,
                        bits: run.max_bits,
                        bound: None,
                    }
                }
                Some(tree) => {
                    let (run, budget) = run_on_valid_tree(g, tree, u, f, d, AliceChoice::Min)?;
                    let (alt, _) = run_on_valid_tree(g, tree, u, f, d, AliceChoice::Max)?;
                    bound = bound.max(budget.bound_value);
                    SweepLine {
                        pass: run.expectation == slack && alt.expectation == slack && budget.within_bound(),
                        u: u.clone(),
                        f: f.clone(),
                        expectation: run.expectation,
                        slack,
                        bits: run.max_bits,
                        bound: Some(budget.bound_value),
                    }
                }
            };
            lines.push(line);
        }
    }
    Ok(SweepReport {
        protocol: if tree.is_some() { "separator" } else { "classical" },
        n,
        m: g.m(),
        max_bits: lines.iter().map(|l| l.bits).max().unwrap_or(0),
        lines,
        bound,
    })
}
