use super::{check_alpha, SeparatorError, SeparatorOracle, SeparatorResult};
use crate::graph::{Graph, VertexSubset};
use crate::Rational;

/// A sequence of non-empty vertex sets over a host graph, read as a path
/// decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagSequence {
    pub n: usize,
    pub bags: Vec<VertexSubset>,
}

impl BagSequence {
    /// Bags cover `V`, are non-empty, and hold every edge; every vertex
    /// occupies a contiguous run of bags.
    pub fn check_decomposition(&self, g: &Graph) -> Result<(), String> {
        if g.n() != self.n {
            return Err(format!("sequence over {} vertices, graph has {}", self.n, g.n()));
        }
        if let Some(i) = self.bags.iter().position(|b| b.is_empty()) {
            return Err(format!("bag {i} is empty"));
        }
        let mut cover = VertexSubset::empty(self.n);
        for b in &self.bags {
            cover = cover.union(b);
        }
        if cover.count() != self.n {
            return Err("bags do not cover every vertex".into());
        }
        // B_i ∩ B_k ⊆ B_j for i < j < k, i.e. each vertex's bags are contiguous
        for v in 0..self.n {
            let hits: Vec<usize> = (0..self.bags.len()).filter(|&i| self.bags[i].contains(v)).collect();
            if let (Some(&lo), Some(&hi)) = (hits.first(), hits.last()) {
                if hi - lo + 1 != hits.len() {
                    return Err(format!("vertex {v} occurs in non-contiguous bags"));
                }
            }
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if !self.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
                return Err(format!("edge {e} = {{{u}, {v}}} lies in no bag"));
            }
        }
        Ok(())
    }

    /// Consecutive bags differ by at most one vertex in each direction.
    pub fn check_unit_steps(&self) -> Result<(), String> {
        for (i, w) in self.bags.windows(2).enumerate() {
            let out = w[0].difference(&w[1]).count();
            let inn = w[1].difference(&w[0]).count();
            if out > 1 || inn > 1 {
                return Err(format!("bags {i} and {} differ by -{out}/+{inn}", i + 1));
            }
        }
        Ok(())
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(|b| b.count()).max().unwrap_or(0)
    }

    /// Insert intermediate bags until consecutive bags differ by at most
    /// one vertex each way. The removed vertex is always the smallest one.
    pub fn normalize(&mut self) {
        let mut i = 0;
        while i + 1 < self.bags.len() {
            let out = self.bags[i].difference(&self.bags[i + 1]);
            let inn = self.bags[i + 1].difference(&self.bags[i]);
            if out.count() >= 2 {
                let mut b = self.bags[i].clone();
                b.remove(out.first().unwrap());
                self.bags.insert(i + 1, b);
            } else if inn.count() >= 2 {
                let mut b = self.bags[i + 1].clone();
                b.remove(inn.first().unwrap());
                self.bags.insert(i + 1, b);
            } else {
                i += 1;
            }
        }
    }

    /// `(X_i, Y_i)`: vertices only in earlier bags, and only in later bags.
    pub fn sides(&self, i: usize) -> (VertexSubset, VertexSubset) {
        let mut before = VertexSubset::empty(self.n);
        let mut after = VertexSubset::empty(self.n);
        for (j, b) in self.bags.iter().enumerate() {
            if j < i {
                before = before.union(b);
            } else if j > i {
                after = after.union(b);
            }
        }
        (before.difference(&self.bags[i]), after.difference(&self.bags[i]))
    }
}

/// Everything produced on the way to a halved separator.
#[derive(Debug, Clone)]
pub struct HalvingTrace {
    pub result: SeparatorResult,
    /// The sequence before inserting intermediate bags.
    pub raw: BagSequence,
    pub normalized: BagSequence,
    /// Index of the chosen bag in `normalized`.
    pub index: usize,
    /// Largest separator returned by the oracle over all recursive calls.
    pub largest_oracle_separator: usize,
}

pub fn halve_separator(
    g: &Graph,
    alpha: &Rational,
    oracle: &dyn SeparatorOracle,
) -> Result<SeparatorResult, SeparatorError> {
    halve_separator_traced(g, alpha, oracle).map(|t| t.result)
}

/// Turn α-balanced separators into a ½-balanced one: build a path
/// decomposition by recursing on the oracle's sides and prefixing its
/// separator to every bag, refine it to unit steps, then return the first
/// bag whose two sides differ in size by at most one.
pub fn halve_separator_traced(
    g: &Graph,
    alpha: &Rational,
    oracle: &dyn SeparatorOracle,
) -> Result<HalvingTrace, SeparatorError> {
    check_alpha(alpha)?;
    let n = g.n();
    if n == 0 {
        let empty = VertexSubset::empty(0);
        return Ok(HalvingTrace {
            result: SeparatorResult {
                x: empty.clone(),
                part_a: empty.clone(),
                part_b: empty,
            },
            raw: BagSequence { n, bags: vec![] },
            normalized: BagSequence { n, bags: vec![] },
            index: 0,
            largest_oracle_separator: 0,
        });
    }
    let mut largest = 0;
    let bags = decompose(g, alpha, oracle, &mut largest)?;
    let raw = BagSequence { n, bags };
    let mut normalized = raw.clone();
    normalized.normalize();
    for i in 0..normalized.bags.len() {
        let (xs, ys) = normalized.sides(i);
        if xs.count().abs_diff(ys.count()) <= 1 {
            let result = SeparatorResult {
                x: normalized.bags[i].clone(),
                part_a: xs,
                part_b: ys,
            };
            result.validate(g, &Rational::new(1, 2))?;
            return Ok(HalvingTrace {
                result,
                raw,
                normalized,
                index: i,
                largest_oracle_separator: largest,
            });
        }
    }
    Err(SeparatorError::Invalid(
        "no bag splits the graph evenly; the oracle's sides were not consistent".into(),
    ))
}

fn decompose(
    g: &Graph,
    alpha: &Rational,
    oracle: &dyn SeparatorOracle,
    largest: &mut usize,
) -> Result<Vec<VertexSubset>, SeparatorError> {
    let n = g.n();
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![VertexSubset::full(1)]);
    }
    let sep = oracle.separate(g)?;
    sep.validate(g, alpha)?;
    *largest = (*largest).max(sep.x.count());
    let mut bags = Vec::new();
    for side in [&sep.part_a, &sep.part_b] {
        let sub = g.induced_subgraph(side);
        for b in decompose(&sub.graph, alpha, oracle, largest)? {
            bags.push(sub.lift_vertices(&b, n).union(&sep.x));
        }
    }
    if bags.is_empty() {
        bags.push(sep.x.clone());
    }
    Ok(bags)
}
