//! Balanced separators and separator trees.
//!
//! An α-balanced separator of `G` is a vertex set `X` such that `G - X`
//! splits into two vertex-disjoint induced parts, with no edge between them,
//! each of size at most `α·|V(G)|`. Either part may be empty.

mod exact;
mod halve;
mod heuristic;
mod tree;

pub use exact::find_separator_exact;
pub use halve::{halve_separator, halve_separator_traced, BagSequence, HalvingTrace};
pub use heuristic::find_separator_heuristic;
pub use tree::{build_separator_tree, NodeId, SeparatorTree, TreeNode, TreeParams};

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSubset};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("balance factor {0} outside (0, 1)")]
    InvalidAlpha(Rational),
    #[error("no {alpha}-balanced separator found on {n} vertices")]
    NotFound { alpha: Rational, n: usize },
    #[error("separator invalid: {0}")]
    Invalid(String),
    #[error("separator of size {size} at node host={host} exceeds c*|host|^beta for |host|={host_size}")]
    TooLarge { host: String, host_size: usize, size: usize },
    #[error("node host={host}: side sizes {a} and {b} exceed ceil({n}/2)")]
    NotHalved { host: String, n: usize, a: usize, b: usize },
    #[error("tree does not match graph: {0}")]
    TreeMismatch(String),
    #[error("tree file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A separator `x` with the two sides of `G - x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorResult {
    pub x: VertexSubset,
    pub part_a: VertexSubset,
    pub part_b: VertexSubset,
}

impl SeparatorResult {
    /// Partition, no crossing edge, and both sides at most `alpha·n`.
    pub fn validate(&self, g: &Graph, alpha: &Rational) -> Result<(), SeparatorError> {
        self.validate_split(g)?;
        let n = Rational::from(g.n());
        let limit = alpha * &n;
        for (name, side) in [("A", &self.part_a), ("B", &self.part_b)] {
            if Rational::from(side.count()) > limit {
                return Err(SeparatorError::Invalid(format!(
                    "side {name} has {} > {alpha}*{} vertices",
                    side.count(),
                    g.n()
                )));
            }
        }
        Ok(())
    }

    /// Partition and no crossing edge, without a balance requirement.
    pub fn validate_split(&self, g: &Graph) -> Result<(), SeparatorError> {
        let n = g.n();
        for s in [&self.x, &self.part_a, &self.part_b] {
            if s.universe() != n {
                return Err(SeparatorError::Invalid(format!(
                    "subset universe {} but graph has {n} vertices",
                    s.universe()
                )));
            }
        }
        if !self.x.is_disjoint(&self.part_a)
            || !self.x.is_disjoint(&self.part_b)
            || !self.part_a.is_disjoint(&self.part_b)
        {
            return Err(SeparatorError::Invalid("parts overlap".into()));
        }
        if self.x.count() + self.part_a.count() + self.part_b.count() != n {
            return Err(SeparatorError::Invalid("parts do not cover V".into()));
        }
        for &(u, v) in g.edges() {
            let cross = (self.part_a.contains(u) && self.part_b.contains(v))
                || (self.part_b.contains(u) && self.part_a.contains(v));
            if cross {
                return Err(SeparatorError::Invalid(format!("edge {{{u}, {v}}} crosses the split")));
            }
        }
        Ok(())
    }

    pub fn max_side(&self) -> usize {
        self.part_a.count().max(self.part_b.count())
    }
}

/// Anything that produces a separator for a graph. Implementations must be
/// safe to call re-entrantly.
pub trait SeparatorOracle {
    fn separate(&self, g: &Graph) -> Result<SeparatorResult, SeparatorError>;
}

impl<F> SeparatorOracle for F
where
    F: Fn(&Graph) -> Result<SeparatorResult, SeparatorError>,
{
    fn separate(&self, g: &Graph) -> Result<SeparatorResult, SeparatorError> {
        self(g)
    }
}

/// Minimum-cardinality exhaustive search.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    pub alpha: Rational,
    pub cap: usize,
}

impl ExactOracle {
    pub const DEFAULT_CAP: usize = 14;

    pub fn new(alpha: Rational) -> Self {
        ExactOracle {
            alpha,
            cap: Self::DEFAULT_CAP,
        }
    }
}

impl SeparatorOracle for ExactOracle {
    fn separate(&self, g: &Graph) -> Result<SeparatorResult, SeparatorError> {
        find_separator_exact(g, &self.alpha, self.cap)
    }
}

/// BFS-level cuts, falling back to exact search below `exact_fallback_cap`.
#[derive(Debug, Clone)]
pub struct HeuristicOracle {
    pub alpha: Rational,
    pub exact_fallback_cap: usize,
}

impl HeuristicOracle {
    pub fn new(alpha: Rational) -> Self {
        HeuristicOracle {
            alpha,
            exact_fallback_cap: ExactOracle::DEFAULT_CAP,
        }
    }
}

impl SeparatorOracle for HeuristicOracle {
    fn separate(&self, g: &Graph) -> Result<SeparatorResult, SeparatorError> {
        match find_separator_heuristic(g, &self.alpha) {
            Ok(r) => Ok(r),
            Err(SeparatorError::NotFound { .. }) if g.n() <= self.exact_fallback_cap => {
                find_separator_exact(g, &self.alpha, self.exact_fallback_cap)
            }
            Err(e) => Err(e),
        }
    }
}

/// Wraps an α-balanced oracle and converts its answers into ½-balanced ones
/// through the bag-sequence sweep.
pub struct HalvingOracle<O> {
    pub alpha: Rational,
    pub inner: O,
}

impl<O: SeparatorOracle> SeparatorOracle for HalvingOracle<O> {
    fn separate(&self, g: &Graph) -> Result<SeparatorResult, SeparatorError> {
        halve_separator(g, &self.alpha, &self.inner)
    }
}

pub(crate) fn check_alpha(alpha: &Rational) -> Result<(), SeparatorError> {
    if !alpha.is_positive() || *alpha >= Rational::one() {
        return Err(SeparatorError::InvalidAlpha(alpha.clone()));
    }
    Ok(())
}

/// Split the components of `G - x` into two sides of at most `alpha·n`
/// vertices each, as evenly as possible, with the component holding the
/// smallest remaining vertex on side A. `None` when no split fits.
pub(crate) fn bipartition_components(
    g: &Graph,
    x: &VertexSubset,
    alpha: &Rational,
) -> Option<SeparatorResult> {
    let n = g.n();
    let rest = x.complement();
    let (labels, k) = g.component_labels_within(&rest);
    let mut sizes = vec![0usize; k];
    for v in rest.iter() {
        sizes[labels[v]] += 1;
    }
    let cap = (alpha * Rational::from(n)).floor();
    let cap: usize = num_traits::ToPrimitive::to_usize(&cap).unwrap_or(usize::MAX);
    let total: usize = sizes.iter().sum();
    // reach[s] = Some(i): sum s first reached when adding component i
    let mut reach: Vec<Option<usize>> = vec![None; total + 1];
    let mut from: Vec<usize> = vec![0; total + 1];
    if k == 0 {
        return Some(SeparatorResult {
            x: x.clone(),
            part_a: VertexSubset::empty(n),
            part_b: VertexSubset::empty(n),
        });
    }
    reach[sizes[0]] = Some(0);
    for (i, &s) in sizes.iter().enumerate().skip(1) {
        for sum in (0..=total - s).rev() {
            if reach[sum].is_some() && reach[sum + s].is_none() {
                reach[sum + s] = Some(i);
                from[sum + s] = sum;
            }
        }
    }
    let best = (0..=total)
        .filter(|&s| reach[s].is_some() && s <= cap && total - s <= cap)
        .min_by_key(|&s| ((2 * s) as i64 - total as i64).abs())?;
    let mut in_a = vec![false; k];
    let mut s = best;
    loop {
        let i = reach[s].unwrap();
        in_a[i] = true;
        if i == 0 {
            break;
        }
        s = from[s];
    }
    let mut part_a = VertexSubset::empty(n);
    let mut part_b = VertexSubset::empty(n);
    for v in rest.iter() {
        if in_a[labels[v]] {
            part_a.insert(v);
        } else {
            part_b.insert(v);
        }
    }
    Some(SeparatorResult {
        x: x.clone(),
        part_a,
        part_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_crossing_edges() {
        let p3 = Graph::simple(3, &[(0, 1), (1, 2)]).unwrap();
        let bad = SeparatorResult {
            x: VertexSubset::empty(3),
            part_a: VertexSubset::from_indices(3, [0]),
            part_b: VertexSubset::from_indices(3, [1, 2]),
        };
        assert!(matches!(bad.validate_split(&p3), Err(SeparatorError::Invalid(_))));
        let good = SeparatorResult {
            x: VertexSubset::from_indices(3, [1]),
            part_a: VertexSubset::from_indices(3, [0]),
            part_b: VertexSubset::from_indices(3, [2]),
        };
        good.validate(&p3, &Rational::new(1, 2)).unwrap();
        assert!(good.validate(&p3, &Rational::new(1, 4)).is_err());
    }

    #[test]
    fn bipartition_balances_components() {
        // star with 4 leaves, centre removed: leaves split 2/2
        let star = Graph::simple(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let r = bipartition_components(&star, &VertexSubset::from_indices(5, [0]), &Rational::new(1, 2))
            .unwrap();
        assert_eq!(r.part_a.count(), 2);
        assert_eq!(r.part_b.count(), 2);
        assert!(r.part_a.contains(1));
        // spider with three legs of two: no 1/2-balanced split around the centre
        let spider =
            Graph::simple(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(bipartition_components(&spider, &VertexSubset::from_indices(7, [0]), &Rational::new(1, 2))
            .is_none());
    }
}
