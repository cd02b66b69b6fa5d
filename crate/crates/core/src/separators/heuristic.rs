use std::collections::VecDeque;

use super::{bipartition_components, check_alpha, SeparatorError, SeparatorResult};
use crate::graph::{Graph, VertexSubset};
use crate::Rational;

/// BFS-level cut. From every root, each BFS level is tried as a separator;
/// the smallest level whose removal admits an α-balanced split of the
/// remaining components is returned (ties: smaller root, then shallower
/// level). Disconnected graphs also try the empty separator first.
pub fn find_separator_heuristic(
    g: &Graph,
    alpha: &Rational,
) -> Result<SeparatorResult, SeparatorError> {
    check_alpha(alpha)?;
    let n = g.n();
    if let Some(r) = bipartition_components(g, &VertexSubset::empty(n), alpha) {
        r.validate(g, alpha)?;
        return Ok(r);
    }
    let mut best: Option<SeparatorResult> = None;
    for root in 0..n {
        for level in bfs_levels(g, root) {
            if best.as_ref().is_some_and(|b| b.x.count() <= level.count()) {
                continue;
            }
            if let Some(r) = bipartition_components(g, &level, alpha) {
                best = Some(r);
            }
        }
    }
    let r = best.ok_or(SeparatorError::NotFound {
        alpha: alpha.clone(),
        n,
    })?;
    r.validate(g, alpha)?;
    Ok(r)
}

fn bfs_levels(g: &Graph, root: usize) -> Vec<VertexSubset> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut levels: Vec<VertexSubset> = Vec::new();
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        if levels.len() <= d {
            levels.push(VertexSubset::empty(n));
        }
        levels[d].insert(v);
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = d + 1;
                queue.push_back(w);
            }
        }
    }
    levels
}
