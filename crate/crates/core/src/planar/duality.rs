use super::{build_dual, dual_tree, PlanarEmbedding, PlanarError};
use crate::graph::{contract, is_connected_subset, EdgeSubset, Graph, GraphError};
use crate::{Rational, VertexSubset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetSet {
    pub u: VertexSubset,
    pub u_star: VertexSubset,
}

/// Whether `G[U]` and `G/U` are both 2-connected. `G[U] = K1` counts;
/// `G[U] = K2` does not, since the slack identity fails there (on the
/// 4-cycle, two adjacent vertices and a tree avoiding their edge give
/// slack 1 on the primal side and 0 on the dual side).
pub fn facet_condition(g: &Graph, u: &VertexSubset) -> Result<bool, PlanarError> {
    if u.universe() != g.n() {
        return Err(GraphError::UniverseMismatch {
            expected: g.n(),
            actual: u.universe(),
        }
        .into());
    }
    if !g.is_two_connected() {
        return Err(PlanarError::NotTwoConnected);
    }
    if u.is_empty() || u.count() == g.n() {
        return Err(GraphError::ImproperSubset.into());
    }
    if u.count() == 2 || !is_connected_subset(g, u) {
        return Ok(false);
    }
    Ok(g.induced_subgraph(u).graph.is_two_connected() && contract(g, u)?.graph.is_two_connected())
}

/// Faces with at least one boundary vertex outside `U`.
pub fn u_star(emb: &PlanarEmbedding, u: &VertexSubset) -> VertexSubset {
    VertexSubset::from_indices(
        emb.num_faces(),
        (0..emb.num_faces()).filter(|&f| !emb.face_vertices(f).is_subset(u)),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCountCheck {
    /// `|U| - 1 - |E(T) ∩ E(U)|`
    pub lhs: Rational,
    /// `|U*| - 1 - |E(T*) ∩ E(U*)|`
    pub rhs: Rational,
    pub equal: bool,
    /// Every edge lies in exactly one of `E(U)` and `E(U*)` (via the dual
    /// bijection), hence `|E(U)| + |E(U*)| = |E|`.
    pub complement_ok: bool,
}

/// Both sides of the identity without checking the facet precondition.
pub fn dual_count_sides(emb: &PlanarEmbedding, u: &VertexSubset, t: &EdgeSubset) -> Result<DualCountCheck, PlanarError> {
    let g = &emb.host;
    let ds = build_dual(emb);
    let t_star = dual_tree(&ds, g, t)?;
    let us = u_star(emb, u);
    let e_u = g.induced_edges(u);
    let e_us = ds.dual.induced_edges(&us);
    let side = |k: usize, inside: usize| Rational::from(k as i64 - 1 - inside as i64);
    let lhs = side(u.count(), e_u.intersection(t).count());
    let rhs = side(us.count(), e_us.intersection(&t_star).count());
    let complement_ok = (0..g.m()).all(|e| e_u.contains(e) != e_us.contains(ds.edge_bijection[e]));
    Ok(DualCountCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
        complement_ok,
    })
}

pub fn dual_count_check(emb: &PlanarEmbedding, u: &VertexSubset, t: &EdgeSubset) -> Result<DualCountCheck, PlanarError> {
    if !facet_condition(&emb.host, u)? {
        return Err(PlanarError::NotFacet);
    }
    dual_count_sides(emb, u, t)
}
