use super::{build_dual, dual_tree, facet_condition, dual_count_check, u_star, PlanarEmbedding, PlanarError};
use crate::graph::{enumerate_spanning_trees, slack_oracle, EdgeSubset, EnumerationCaps};
use crate::protocols::{index_bits, spanning_tree_protocol, ProtocolRun, SweepLine, SweepReport, KAPPA};
use crate::VertexSubset;

/// `1 + ceil(log2(2|E|))`.
pub fn williams_bits_bound(emb: &PlanarEmbedding) -> usize {
    1 + index_bits(2 * emb.host.m())
}

/// Vertex 0 and the first traced face on its boundary.
pub fn default_anchor(emb: &PlanarEmbedding) -> (usize, usize) {
    let f0 = (0..emb.num_faces())
        .find(|&f| emb.face_vertices(f).contains(0))
        .expect("vertex 0 lies on some face");
    (0, f0)
}

/// Alice sends one bit: whether `v0 ∈ U`. If so the spanning-tree protocol
/// runs on the host rooted at `v0`; otherwise `f0 ∈ U*` and it runs on the
/// dual with `(U*, T*)` rooted at `f0`.
pub fn williams_protocol(
    emb: &PlanarEmbedding,
    v0: usize,
    f0: usize,
    u: &VertexSubset,
    t: &EdgeSubset,
) -> Result<ProtocolRun, PlanarError> {
    let g = &emb.host;
    if f0 >= emb.num_faces() {
        return Err(PlanarError::FaceOutOfRange(f0));
    }
    if v0 >= g.n() || !emb.face_vertices(f0).contains(v0) {
        return Err(PlanarError::NotOnFace { vertex: v0, face: f0 });
    }
    if !facet_condition(g, u)? {
        return Err(PlanarError::NotFacet);
    }
    if !g.is_spanning_tree(t) {
        return Err(PlanarError::NotSpanningTree);
    }
    if u.contains(v0) {
        return Ok(spanning_tree_protocol(g, u, t, v0, 1)?);
    }
    let ds = build_dual(emb);
    let t_star = dual_tree(&ds, g, t)?;
    let us = u_star(emb, u);
    assert!(us.contains(f0), "a face through a vertex outside U is in U*");
    Ok(spanning_tree_protocol(&ds.dual, &us, &t_star, f0, 1)?)
}

/// Every facet-defining `U` against every spanning tree. A line passes when
/// the expectation equals the slack, both sides of the `U`/`U*` identity
/// agree with the edge partition holding, and the bits stay within
/// `1 + ceil(log2(2|E|)) + KAPPA`.
pub fn williams_sweep(
    emb: &PlanarEmbedding,
    v0: usize,
    f0: usize,
    caps: EnumerationCaps,
) -> Result<SweepReport, PlanarError> {
    let g = &emb.host;
    caps.check_vertices(g)?;
    if !g.is_two_connected() {
        return Err(PlanarError::NotTwoConnected);
    }
    let trees = enumerate_spanning_trees(g, caps)?;
    let bound = williams_bits_bound(emb) as i64;
    let mut lines = Vec::new();
    for mask in 1..(1u64 << g.n()) - 1 {
        let u = VertexSubset::from_mask(g.n(), mask);
        if !facet_condition(g, &u)? {
            continue;
        }
        for t in &trees {
            let run = williams_protocol(emb, v0, f0, &u, t)?;
            let check = dual_count_check(emb, &u, t)?;
            let slack = slack_oracle(g, &u, t)?;
            lines.push(SweepLine {
                pass: run.expectation == slack
                    && check.equal
                    && check.complement_ok
                    && run.max_bits as i64 <= bound + KAPPA,
                u: u.clone(),
                f: t.clone(),
                expectation: run.expectation,
                slack,
                bits: run.max_bits,
                bound: Some(bound),
            });
        }
    }
    Ok(SweepReport {
        protocol: "williams",
        n: g.n(),
        m: g.m(),
        max_bits: lines.iter().map(|l| l.bits).max().unwrap_or(0),
        lines,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::planar::trace_faces;
    use crate::Rational;

    fn grid() -> PlanarEmbedding {
        trace_faces(&fixtures::grid(3), &fixtures::grid_rotation(3)).unwrap()
    }

    #[test]
    fn dual_branch_when_anchor_is_outside() {
        let emb = grid();
        // vertices 1, 2, 4, 5 and the marked spanning tree of the 3x3 grid example
        let u = VertexSubset::from_indices(9, [1, 2, 4, 5]);
        let t = EdgeSubset::from_indices(12, fig_tree_edges());
        let (v0, f0) = default_anchor(&emb);
        assert!(!u.contains(v0));
        let run = williams_protocol(&emb, v0, f0, &u, &t).unwrap();
        assert_eq!(run.expectation, Rational::one());
        // dual runs have 4 tree arcs
        assert_eq!(run.outcomes.len(), 4);
        assert!(run.max_bits <= williams_bits_bound(&emb));
    }

    fn fig_tree_edges() -> Vec<usize> {
        let g = fixtures::grid(3);
        let v = |c, r| fixtures::grid_vertex(3, c, r);
        [
            (v(0, 0), v(0, 1)),
            (v(0, 1), v(0, 2)),
            (v(1, 0), v(1, 1)),
            (v(1, 1), v(1, 2)),
            (v(2, 1), v(2, 2)),
            (v(0, 0), v(1, 0)),
            (v(1, 0), v(2, 0)),
            (v(1, 2), v(2, 2)),
        ]
        .iter()
        .map(|&(a, b)| g.edges().iter().position(|&e| e == (a, b)).unwrap())
        .collect()
    }

    #[test]
    fn primal_branch_is_the_rooted_protocol() {
        let emb = grid();
        let u = VertexSubset::from_indices(9, [0, 1, 3, 4]);
        let t = EdgeSubset::from_indices(12, fig_tree_edges());
        let run = williams_protocol(&emb, 0, default_anchor(&emb).1, &u, &t).unwrap();
        let direct = spanning_tree_protocol(&emb.host, &u, &t, 0, 1).unwrap();
        assert_eq!(run, direct);
    }

    #[test]
    fn precondition_errors() {
        let emb = grid();
        let u = VertexSubset::from_indices(9, [4]);
        let t = EdgeSubset::from_indices(12, fig_tree_edges());
        let far = (0..emb.num_faces()).find(|&f| !emb.face_vertices(f).contains(0)).unwrap();
        assert!(matches!(williams_protocol(&emb, 0, far, &u, &t), Err(PlanarError::NotOnFace { .. })));
        assert!(matches!(williams_protocol(&emb, 0, 99, &u, &t), Err(PlanarError::FaceOutOfRange(99))));
        let pair = VertexSubset::from_indices(9, [0, 1]);
        assert!(matches!(williams_protocol(&emb, 0, 0, &pair, &t), Err(PlanarError::NotFacet)));
        assert!(matches!(
            williams_protocol(&emb, 0, default_anchor(&emb).1, &u, &EdgeSubset::empty(12)),
            Err(PlanarError::NotSpanningTree)
        ));
    }

    #[test]
    fn sweeps_pass() {
        for (g, rot) in [
            (fixtures::cycle(4), fixtures::cycle_rotation(4)),
            (fixtures::complete(4), fixtures::k4_rotation()),
        ] {
            let emb = trace_faces(&g, &rot).unwrap();
            for v0 in 0..g.n() {
                for f0 in (0..emb.num_faces()).filter(|&f| emb.face_vertices(f).contains(v0)) {
                    let report = williams_sweep(&emb, v0, f0, EnumerationCaps::default()).unwrap();
                    assert!(report.passed(), "{}", report.to_text());
                    assert!(!report.lines.is_empty());
                }
            }
        }
    }
}
