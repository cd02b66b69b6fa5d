use std::fmt::Write as _;

use super::PlanarError;
use crate::graph::{parse_graph, EdgeSubset, Graph, GraphMode};
use crate::VertexSubset;

/// Edge `e` traversed from `edges[e].0` to `edges[e].1` (`forward`) or back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    fn index(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }

    pub fn tail(self, g: &Graph) -> usize {
        let (a, b) = g.edge(self.edge);
        if self.forward {
            a
        } else {
            b
        }
    }

    pub fn head(self, g: &Graph) -> usize {
        let (a, b) = g.edge(self.edge);
        if self.forward {
            b
        } else {
            a
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlanarEmbedding {
    pub host: Graph,
    /// Cyclic order of incident edge indices at each vertex.
    pub rotation: Vec<Vec<usize>>,
    pub faces: Vec<Vec<Dart>>,
    /// Face of each dart, indexed by `2e + (1 if backward)`.
    dart_face: Vec<usize>,
}

impl PlanarEmbedding {
    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.index()]
    }

    /// Vertices on the boundary of face `f`.
    pub fn face_vertices(&self, f: usize) -> VertexSubset {
        if self.faces[f].is_empty() {
            // the single face of K1
            return self.host.all_vertices();
        }
        VertexSubset::from_indices(self.host.n(), self.faces[f].iter().map(|d| d.tail(&self.host)))
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }
}

/// Parse a rotation file: a graph file followed by one `rot v: e e …` line
/// per vertex.
pub fn parse_rotation_file(text: &str) -> Result<(Graph, Vec<Vec<usize>>), PlanarError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let (hline, header) = *lines.first().ok_or(PlanarError::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let m: usize = header
        .split_whitespace()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| PlanarError::Parse {
            line: hline,
            msg: format!("bad header {header:?}"),
        })?;
    if lines.len() < 1 + m {
        return Err(PlanarError::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", lines.len() - 1),
        });
    }
    let graph_text: String = lines[..=m].iter().map(|(_, l)| format!("{l}\n")).collect();
    let g = parse_graph(&graph_text, GraphMode::Simple)?;
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; g.n()];
    for &(line, l) in &lines[m + 1..] {
        let bad = |msg: String| PlanarError::Parse { line, msg };
        let rest = l.strip_prefix("rot").ok_or_else(|| bad(format!("expected `rot v: …`, got {l:?}")))?;
        let (v, order) = rest.split_once(':').ok_or_else(|| bad("missing ':'".into()))?;
        let v: usize = v.trim().parse().map_err(|_| bad(format!("bad vertex {v:?}")))?;
        if v >= g.n() {
            return Err(bad(format!("vertex {v} out of range")));
        }
        let order = order
            .split_whitespace()
            .map(|e| e.parse::<usize>().map_err(|_| bad(format!("bad edge index {e:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if rotation[v].replace(order).is_some() {
            return Err(bad(format!("duplicate rotation for vertex {v}")));
        }
    }
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| PlanarError::Rotation(format!("no rotation for vertex {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((g, rotation))
}

pub fn rotation_to_text(g: &Graph, rotation: &[Vec<usize>]) -> String {
    let mut s = g.to_text();
    for (v, order) in rotation.iter().enumerate() {
        write!(s, "rot {v}:").unwrap();
        for e in order {
            write!(s, " {e}").unwrap();
        }
        s.push('\n');
    }
    s
}

/// Trace the faces of the rotation system: after arriving at `v` along `e`,
/// leave along the edge following `e` in the rotation at `v`.
pub fn trace_faces(g: &Graph, rotation: &[Vec<usize>]) -> Result<PlanarEmbedding, PlanarError> {
    let n = g.n();
    if rotation.len() != n {
        return Err(PlanarError::Rotation(format!("{} rotations for {n} vertices", rotation.len())));
    }
    if let Some(e) = (0..g.m()).find(|&e| g.edge(e).0 == g.edge(e).1) {
        return Err(PlanarError::Rotation(format!("edge {e} is a loop")));
    }
    if !g.is_connected() || n == 0 {
        return Err(crate::graph::GraphError::Disconnected.into());
    }
    // position of each edge in the rotation at each endpoint
    let mut pos = vec![[usize::MAX; 2]; g.m()];
    for (v, order) in rotation.iter().enumerate() {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        let mut expected = g.incident(v).to_vec();
        expected.sort_unstable();
        if sorted != expected {
            return Err(PlanarError::Rotation(format!(
                "rotation at {v} is {order:?}, incident edges are {expected:?}"
            )));
        }
        for (i, &e) in order.iter().enumerate() {
            let side = usize::from(g.edge(e).0 != v);
            pos[e][side] = i;
        }
    }
    let next = |d: Dart| -> Dart {
        let v = d.head(g);
        let side = usize::from(g.edge(d.edge).0 != v);
        let order = &rotation[v];
        let e = order[(pos[d.edge][side] + 1) % order.len()];
        Dart {
            edge: e,
            forward: g.edge(e).0 == v,
        }
    };
    let mut dart_face = vec![usize::MAX; 2 * g.m()];
    let mut faces = Vec::new();
    for start in 0..2 * g.m() {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let first = Dart {
            edge: start / 2,
            forward: start % 2 == 0,
        };
        let mut face = Vec::new();
        let mut d = first;
        loop {
            dart_face[d.index()] = faces.len();
            face.push(d);
            d = next(d);
            if d == first {
                break;
            }
        }
        faces.push(face);
    }
    if g.m() == 0 {
        faces.push(Vec::new());
    }
    let f = faces.len();
    if n + f != g.m() + 2 {
        return Err(PlanarError::Euler { v: n, e: g.m(), f });
    }
    Ok(PlanarEmbedding {
        host: g.clone(),
        rotation: rotation.to_vec(),
        faces,
        dart_face,
    })
}

#[derive(Debug, Clone)]
pub struct DualStructure {
    /// One vertex per face; may have loops and parallel edges.
    pub dual: Graph,
    /// Host edge `e` maps to dual edge `edge_bijection[e]`.
    pub edge_bijection: Vec<usize>,
}

impl DualStructure {
    pub fn map_edges(&self, s: &EdgeSubset) -> EdgeSubset {
        EdgeSubset::from_indices(self.dual.m(), s.iter().map(|e| self.edge_bijection[e]))
    }
}

/// The dual edge of `e` joins the faces on its two sides.
pub fn build_dual(emb: &PlanarEmbedding) -> DualStructure {
    let g = &emb.host;
    let edges = (0..g.m())
        .map(|e| {
            (
                emb.face_of(Dart { edge: e, forward: true }),
                emb.face_of(Dart { edge: e, forward: false }),
            )
        })
        .collect();
    DualStructure {
        dual: Graph::new(emb.num_faces(), edges, GraphMode::Multi).expect("face indices in range"),
        edge_bijection: (0..g.m()).collect(),
    }
}

/// `T* = E(G*) \ E(T)*`.
pub fn dual_tree(ds: &DualStructure, host: &Graph, t: &EdgeSubset) -> Result<EdgeSubset, PlanarError> {
    if !host.is_spanning_tree(t) {
        return Err(PlanarError::NotSpanningTree);
    }
    let t_star = ds.map_edges(t).complement();
    assert!(ds.dual.is_spanning_tree(&t_star), "complement of a spanning tree must be a dual spanning tree");
    Ok(t_star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{enumerate_spanning_trees, EnumerationCaps};

    #[test]
    fn face_counts() {
        let c4 = trace_faces(&fixtures::cycle(4), &fixtures::cycle_rotation(4)).unwrap();
        assert_eq!(c4.num_faces(), 2);
        let k4 = trace_faces(&fixtures::complete(4), &fixtures::k4_rotation()).unwrap();
        assert_eq!(k4.num_faces(), 4);
        assert!(k4.faces.iter().all(|f| f.len() == 3));
        let grid = trace_faces(&fixtures::grid(3), &fixtures::grid_rotation(3)).unwrap();
        assert_eq!(grid.num_faces(), 5);
        let mut lens: Vec<usize> = grid.faces.iter().map(Vec::len).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![4, 4, 4, 4, 8]);
    }

    #[test]
    fn every_dart_in_one_face() {
        let emb = trace_faces(&fixtures::grid(3), &fixtures::grid_rotation(3)).unwrap();
        let total: usize = emb.faces.iter().map(Vec::len).sum();
        assert_eq!(total, 2 * emb.host.m());
        for (i, f) in emb.faces.iter().enumerate() {
            for &d in f {
                assert_eq!(emb.face_of(d), i);
            }
        }
    }

    #[test]
    fn toroidal_rotation_fails_euler() {
        // K4 with the rotation at vertex 3 reversed is not spherical
        let mut rot = fixtures::k4_rotation();
        rot[3].reverse();
        assert!(matches!(
            trace_faces(&fixtures::complete(4), &rot),
            Err(PlanarError::Euler { v: 4, e: 6, f: 2 })
        ));
    }

    #[test]
    fn malformed_rotation() {
        let mut rot = fixtures::cycle_rotation(4);
        rot[0] = vec![0];
        assert!(matches!(trace_faces(&fixtures::cycle(4), &rot), Err(PlanarError::Rotation(_))));
    }

    #[test]
    fn duals() {
        let c4 = trace_faces(&fixtures::cycle(4), &fixtures::cycle_rotation(4)).unwrap();
        let d = build_dual(&c4);
        assert_eq!((d.dual.n(), d.dual.m()), (2, 4));
        assert!(d.dual.edges().iter().all(|&(a, b)| a != b));

        let k2 = trace_faces(&fixtures::path(2), &[vec![0], vec![0]]).unwrap();
        let d = build_dual(&k2);
        assert_eq!((d.dual.n(), d.dual.edges()), (1, &[(0, 0)][..]));

        let grid = trace_faces(&fixtures::grid(3), &fixtures::grid_rotation(3)).unwrap();
        let d = build_dual(&grid);
        assert_eq!((d.dual.n(), d.dual.m()), (5, 12));
    }

    #[test]
    fn dual_trees() {
        let g = fixtures::cycle(4);
        let emb = trace_faces(&g, &fixtures::cycle_rotation(4)).unwrap();
        let ds = build_dual(&emb);
        for t in enumerate_spanning_trees(&g, EnumerationCaps::default()).unwrap() {
            let ts = dual_tree(&ds, &g, &t).unwrap();
            assert_eq!(ts.count(), 1);
        }

        let p = fixtures::path(4);
        let emb = trace_faces(&p, &[vec![0], vec![0, 1], vec![1, 2], vec![2]]).unwrap();
        let ds = build_dual(&emb);
        assert_eq!(ds.dual.n(), 1);
        assert!(dual_tree(&ds, &p, &EdgeSubset::full(3)).unwrap().is_empty());
        assert!(matches!(dual_tree(&ds, &p, &EdgeSubset::empty(3)), Err(PlanarError::NotSpanningTree)));
    }

    #[test]
    fn dual_tree_is_an_involution() {
        let g = fixtures::grid(3);
        let emb = trace_faces(&g, &fixtures::grid_rotation(3)).unwrap();
        let ds = build_dual(&emb);
        // the dual of the dual with the same edge indices
        let back = DualStructure {
            dual: g.clone(),
            edge_bijection: (0..g.m()).collect(),
        };
        for t in enumerate_spanning_trees(&g, EnumerationCaps::default()).unwrap() {
            let ts = dual_tree(&ds, &g, &t).unwrap();
            assert_eq!(dual_tree(&back, &ds.dual, &ts).unwrap(), t);
        }
    }

    #[test]
    fn rotation_file_round_trip() {
        let g = fixtures::grid(3);
        let rot = fixtures::grid_rotation(3);
        let text = rotation_to_text(&g, &rot);
        let (g2, rot2) = parse_rotation_file(&format!("# grid\n{text}")).unwrap();
        assert_eq!(g2, g);
        assert_eq!(rot2, rot);
        assert!(parse_rotation_file("2 1\n0 1\nrot 0: 0\n").is_err());
        assert!(parse_rotation_file("2 1\n0 1\nrot 0: 0\nrot 0: 0\n").is_err());
    }
}
