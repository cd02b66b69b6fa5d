use super::{Graph, GraphMode};

/// A maximal 2-connected subgraph, bridge, isolated vertex, or loop.
#[derive(Debug, Clone)]
pub struct Block {
    pub graph: Graph,
    /// local vertex -> host vertex, ascending
    pub vertices: Vec<usize>,
    /// local edge -> host edge, ascending
    pub edges: Vec<usize>,
}

/// Block decomposition by DFS low-points over an explicit edge stack.
/// Blocks are ordered by their smallest host edge index; isolated vertices
/// follow as `K1` blocks in vertex order.
pub fn blocks(g: &Graph) -> Vec<Block> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter it, next incidence position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, via, pos) = *top;
            if pos < g.incident(v).len() {
                top.2 += 1;
                let e = g.incident(v)[pos];
                if e == via {
                    continue;
                }
                let w = g.other_end(e, v);
                if w == v {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut group = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            group.push(e);
                            if e == via {
                                break;
                            }
                        }
                        groups.push(group);
                    }
                }
            }
        }
    }

    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            groups.push(vec![e]);
        }
    }
    for g in groups.iter_mut() {
        g.sort_unstable();
    }
    groups.sort_by_key(|grp| grp[0]);

    let mut out: Vec<Block> = groups.into_iter().map(|grp| make_block(g, grp)).collect();
    for v in 0..n {
        if g.degree(v) == 0 {
            out.push(Block {
                graph: Graph::new(1, vec![], GraphMode::Simple).unwrap(),
                vertices: vec![v],
                edges: vec![],
            });
        }
    }
    out
}

fn make_block(g: &Graph, edges: Vec<usize>) -> Block {
    let mut vertices: Vec<usize> = edges
        .iter()
        .flat_map(|&e| {
            let (a, b) = g.edge(e);
            [a, b]
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    let local = |v: usize| vertices.binary_search(&v).unwrap();
    let local_edges = edges
        .iter()
        .map(|&e| {
            let (a, b) = g.edge(e);
            (local(a), local(b))
        })
        .collect();
    let mode = if g.is_multigraph() {
        GraphMode::Multi
    } else {
        GraphMode::Simple
    };
    Block {
        graph: Graph::new(vertices.len(), local_edges, mode).unwrap(),
        vertices,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_forests, EnumerationCaps};

    #[test]
    fn path_has_two_bridges() {
        let p3 = Graph::simple(3, &[(0, 1), (1, 2)]).unwrap();
        let b = blocks(&p3);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].edges, vec![0]);
        assert_eq!(b[1].edges, vec![1]);
    }

    #[test]
    fn triangle_is_one_block() {
        let k3 = Graph::simple(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let b = blocks(&k3);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn bowtie_splits_at_shared_vertex() {
        let bowtie =
            Graph::simple(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let b = blocks(&bowtie);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].vertices, vec![0, 1, 2]);
        assert_eq!(b[1].vertices, vec![2, 3, 4]);
        // forest count factors over blocks
        let caps = EnumerationCaps::default();
        let whole = enumerate_forests(&bowtie, caps).unwrap().len();
        let prod: usize = b
            .iter()
            .map(|blk| enumerate_forests(&blk.graph, caps).unwrap().len())
            .product();
        assert_eq!(whole, prod);
    }

    #[test]
    fn isolated_vertices_and_loops() {
        let g = Graph::multi(3, &[(0, 1), (0, 1), (2, 2)]).unwrap();
        let b = blocks(&g);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].edges, vec![0, 1]);
        assert_eq!(b[1].edges, vec![2]);
        let k1 = Graph::simple(1, &[]).unwrap();
        assert_eq!(blocks(&k1).len(), 1);
    }
}
