//! Small named graphs and seeded random graphs used by tests and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::simple(n, &edges).expect("path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::simple(n, &edges).expect("cycle")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::simple(n, &edges).expect("complete graph")
}

/// Two triangles sharing vertex 2.
pub fn bowtie() -> Graph {
    Graph::simple(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).expect("bowtie")
}

/// Vertex index of grid point (column, row) in a k×k grid, numbered
/// column by column from the bottom-left corner.
pub fn grid_vertex(k: usize, col: usize, row: usize) -> usize {
    col * k + row
}

/// k×k grid. For each vertex in index order, the edge going up (if any)
/// precedes the edge going right (if any).
pub fn grid(k: usize) -> Graph {
    Graph::simple(k * k, &grid_edges(k)).expect("grid")
}

fn grid_edges(k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for col in 0..k {
        for row in 0..k {
            let v = grid_vertex(k, col, row);
            if row + 1 < k {
                edges.push((v, grid_vertex(k, col, row + 1)));
            }
            if col + 1 < k {
                edges.push((v, grid_vertex(k, col + 1, row)));
            }
        }
    }
    edges
}

/// Counter-clockwise rotation of the straight-line grid drawing:
/// right, up, left, down.
pub fn grid_rotation(k: usize) -> Vec<Vec<usize>> {
    let g = grid(k);
    let find = |a: usize, b: usize| {
        g.edges()
            .iter()
            .position(|&(u, v)| (u, v) == (a.min(b), a.max(b)))
            .expect("grid edge")
    };
    let mut rot = Vec::with_capacity(k * k);
    for col in 0..k {
        for row in 0..k {
            let v = grid_vertex(k, col, row);
            let mut order = Vec::new();
            if col + 1 < k {
                order.push(find(v, grid_vertex(k, col + 1, row)));
            }
            if row + 1 < k {
                order.push(find(v, grid_vertex(k, col, row + 1)));
            }
            if col > 0 {
                order.push(find(v, grid_vertex(k, col - 1, row)));
            }
            if row > 0 {
                order.push(find(v, grid_vertex(k, col, row - 1)));
            }
            rot.push(order);
        }
    }
    rot
}

/// Rotation of a cycle: every vertex sees its two edges in the same order.
pub fn cycle_rotation(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|v| {
            let prev = if v == 0 { n - 1 } else { v - 1 };
            vec![v, prev]
        })
        .collect()
}

/// Planar rotation of `complete(4)`: vertex 3 sits inside triangle 0-1-2.
pub fn k4_rotation() -> Vec<Vec<usize>> {
    // edges: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3)
    vec![vec![0, 2, 1], vec![3, 4, 0], vec![1, 5, 3], vec![2, 4, 5]]
}

/// Connected graph on `n` vertices: a random recursive tree plus each
/// remaining pair independently with probability `extra`.
pub fn random_connected(n: usize, extra: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    Graph::simple(n, &edges).expect("random graph")
}

/// `count` random connected graphs on 3..=`max_n` vertices.
pub fn random_battery(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=max_n);
            random_connected(n, 0.3, &mut rng)
        })
        .collect()
}

/// Named connected fixtures on at most `max_n` vertices (the 3×3 grid is
/// included when `max_n >= 9`).
pub fn named_battery(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=max_n.min(7) {
        out.push((format!("path{n}"), path(n)));
    }
    for n in 3..=max_n.min(7) {
        out.push((format!("cycle{n}"), cycle(n)));
    }
    for n in 3..=max_n.min(5) {
        out.push((format!("K{n}"), complete(n)));
    }
    if max_n >= 5 {
        out.push(("bowtie".into(), bowtie()));
    }
    if max_n >= 9 {
        out.push(("grid3".into(), grid(3)));
    }
    out
}

/// All connected simple graphs on `n` vertices, one per labelled edge set.
/// Intended for `n <= 5`.
pub fn all_connected_labelled(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() <= 20, "too many vertex pairs");
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Graph::simple(n, &edges).expect("subgraph of complete graph");
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Connected graphs on `n` vertices up to isomorphism, by a canonical form
/// over all vertex permutations. Intended for `n <= 5`.
pub fn all_connected_unlabelled(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g in all_connected_labelled(n) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
