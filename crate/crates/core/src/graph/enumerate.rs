use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{EdgeSubset, Graph, GraphError, UnionFind};

/// Limits for exhaustive enumeration. Exceeding one is an error, never a
/// silent sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub max_edges: usize,
    pub max_vertices: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_edges: 24,
            max_vertices: 20,
        }
    }
}

impl EnumerationCaps {
    pub fn check_edges(&self, g: &Graph) -> Result<(), GraphError> {
        // masks are u64
        let cap = self.max_edges.min(63);
        if g.m() > cap {
            return Err(GraphError::CapExceeded {
                what: "edges",
                actual: g.m(),
                cap,
            });
        }
        Ok(())
    }

    pub fn check_vertices(&self, g: &Graph) -> Result<(), GraphError> {
        let cap = self.max_vertices.min(63);
        if g.n() > cap {
            return Err(GraphError::CapExceeded {
                what: "vertices",
                actual: g.n(),
                cap,
            });
        }
        Ok(())
    }
}

/// Every acyclic edge set as a bitmask, ascending.
pub fn forest_masks(g: &Graph, caps: EnumerationCaps) -> Result<Vec<u64>, GraphError> {
    caps.check_edges(g)?;
    let mut out = Vec::new();
    let mut uf = UnionFind::new(g.n());
    grow(g, 0, 0, &mut uf, &mut |mask, _| out.push(mask));
    out.sort_unstable();
    Ok(out)
}

fn grow(g: &Graph, e: usize, mask: u64, uf: &mut UnionFind, emit: &mut dyn FnMut(u64, usize)) {
    if e == g.m() {
        emit(mask, mask.count_ones() as usize);
        return;
    }
    grow(g, e + 1, mask, uf, emit);
    let cp = uf.checkpoint();
    let (a, b) = g.edge(e);
    if uf.union(a, b) {
        grow(g, e + 1, mask | 1 << e, uf, emit);
    }
    uf.rollback(cp);
}

/// All forests, in ascending order of `sum 2^e`.
pub fn enumerate_forests(g: &Graph, caps: EnumerationCaps) -> Result<Vec<EdgeSubset>, GraphError> {
    Ok(forest_masks(g, caps)?
        .into_iter()
        .map(|m| EdgeSubset::from_mask(g.m(), m))
        .collect())
}

pub fn enumerate_spanning_trees(
    g: &Graph,
    caps: EnumerationCaps,
) -> Result<Vec<EdgeSubset>, GraphError> {
    caps.check_edges(g)?;
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let target = g.n().saturating_sub(1);
    let mut out = Vec::new();
    let mut uf = UnionFind::new(g.n());
    grow(g, 0, 0, &mut uf, &mut |mask, k| {
        if k == target {
            out.push(mask)
        }
    });
    out.sort_unstable();
    Ok(out.into_iter().map(|m| EdgeSubset::from_mask(g.m(), m)).collect())
}

/// Spanning-tree count by the Matrix-Tree theorem: the determinant of the
/// Laplacian with the last row and column removed, by fraction-free
/// (Bareiss) elimination. Loops are ignored; parallel edges count.
pub fn matrix_tree_count(g: &Graph) -> BigInt {
    let n = g.n();
    if n <= 1 {
        return BigInt::one();
    }
    let k = n - 1;
    let mut a = vec![vec![BigInt::zero(); k]; k];
    for &(u, v) in g.edges() {
        if u == v {
            continue;
        }
        if u < k {
            a[u][u] += 1;
        }
        if v < k {
            a[v][v] += 1;
        }
        if u < k && v < k {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..k {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    sign * prev
}
