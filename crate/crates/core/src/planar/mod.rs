//! Embedded planar graphs given by rotation systems: face tracing, the dual
//! multigraph, dual spanning trees, the facet slack identity between `U`
//! and `U*`, and the one-bit planar protocol.

mod embedding;
mod duality;
mod williams;

pub use embedding::{build_dual, dual_tree, parse_rotation_file, rotation_to_text, trace_faces, Dart, DualStructure, PlanarEmbedding};
pub use duality::{facet_condition, dual_count_check, dual_count_sides, u_star, FacetSet, DualCountCheck};
pub use williams::{default_anchor, williams_bits_bound, williams_protocol, williams_sweep};

use thiserror::Error;

use crate::graph::GraphError;
use crate::protocols::ProtocolError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed rotation: {0}")]
    Rotation(String),
    #[error("rotation is not spherical: |V| - |E| + |F| = {v} - {e} + {f} != 2")]
    Euler { v: usize, e: usize, f: usize },
    #[error("host graph must be 2-connected")]
    NotTwoConnected,
    #[error("G[U] and G/U are not both 2-connected (or |U| = 2)")]
    NotFacet,
    #[error("edge set is not a spanning tree of the host")]
    NotSpanningTree,
    #[error("vertex {vertex} is not on the boundary of face {face}")]
    NotOnFace { vertex: usize, face: usize },
    #[error("face {0} out of range")]
    FaceOutOfRange(usize),
}
