//! Extended formulations of forest and spanning-tree polytopes built from balanced separators.

pub mod bounds;
pub mod cli;
pub mod fixtures;
pub mod formulations;
pub mod graph;
pub mod lp;
pub mod planar;
pub mod protocols;
pub mod rational;
pub mod separators;

pub use graph::{EdgeSubset, Graph, GraphError, GraphMode, VertexSubset};
pub use rational::Rational;
