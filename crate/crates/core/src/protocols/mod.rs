//! Randomized two-party protocols that compute the slack `|U| - 1 - |F ∩ E(U)|`
//! in expectation. Alice holds `U`, Bob holds the forest `F`; runs are
//! enumerated exhaustively over Bob's random arc.

mod classical;
mod separator;
mod sweep;

pub use classical::{classical_protocol, rooted_protocol, spanning_tree_protocol, AliceChoice};
pub use separator::{separator_protocol, separator_protocol_with, BitBudget, KAPPA};
pub use sweep::{classical_bits_bound, protocol_sweep, SweepLine, SweepReport};

use thiserror::Error;

use crate::formulations::FormulationError;
use crate::graph::GraphError;
use crate::separators::SeparatorError;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] SeparatorError),
    #[error("G[U] must be connected for the separator protocol")]
    DisconnectedSubset,
    #[error("Alice's vertex {0} is not in U")]
    VertexNotInSubset(usize),
    #[error("{0}")]
    Invalid(String),
}

impl From<FormulationError> for ProtocolError {
    fn from(e: FormulationError) -> Self {
        match e {
            FormulationError::Graph(g) => ProtocolError::Graph(g),
            other => ProtocolError::Invalid(other.to_string()),
        }
    }
}

/// One branch of the protocol's randomness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub probability: Rational,
    pub bits: usize,
    pub output: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolRun {
    pub outcomes: Vec<Outcome>,
    pub expectation: Rational,
    pub max_bits: usize,
}

impl ProtocolRun {
    /// Panics unless the probabilities sum to one and every output is
    /// non-negative.
    pub fn from_outcomes(outcomes: Vec<Outcome>) -> Self {
        let mass: Rational = outcomes.iter().map(|o| o.probability.clone()).sum();
        assert_eq!(mass, Rational::one(), "probabilities must sum to 1");
        assert!(outcomes.iter().all(|o| !o.output.is_negative()), "negative output");
        let expectation = outcomes.iter().map(|o| &o.probability * &o.output).sum();
        let max_bits = outcomes.iter().map(|o| o.bits).max().unwrap_or(0);
        ProtocolRun {
            outcomes,
            expectation,
            max_bits,
        }
    }

    /// Every branch sends `extra` more bits.
    pub fn with_extra_bits(mut self, extra: usize) -> Self {
        for o in &mut self.outcomes {
            o.bits += extra;
        }
        self.max_bits += extra;
        self
    }
}

/// `ceil(log2(k))` for `k >= 1`, the width of an index into `k` items.
pub fn index_bits(k: usize) -> usize {
    assert!(k >= 1);
    (usize::BITS - (k - 1).leading_zeros()) as usize
}
