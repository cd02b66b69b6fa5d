//! Exact linear programming over [`LinearSystem`](crate::formulations::LinearSystem)s
//! and the greedy forest oracle it is checked against.

mod greedy;
mod simplex;
mod verify;

pub use greedy::max_weight_forest;
pub use simplex::{simplex_max, LpResult, LpSolver, LpStatus};
pub use verify::{
    random_objectives, sample_forests, structured_objectives, verify_ef, verify_ef_with, CheckLine, Objective, VerifyReport,
    EXHAUSTIVE_FOREST_EDGES,
};
