//! Executable forms of the combinatorial lemmas behind the linear bound on
//! rich affine maps of proper planar sets: triple-system pruning, selection
//! of small triangles in an arrangement, the five-step averaging argument
//! and the graph-plane reduction to `R^4`.

mod experiment;
mod forcing;
mod triangles;
mod triples;

pub use experiment::{
    graph_plane_embed, main_theorem_experiment, ExperimentRow, Family, GraphPlane,
};
pub use forcing::{average_forcing, AvgForcingReport, StepRecord};
pub use triangles::{locate_distinct, select_small_triangles, TriangleSelection};
pub use triples::{build_incidence_triples, prune_triple_system, TripleSystem};

use crate::arrangement::ArrangementError;
use crate::richmaps::RichError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("empty triple system")]
    EmptySystem,
    #[error("pruning kept {kept} of {original} triples, below one quarter")]
    Collapse { kept: usize, original: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("point {point} lies on line {line}")]
    PointOnLine { point: usize, line: usize },
    #[error("points {first} and {second} share a cell")]
    DuplicateCell { first: usize, second: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Rich(#[from] RichError),
}
