//! Bowlership detection: directional tests between bowling partners, the
//! signed and weighted graphs built from them, and squad selection.

mod classify;
mod export;
mod graph;
mod select;

use thiserror::Error;

use crate::stats::StatsError;

pub use classify::{
    classify_direction, classify_pair, decide_sign, BowlershipEdge, ClassifyOptions, DirectedTest,
    IndividualSet, Metric, Sign, MIN_SAMPLE_OVERS,
};
pub use export::{directed_dot, edge_rows, edges_csv, weighted_dot, EdgeRow};
pub use graph::{
    average_weighted_degree, build_directed_graph, create_weighted_graph, DirectedSignedGraph,
    WeightedGraph,
};
pub use select::{
    bowler_select, exhaustive_select, for_each_connected_subset, SelectionPhase, SelectionResult,
    SelectionStep, EXHAUSTIVE_MAX_VERTICES,
};

#[derive(Debug, Error)]
pub enum BowlershipError {
    #[error("{bowler} with {partner}: {bowlership} bowlership overs and {individual} individual overs, need at least {min} each", min = MIN_SAMPLE_OVERS)]
    InsufficientSample {
        bowler: String,
        partner: String,
        bowlership: usize,
        individual: usize,
    },
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("bowler {0} is not part of this pair")]
    NotInPair(String),
    #[error("unknown bowler {0}")]
    UnknownVertex(String),
    #[error("unknown metric {0:?}")]
    UnknownMetric(String),
    #[error("unknown individual set {0:?}")]
    UnknownIndividualSet(String),
    #[error("self loop on {0}")]
    SelfLoop(String),
    #[error("edge metric does not match the graph")]
    MetricMismatch,
    #[error("empty vertex set")]
    EmptySet,
    #[error("k = {k} exceeds the {vertices} vertices in the graph")]
    KTooLarge { k: usize, vertices: usize },
    #[error("k must be positive")]
    KNonPositive,
    #[error("{vertices} vertices is over the exhaustive limit of {max}")]
    TooManyVertices { vertices: usize, max: usize },
}
