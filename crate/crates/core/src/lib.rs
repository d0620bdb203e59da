//! Lazy successor generation for any-angle pathfinding among line-segment
//! obstacles, with the baselines and scenario tooling used to evaluate it.

pub mod baselines;
pub mod bench;
pub mod geometry;
pub mod neighbor_index;
pub mod render;
pub mod scenarios;
pub mod search;
pub mod solution;

pub use geometry::{ConnectOracle, LocationId, Point, ProblemInstance, Segment, TieKey};
pub use neighbor_index::NeighborIndex;
pub use search::{lacas_search, Budget, SearchConfig, SearchOutcome, SearchReport};
