//! k-center on unweighted and small-integer-weighted graphs: exact search,
//! randomized approximation deciders and hard-instance gadgets.

pub mod approx;
pub mod bench;
pub mod boolcover;
pub mod distance;
pub mod error;
pub mod exact;
pub mod gadget;
pub mod generators;
pub mod graph;
pub mod seeding;
pub mod vertex_set;

pub use approx::{approximate_radius, ApproxConfig, ApproxSolution, Decider, DecisionOutcome};
pub use distance::DistOracle;
pub use error::{KCenterError, Result};
pub use exact::{cover_radius, exact_k_radius, verify_cover, CenterSolution};
pub use graph::{Dist, Graph, Vertex, UNREACHABLE};
pub use vertex_set::VertexSet;
