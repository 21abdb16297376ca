//! Seeds with principal coefficients, mutation, g-vectors and exchange-graph
//! search.

pub mod bfs;
pub mod laurent;
pub mod quiver;
pub mod seed;

pub use bfs::{exchange_bfs, exchange_bfs_with, BfsResult, ClusterRecord, Engine};
pub use laurent::LaurentPoly;
pub use quiver::{Quiver, QuiverSpec};
pub use seed::{g_vector_grading, g_vector_tropical, grading, GVector, Seed, TropicalSeed, SIZE_GUARD};
