//! Exact chip-firing on finite multigraphs: divisors, Dhar's burning
//! algorithm, rank, gonality search and the certificates that bound it.

pub mod bounds;
pub mod certificates;
pub mod compositions;
pub mod dhar;
pub mod divisor;
pub mod error;
pub mod exec;
pub mod flow;
pub mod game;
pub mod generators;
pub mod gonality;
pub mod graph;
pub mod independence;
pub mod linear_system;
pub mod parking;
pub mod subsets;
pub mod vertex_set;

pub use dhar::{burn, dollar_game_winnable, q_reduce, rank, verify_riemann_roch, BurnOutcome, RankResult};
pub use divisor::{canonical_divisor, Divisor, FiringScript};
pub use error::{Error, Result};
pub use exec::Exec;
pub use flow::min_edge_cut;
pub use graph::Multigraph;
pub use independence::independence_number;
pub use subsets::connected_subsets;
pub use vertex_set::VertexSet;
