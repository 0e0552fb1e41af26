//! Solvers for one-pair Streett (parity-3) games and k-pair Streett
//! objectives on graphs.
//!
//! The parity-3 solver searches for small dominions with a bounded progress
//! measure on a hierarchy of sparse subgames and falls back to a full Büchi
//! solver only for large ones. The k-pair solver detects good components by
//! repeatedly removing bad vertices and splitting off small top or bottom SCCs
//! found by a lock-step search over the same kind of hierarchy.

pub mod attractor;
pub mod bench;
pub mod buchi;
pub mod error;
pub mod format;
pub mod game;
pub mod generate;
pub mod good_component;
pub mod graph;
pub mod oracles;
pub mod parity3;
pub mod scc;
pub mod set;
pub mod streett;
pub mod streett_ds;

pub use error::{Error, Result};
pub use game::{GameGraph, GameView, Player, Strategy};
pub use graph::{Digraph, Graph};
pub use set::VertexSet;

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;
