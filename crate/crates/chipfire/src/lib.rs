//! Riemann-Roch theory for chip-firing games on strongly connected digraphs
//! and arithmetical graphs.
//!
//! Every game is a [`Game`]: a Z-matrix `M` acting by `D -> D - M f`, with a
//! positive period (its kernel) and a positive weight (its left kernel)
//! giving the conserved degree. Digraph row and column games and the
//! arithmetical chip game are constructors on top of it.

pub mod arithmetical;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod rank;
pub mod reduction;
pub mod riemann_roch;
pub mod sandpile;

pub use arithmetical::ArithmeticalGraph;
pub use error::{Error, Result};
pub use game::{Game, Side};
pub use graph::Digraph;
pub use lattice::Lattice;
pub use rank::{ExtremeClass, ExtremeClassSet, Ranker, DEFAULT_BUDGET};
pub use riemann_roch::RRReport;
