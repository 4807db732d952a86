//! Exact subtree statistics and mean subtree order of small and symbolic graphs.
//!
//! * [`graph`]: bitmask graphs, the standard constructions and graph6 I/O.
//! * [`census`]: subtree counts and total orders by enumeration, by the
//!   Matrix-Tree theorem and by tree dynamic programming, plus marked censuses
//!   that make pendant stars of any size tractable.
//! * [`families`]: paths with pendant stars at both ends, chords added to them,
//!   and the subfamilies used to show that adding edges can lower the mean.
//! * [`bstem`]: complete split graphs against complete bipartite graphs.
//! * [`search`]: scans for mean-decreasing edge additions and the tree lower bound.

pub mod bstem;
pub mod census;
pub mod error;
pub mod families;
pub mod graph;
pub mod prufer;
pub mod search;

pub use census::{Rational, SubtreeStats};
pub use error::{Error, ErrorKind, Result};
pub use graph::{Edge, Graph, VertexSet};
