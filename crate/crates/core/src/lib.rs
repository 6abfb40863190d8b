//! Minimum cycle bases of weighted partial 2-trees in linear time.
//!
//! The pipeline: split into blocks, build a suitable tree decomposition with
//! a distance oracle per block (which also recognises treewidth two), drop
//! long edges, cut along `K_{2,k}` separators into outerplanar parts, read
//! off their internal faces, and stitch everything back together.

pub mod assembly;
pub mod biconnected;
pub mod cycle;
pub mod decomposer;
pub mod elimination;
pub mod generator;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod outerplanar;
pub mod reference;
pub mod treedec;
pub mod weight;

pub use assembly::{compute_mcb, ImplicitMcb, McbError, McbStats};
pub use cycle::Cycle;
pub use graph::{EdgeId, EdgeKind, EdgeRecord, VertexId, WeightedGraph};
pub use io::{load_graph, parse_graph, write_graph, ParseError};
pub use weight::Weight;
