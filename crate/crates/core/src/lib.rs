//! Weak saturation and saturation in hypercubes and grids.

pub mod codes;
pub mod cycle_tree;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod oracle;
pub mod percolation;
pub mod sat;
pub mod subgraph;
pub mod wsat;

pub use error::{Error, Result};
pub use grid::{AxisSubgrid, EdgeId, GridSpace, Line, VertexId};
pub use subgraph::EdgeSubgraph;
