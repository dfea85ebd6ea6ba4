//! Linear clique-width of cographs: graphs and recognizers, cotrees and
//! threshold factorizations, expression transforms, and an exact solver.

pub mod cotree;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod formats;
pub mod graph;
pub mod iso;
pub mod patterns;
pub mod solve;
pub mod verify;

pub use error::{CotreeError, ExprError, FormatError, GraphError, SolveError};
pub use graph::Graph;
