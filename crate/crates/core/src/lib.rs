pub mod alteration;
pub mod clique;
pub mod density;
pub mod error;
pub mod experiments;
pub mod games;
pub mod graph;
pub mod random;
pub mod subgraph;

pub use error::{Error, Result};
