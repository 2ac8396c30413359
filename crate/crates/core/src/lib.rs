//! S-magic labelings and the distance magic index of complete partite
//! graphs and related regular families.

pub mod arrays;
pub mod bipartite;
pub mod error;
pub mod families;
pub mod graph;
pub mod index;
pub mod labeling;
pub mod oracle;
pub mod partition;
pub mod spec;
pub mod tables;
pub mod theta;
pub mod tripartite;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::{Graph, PartiteSpec};
pub use labeling::{Labeling, VerifyReport};
pub use index::{Instance, IndexOptions, LabelOutcome, Route};
pub use oracle::OracleOptions;
pub use partition::Budget;
pub use spec::GraphSpec;
pub use theta::{CaseTag, Provenance, ThetaResult};
