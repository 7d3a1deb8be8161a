//! Spectral bounds on the clique number and independence number of a graph,
//! evaluated and checked against exact combinatorial oracles.

pub mod bounds;
pub mod eigen;
pub mod experiments;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod serial;
pub mod spectra;

pub use graph::{Graph, GraphError, MultipartiteCertificate, ParseError, Refutation};
