//! Localizable genuine multiparty entanglement of graph states under
//! single-qubit Pauli measurements and Pauli noise.

pub mod check;
pub mod error;
pub mod gd;
pub mod graph;
pub mod io;
pub mod localizer;
pub mod measures;
pub mod noise;
pub mod oracle;
pub mod orbit;
pub mod reduction;
pub mod tags;
pub mod vertex_cover;

pub use error::{Error, Result};
pub use gd::GDState;
pub use graph::{Bipartition, Graph, NodeSet};
pub use noise::{ChannelKind, ChannelSpec, PauliProbs};
pub use reduction::{Axis, PauliSetup, ReductionResult};
pub use tags::{AttributedGraph, CliffordTag};
