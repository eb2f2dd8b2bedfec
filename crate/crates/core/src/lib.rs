//! Constructive machinery for monotone properties of graphs in proper
//! minor-closed classes.
//!
//! The crate is organised around five subsystems:
//!
//! * [`graph`]: the graph substrate, generators, the property catalog and the
//!   exact brute-force oracles (subgraph containment, edit distance, planarity).
//! * [`decomp`]: exact treedepth, decomposition checking, low-treedepth and
//!   weak-diameter covers, and the edge-deletion corollary built on them.
//! * [`obstructions`]: minimal forbidden families, split/unsplit detection,
//!   the unsplit size recursion and the linear Erdős–Pósa dichotomy.
//! * [`tester`]: the random-neighbor oracle and a one-sided tester.
//! * [`certify`]: proof labelling schemes, their verifiers and an adversarial
//!   soundness harness.

pub mod certify;
pub mod decomp;
pub mod graph;
pub mod obstructions;
pub mod tester;

pub use graph::{EditSet, Graph, GraphError, VertexId};
