//! Finite tree machinery for big Ramsey degrees.
//!
//! Nodes of `2^{<ω}`, meet-closed trees and finite strong subtrees, passing
//! number codings of graphs, strong similarity types of strongly diagonal
//! trees, envelopes, the triangle-free coding tree construction, and
//! exhaustive Ramsey oracles that check the infinite statements on small
//! finite instances.

pub mod coding_tree;
pub mod envelope;
pub mod error;
pub mod graph;
pub mod node;
pub mod ramsey_lab;
pub mod similarity;
pub mod tree;

pub use error::{Error, ParseError, Result};
pub use graph::Graph;
pub use node::{node, Node};
pub use similarity::{canonical_type, Mode, SimilarityType};
pub use tree::{meet_closure, FinTree, StrongWitness};
