//! NIC-planar graphs: verification of NIC-planar embeddings, generalized
//! duals of maximal embeddings with density accounting, linear-time
//! recognition of optimal NIC-planar graphs, extremal family generators and
//! brute-force oracles for small graphs.
//!
//! A NIC-planar embedding draws every edge with at most one crossing, and
//! any two crossings share at most one vertex among their endpoints.

pub mod dual;
pub mod embedding;
pub mod error;
pub mod generate;
pub mod graph_core;
pub mod k4;
pub mod oracle;
pub mod planarity;
pub mod recognize;
