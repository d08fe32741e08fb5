//! Diamond hitting set solvers with exact rational arithmetic.
//!
//! A *diamond* is any subdivision of the multigraph made of three parallel
//! edges (a theta subgraph). A graph without diamonds is a *forest of cacti*:
//! every edge lies on at most one cycle. The diamond hitting set problem asks
//! for a minimum-cost vertex set whose removal leaves a forest of cacti.
//!
//! This crate provides:
//!
//! * [`graph`] — weighted multigraphs, block decomposition, cactus
//!   recognition, theta detection and short-cycle counting;
//! * [`reduce`] — shaving and bond reduction down to graphs where every
//!   vertex has three distinct neighbors or three parallel edges;
//! * [`support`] — bounded-size diamond search and support-graph extraction
//!   with consistency repair;
//! * [`rows`] — diamond, blended diamond and (extended) sparsity inequality
//!   rows over exact rationals;
//! * [`solver`] — the greedy, `O(log n)` primal-dual and 9-approximation
//!   primal-dual algorithms, plus certificate verification;
//! * [`oracle`] — brute-force ground truth and seeded instance generators
//!   for desk-scale verification.
//!
//! All arithmetic is exact (`BigRational`); the solvers never introduce
//! tolerances, so dual feasibility and certificate checks are bit-exact.

pub mod error;
pub mod graph;
pub mod oracle;
pub mod rat;
pub mod reduce;
pub mod rows;
pub mod solver;
pub mod support;

pub use error::Error;
pub use graph::{Block, Diamond, EdgeId, MultiGraph, PathSeq, Subgraph, VertexId};
pub use rat::Rat;

/// Short-cycle horizon of the sparsity machinery. The 9-approximation
/// analysis is tuned to this value; other values are accepted only by
/// [`rows::cactus_edge_bound`] and [`rows::build_sparsity_row_basic`].
pub const Q: u32 = 5;
