//! Spectral Hamiltonicity toolkit for balanced bipartite graphs.
//!
//! A balanced bipartite graph `G` on `2n` vertices that is 1-tough in the
//! bipartite sense and satisfies `ρ(G) >= ρ(G_{n,n})` contains a Hamilton
//! cycle unless it is the extremal graph `G_{n,n}` itself (for `n >= 16`).
//! This crate computes every quantity in that statement, builds the extremal
//! family, replays the case analysis behind it on concrete graphs and runs
//! verification suites over graph populations.
//!
//! - [`bigraph`]: the graph type, constructors and graph6/edge-json codecs.
//! - [`spectral`]: spectral radius, the exact threshold `ρ(G_{n,n})`, and the
//!   `ρ ≤ √e` edge bound.
//! - [`toughness`]: component counts, bipartite toughness and 1-toughness.
//! - [`hamilton`]: closure, Hamilton cycles, 2-factors, good linear forests.
//! - [`verify`]: graph populations, theorem verdicts, proof traces, suites.

pub mod bigraph;
pub mod hamilton;
pub mod spectral;
pub mod toughness;
pub mod verify;

pub use bigraph::{BipartiteGraph, Part, Vertex, VertexSet};
