//! Construction and certification of k-limited packings in graphs.
//!
//! A vertex set `X` is a *k-limited packing* when every closed neighbourhood
//! `N[v]` contains at most `k` members of `X`; `L_k(G)` is the largest size of
//! such a set. The crate provides
//!
//! * [`graph`]: simple graphs, edge-list I/O and generators,
//! * [`packing`]: verification, the randomized construction and exact oracles,
//! * [`bounds`]: closed-form lower and upper bounds on `L_k(G)`,
//! * [`experiments`]: seeded trial runs and oracle sweeps,
//! * [`cli`]: the `limpack` command-line tool.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod packing;

pub use error::{Error, Result};
pub use graph::{Family, Graph, Vertex, VertexSet};
pub use packing::{PackingInstance, PackingResult};
