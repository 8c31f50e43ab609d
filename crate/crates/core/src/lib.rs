//! Exact evaluation of vertex-localized clique-count bounds.
//!
//! For a graph `G` on `n` vertices let `c(v)` be the order of the largest
//! clique containing `v`. Then for every `t >= 2`
//!
//! ```text
//! N(G, K_t) <= n^(t-1) * Σ_v C(c(v), t) / c(v)^t
//! ```
//!
//! and, for `2 <= t <= ω(G)`, equality holds exactly for regular complete
//! multipartite graphs. This crate computes both sides exactly, certifies the
//! equality case, evaluates the classical and localized comparison bounds,
//! and implements the simplex potential whose nonnegativity at the uniform
//! point is the inequality itself.
//!
//! Modules, bottom up:
//! - [`graph`], [`format`]: bitset graphs, generators, graph6 and edge lists
//! - [`clique`]: exact counting, `c(v)` profiles, largest clique through a set
//! - [`oracle`]: brute-force references for the above
//! - [`bounds`]: every bound plus [`bounds::BoundReport`]
//! - [`simplex`]: the potential Φ, transfers and support-shrinking descent
//! - [`cli`], [`selfcheck`]: the `locbound` command-line tool

pub mod bitset;
pub mod bounds;
#[cfg(feature = "cli")]
pub mod cli;
pub mod clique;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod rational;
pub mod selfcheck;
pub mod simplex;

pub use bounds::{bound_report, BoundReport};
pub use clique::{count_cliques, vertex_clique_numbers, CliqueProfile, WorkBudget};
pub use graph::{Graph, PartSpec};
pub use rational::Rational;
pub use simplex::{Potential, SimplexPoint};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
