//! Alternating paths in oriented graphs.
//!
//! An oriented graph whose every positive in- and out-degree exceeds `5k/8`
//! contains an alternating path on `k` vertices. This crate turns that argument
//! into an algorithm ([`finder::find_alternating_path`]) that either returns
//! such a path or a degree certificate explaining which counting step failed,
//! and pairs it with exact exponential oracles ([`oracle`]) for checking.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is off.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bipartite;
pub mod finder;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod path;
pub mod rotation;
pub mod set;

pub use finder::{find_alternating_path, FinderBudget, FinderOutcome, FinderRun, GiveUpReason};
pub use graph::{DegreeSummary, GraphError, OrientedGraph};
pub use path::{validate, AlternatingPath, ParityFrame, PathError};
pub use set::VertexSet;

/// `δ̄⁰(g) > 5k/8`; false when `δ̄⁰` is undefined.
pub fn condition_holds(min_pseudo_semidegree: Option<usize>, k: usize) -> bool {
    min_pseudo_semidegree.is_some_and(|d| 8 * d > 5 * k)
}

/// Largest `k` with `δ̄⁰ > 5k/8`, i.e. `⌈8δ̄⁰/5⌉ - 1`.
pub fn largest_qualifying_k(min_pseudo_semidegree: Option<usize>) -> Option<usize> {
    min_pseudo_semidegree.map(|d| (8 * d - 1) / 5)
}
