//! Equivalence classes of permutations under pattern-replacement.
//!
//! Two permutations are equivalent under a pattern set `P` when one can be
//! reached from the other by repeatedly taking an occurrence of a pattern in
//! `P` and rearranging its letters into another pattern of `P`. This crate
//! provides:
//!
//! - [`perm`]: permutation arithmetic — standardization, ranking, parity;
//! - [`pattern`]: pattern sets, occurrence search, replacement moves;
//! - [`leader`]: leader permutations and the adjacency predicate;
//! - [`engine`]: exhaustive partition enumeration over `S_n` (union-find on
//!   Lehmer ranks), censuses, targeted class queries, and an on-disk cache;
//! - [`verify`]: one checker per structural claim about the `{1234, 3412}`
//!   relation, each producing a machine-readable pass/fail report.

pub mod engine;
pub mod error;
pub mod leader;
pub mod pattern;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use pattern::{occurrences, apply_replacement, Occurrence, PatternSet};
pub use perm::{Parity, Permutation, Transposition, FACTORIAL, MAX_N};
