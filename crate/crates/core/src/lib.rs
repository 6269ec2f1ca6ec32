//! Exact counting, construction and switching of `n`-ary quasigroups.
//!
//! An `n`-ary quasigroup of order `k` is an operation `Σ^n → Σ` on
//! `Σ = {0, .., k-1}` that is a bijection in each argument when the others are
//! fixed; its value table is a latin hypercube. This crate provides
//!
//! * [`model`]: explicit tables, lazy compositions and partial quasigroups;
//! * [`enumerate`]: backtracking counters for quasigroups, loops and
//!   completions of partial quasigroups, with the extension-graph analysis;
//! * [`census4`]: semilinearity, reducibility and the counting recurrence for
//!   order 4;
//! * [`constructions`]: idempotent quasigroups, the doubled-order table `ψ`,
//!   its iterated compositions and an even-order maximal-trade witness;
//! * [`trades`]: components, switching and disjoint families;
//! * [`bounds`]: closed-form upper, lower and trade-number bounds.

pub mod bounds;
pub mod census4;
pub mod constructions;
pub mod decimal;
pub mod enumerate;
mod error;
pub mod fixtures;
pub mod model;
pub mod trades;
mod unionfind;

pub use error::{Error, Result};
pub use model::{ComposedQuasigroup, Domain, Hypercube, Node, PartialQuasigroup, Point};
pub use num_bigint::BigUint;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;
