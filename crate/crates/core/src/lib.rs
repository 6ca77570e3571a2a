//! Pair-color laws for two ways of drawing a matching pair.
//!
//! Given a finite color distribution `p`, a *memoryless* draw (two objects at a
//! time until a round matches) and a *sequential* draw (one object at a time
//! until some color repeats) produce different laws for the color of the pair.
//! This crate computes both laws exactly, their total variation distance (the
//! discrepancy), the extremal one-parameter family and its limit constants,
//! and the left/right ("shoes") variant.
//!
//! The crate is `no_std` with `alloc`. Parallel execution, IO and the CLI live
//! in the `pairlaw` companion crate; anything here that fans out work takes a
//! [`exec::StreamExecutor`] so results are identical for any thread count.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dist_core;
pub mod error;
pub mod exec;
pub mod family_opt;
pub mod limit_laws;
pub mod numeric;
pub mod pair_laws;
pub mod shoes;

pub use dist_core::{Distribution, ElemSymTable, RngSeed};
pub use error::{Error, Result};
pub use pair_laws::{Method, PairLaw};
