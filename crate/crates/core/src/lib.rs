//! Finite, truncated set-valued presheaves on the simplex category and its
//! augmented, split, bisimplicial and abacus variants, together with decidable
//! checks for the Segal-type conditions, decalage constructions and the
//! comparison functors between bicomodule configurations, pointed
//! bisimplicial sets and 2-Segal sets.
//!
//! Everything is discrete: levels are finite sets of opaque string ids, and
//! pullback conditions are checked as strict pullbacks of finite sets.

#![no_std]

extern crate alloc;

pub mod abacus;
pub mod config;
pub mod decalage;
pub mod fibration;
pub mod fixtures;
pub mod index;
pub mod presheaf;
pub mod report;
pub mod simplex;
pub mod suites;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("values are not weakly increasing: {0}")]
    NotMonotone(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("malformed presheaf: {0}")]
    Malformed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
}

pub use report::{CheckReport, Verdict, Witness};
