//! Simplicial filters over finite presentations.
//!
//! A *situs* is a truncated simplicial set whose every degree carries a graded
//! filter, with all structural maps continuous. This crate implements the
//! finite surrogates: graded filters, truncated simplicial sets, situs
//! morphisms, exhaustive lifting-property search, and the analytic,
//! topological and combinatorial checks built on them.
//!
//! Everything is `no_std` with `alloc`; file formats and the command line live
//! in the `situs-cli` crate.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod bundle;
pub mod error;
pub mod filter;
pub mod lifting;
pub mod model;
pub mod num;
pub mod ramsey;
pub mod search;
pub mod set;
pub mod simplicial;
pub mod situs;
pub mod skorokhod;
pub mod space;
pub mod subdivision;

pub use error::Error;
pub use filter::{GradedFilter, Semantics};
pub use set::BitSet;
pub use simplicial::{MonotoneMap, TruncatedSSet};
pub use situs::{Situs, SitusMorphism};

/// Default truncation used by constructors that take one.
pub const DEFAULT_TRUNCATION: usize = 3;
