//! Exact machinery for higher-dimensional partitions.
//!
//! A d-dimensional partition is a finitely supported, axis-monotone array
//! of nonnegative integers; d = 1 gives integer partitions, d = 2 plane
//! partitions, d = 3 solid partitions. This crate provides:
//!
//! - the lattice types: cells, diagrams (finite downsets), hypermatrices
//!   and partitions, with conversions between them ([`lattice`]);
//! - the bijection between N-hypermatrices and partitions, inverted by
//!   projecting corners ([`transform`]);
//! - corner statistics: the c-statistics and the corner-hook volume
//!   ([`stats`]);
//! - exhaustive, duplicate-free enumeration and exact counting of
//!   partitions under volume, simplex and box constraints ([`enumerate`]);
//! - truncated Euler products, MacMahon numbers and vector partition
//!   tables in exact arithmetic ([`series`]);
//! - evaluation of the growth constants and an inequality verification
//!   suite over all of the above ([`bounds`]).
//!
//! Everything counts in arbitrary precision; searches carry a node budget
//! and refuse cleanly when it is exhausted.
//!
//! ```
//! use hyperpart::enumerate::{count_p, SearchConfig};
//! use hyperpart::series::macmahon_numbers;
//! use num_bigint::BigUint;
//!
//! // plane partitions of volume 6, counted two ways
//! let counted = count_p(2, 6, &SearchConfig::default()).unwrap();
//! let generated = macmahon_numbers(2, 6).coeff(6).clone();
//! assert_eq!(counted, generated);
//! assert_eq!(counted, BigUint::from(48u32));
//! ```

pub mod bounds;
pub mod cache;
pub mod enumerate;
mod error;
pub mod lattice;
pub mod output;
pub mod series;
pub mod stats;
pub mod transform;

pub use error::{Error, Result};

/// Version string recorded in cache records and reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
