//! Exact search for approximations of a constant among the distances between
//! intersection points of the chord lines of a regular polygon.
//!
//! Coordinates live in the real cyclotomic field ℚ(2cos(2π/M)) with
//! M = lcm(n, 4), so incidences and squared distances are decided
//! exactly; numeric claims go through certified interval enclosures.

// Field elements carry a shared descriptor whose enclosure cache is behind a
// lock; hashing and equality read only the conductor and coefficients.
#![allow(clippy::mutable_key_type)]

pub mod catalog;
pub mod error;
pub mod geometry;
pub mod numberfield;
pub mod par;
pub mod search;

pub use error::{Error, Result};
