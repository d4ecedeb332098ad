//! Basketballs of complex polynomials.
//!
//! The real and imaginary components `Re f = 0` and `Im f = 0` of a monic
//! polynomial form a pair of circular forests on `4n` interlaced leaves.
//! This crate traces them numerically, describes them combinatorially,
//! classifies the cells of coefficient space they index and enumerates them.

pub mod enumeration;
pub mod error;
pub mod forest;
pub mod tracer;
pub mod poly;
pub mod scalar;
pub mod stratifier;

pub use error::{Error, Result};
