//! Exact line arrangements over cyclotomic fields and the containment problem
//! `I^(m) ⊆ I^r` for ideals of their singular points.
//!
//! Everything is computed with exact arithmetic in `Q(ζ_n)`; graded pieces of
//! ideals are handled as vector subspaces of the degree-`d` forms.

pub mod error;
pub mod numberfield;
pub mod linalg;
pub mod polyring;
pub mod geometry;
pub mod catalog;
pub mod engine;

pub use error::{Error, Result};
