//! Exact construction and verification of complex hyperbolic triangle groups
//! with a 2-fold symmetry, and the search that classifies their parameters.

pub mod cosearch;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod reports;
pub mod trigroup;

pub use error::{Error, Result};
