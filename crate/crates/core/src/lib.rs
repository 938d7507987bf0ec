//! Spinorial bounds on spheres in spherically symmetric initial data sets.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod dirac;
pub mod embedded;
pub mod error;
pub mod initial_data;
pub mod jang;
pub mod numeric;
pub mod scenario;
pub mod slices;

pub use error::{Error, Result};
