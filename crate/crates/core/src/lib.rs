//! Uniquely universal parameterizations of open and closed sets, computed at
//! finite depth with exact arithmetic.

pub mod baire_maps;
pub mod error;
pub mod family;
pub mod good_families;
pub mod good_filters;
pub mod nice_trees;
pub mod rational;
pub mod spaces;
pub mod stream;
pub mod z_space;

pub use error::{Error, Result};
