// Index loops read closer to the matrix formulas than iterator chains.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod monoid;
pub mod verify;

pub use error::{Error, Result};
