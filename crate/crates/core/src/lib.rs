//! Exact computations with harmonic quaternion polynomial fields in R³.

pub mod characters;
pub mod decomp;
pub mod density;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod quaternion;
pub mod random;
pub mod sampling;
pub mod rational;
pub mod spaces;

pub use error::{Error, Result};
