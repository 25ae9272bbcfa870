//! Numerical birational geometry of special quadro-quadric and cubo-cubic
//! Cremona transformations of `P^3` and `P^4`.

pub mod catalog;
pub mod classifier;
pub mod congruence;
pub mod error;
pub mod intersection;
pub mod lattice;
mod serde_int;

pub use error::{Error, Result};
