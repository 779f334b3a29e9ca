//! Exact algebra and Nevanlinna-functional numerics for truncated second main
//! theorems on orbifold entire curves.

pub mod algebra;
pub mod constants;
pub mod differential;
pub mod error;
pub mod exceptional;
pub mod harness;
pub mod morphism;
pub mod nevanlinna;

pub use error::{Error, Result};
