//! Exact linear algebra for finite oriented Gorenstein algebras.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod forms;
pub mod frobenius;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod tensors;

pub use error::{Error, Result};
