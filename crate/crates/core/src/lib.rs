//! Exact computations with square-zero extensions of finite-dimensional algebras.
//!
//! The crate classifies square-zero extensions `0 -> I -> B -> A -> 0` of a
//! finite-dimensional associative unital algebra `A` by a bimodule `I` through
//! Hochschild 2-cocycles, builds and takes apart extension algebras, computes
//! first-order jet modules and connection obstructions, and computes the
//! Kodaira-Spencer map of a module together with its kernel. All arithmetic is
//! exact, over `Q` or a prime field.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod extensions;
pub mod hochschild;
pub mod jets;
pub mod kodaira;

pub use error::{Error, Result};
