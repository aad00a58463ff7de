//! Finite-dimensional associative unital algebras given by structure constants,
//! their bimodules and left modules, and the linear invariants built from them.

pub mod catalog;
mod modules;
mod ops;
mod structure;

pub use modules::{AlgebraMap, Bimodule, LeftModule};
pub use ops::{center, derivations, diff_ops_1, end_bimodule, is_central, left_multiplications};
pub(crate) use structure::kron;
pub use structure::{Algebra, ValidationReport};
