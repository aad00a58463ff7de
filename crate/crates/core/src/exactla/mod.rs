//! Exact scalars over Q and F_p and dense linear algebra on top of them.
//!
//! Every routine here is deterministic: pivots are chosen by column order and
//! bases are read off reduced echelon forms, so two runs on the same input
//! produce the same vectors.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{check_size, vector, Matrix, Vector, MAX_ENTRIES};
pub use scalar::{Field, Scalar};
pub use subspace::{coordinates, in_span, quotient_dim, rank_of, span_basis, Quotient, QuotientMap};
