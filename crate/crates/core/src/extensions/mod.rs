//! Square-zero extensions `0 -> I -> B -> A -> 0` and their cocycles.

mod cocycles;
mod construct;

pub use cocycles::{caction, cocycle_violation, equiv, exan_basis, is_cocycle, EquivMode, Equivalence, Exan, Side};
pub use construct::{
    build_extension, choose_section, extract_cocycle, quotient_extension, rebuild_isomorphism,
    twisted_algebra_unchecked, ExtensionAlgebra, Extracted, QuotientExtension, Rebuilt, Section,
};
