//! Finite meet-semilattices with zero, their Lawson duals, separating
//! compatibilities, and crisp and lattice-valued ambiguous representations
//! with pseudo-inverses and composition.

pub mod bits;
pub mod catalog;
pub mod compat;
pub mod crisp;
pub mod dual;
pub mod error;
pub mod fuzzy;
pub mod oracle;
pub mod order;

pub use bits::{BitMatrix, ElemSet, Ternary};
pub use compat::{canonical_pairing, iso_to_compat, Compatibility};
pub use crisp::{double_pseudo_inverse, pinv, pseudo_inverse, pseudo_inverse_transversal, CrispRep};
pub use dual::{canonical_iso, dual_map, lawson_dual, DualSemilattice, SemilatticeMorphism};
pub use error::{Error, Result, Witness};
pub use fuzzy::{
    compose_fuzzy, compose_fuzzy_closure, fuzzy_double_pseudo_inverse, fuzzy_pinv,
    fuzzy_pseudo_inverse, fuzzy_pseudo_inverse_shortcut, CutFamily, FuzzyRep, Quantale,
};
pub use order::{BoundedLattice, FinitePoset, MeetSemilattice};
