//! Truncated parabose Fock spaces.
//!
//! A mode configuration fixes `R` sorts, a parabose order `p`, and a
//! truncation `n_max` on the total ur number. Basis states are occupation
//! vectors over the `R x p` Green-component modes. Creation operators use the
//! integer-weighted ladder convention `b+|m> = (m+1)|m+1>`, `b|m> = |m-1>`,
//! which keeps every matrix element a Gaussian rational while preserving all
//! commutation relations; "norms" are dual-pairing values, not Hilbert norms.
//!
//! Truncation corrupts operator identities near the cutoff shell, so relation
//! checks restrict to interior columns (`n <= n_max - depth`), where every
//! evaluated identity is exact.

mod basis;
mod ops;
mod relations;

pub use basis::{predicted_basis_size, FockBasis, FockError, ModeConfig, OccVector, DEFAULT_MAX_BASIS};
pub use ops::{
    bilinear_lowering, bilinear_mixed, bilinear_raising, green_op, monomial_combination,
    monomial_state, number_op, para_op, total_number_op, vacuum,
};
pub use relations::{
    mixed_monomial_combination, physical_span, verify_green_relations, OffendingEntry,
    RelationCheck, RelationReport,
};
