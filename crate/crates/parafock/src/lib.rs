//! Exact-arithmetic verification engine for truncated parabose Fock spaces.
//!
//! Everything in the operator path is computed over Gaussian rationals (complex
//! numbers with arbitrary-precision rational parts), so every check in this
//! crate is an exact identity, not a floating-point approximation. The only
//! floating-point arithmetic lives in [`cosmo`], which does order-of-magnitude
//! bookkeeping on purpose.
//!
//! Module map:
//! - [`scalar`]: the exact scalar field and rational parsing.
//! - [`sparse`]: sparse vectors/operators with ur-number grading, commutators,
//!   and exact span solving.
//! - [`dense`]: a deliberately naive dense reference engine used as an oracle
//!   against the sparse path.
//! - [`word`]: sort words shared by the tensor and Fock layers.
//! - [`ur`]: single ur states, their invariance group, and the antilinear map.
//! - [`fock`]: truncated parabose Fock bases, Green components, parabose
//!   operators, bilinears, and relation verification.
//! - [`young`]: Young diagrams, standard tableaux, standard schemes, and
//!   symmetrized tensors.
//! - [`conformal`]: the fifteen bilinear generators, the Poincare subset,
//!   closure tables, and Jacobi checks.
//! - [`states`]: truncated series states (Lorentz vacuum and the two particle
//!   states) with shell-resolved residual reports.
//! - [`cosmo`]: order-of-magnitude cosmology estimates.

pub mod conformal;
pub mod cosmo;
pub mod dense;
pub mod fock;
pub mod scalar;
pub mod sparse;
pub mod states;
pub mod ur;
pub mod word;
pub mod young;
