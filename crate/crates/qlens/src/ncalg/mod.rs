//! The coordinate *-algebra of the odd quantum sphere, by term rewriting.
//!
//! Elements are finite linear combinations of normal-form words in the
//! generators `z_0, ..., z_n` and their adjoints, with coefficients in the
//! exact Laurent ring of [`crate::qcoeff`]. The defining relations are
//! oriented into a rewrite system whose fixpoints are the normal words;
//! two elements are equal exactly when their normal forms coincide.
//!
//! On top of the plain algebra, the frame layer builds the isometry column
//! vectors whose entries span the line bundles, the associated projections,
//! the connecting partial isometries, and the principality witness — all
//! with square roots of q-multinomials handled by an exact pairing
//! protocol (see [`ScaledMatrix`]).

mod frames;
mod poly;
mod rewrite;
mod word;

pub use frames::{
    build_projection, build_psi, frame_dimension, hopf_galois_witness, multi_indices,
    verify_isometry, verify_partial_isometry, verify_projection, verify_qtrace, ScaledMatrix,
};
pub use poly::NCPoly;
pub use rewrite::RewriteBudget;
pub use word::{Generator, Word};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("rewrite budget of {limit} rule applications exhausted")]
    BudgetExhausted { limit: u64 },
    #[error("ambient generator index bound mismatch: {left} vs {right}")]
    AmbientMismatch { left: u8, right: u8 },
    #[error("matrix shapes incompatible: {0}")]
    ShapeMismatch(String),
    #[error("product would require an unpaired square-root weight; unsupported")]
    WeightMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
