//! Exact computation of the K-theory of quantum lens spaces.
//!
//! The library has two halves that meet in [`gysin`]:
//!
//! * a symbolic half — [`qcoeff`] implements exact arithmetic in the
//!   coefficient ring (rationals and Laurent polynomials in `s` with
//!   `s^2 = q`), and [`ncalg`] implements the coordinate *-algebra of the
//!   odd quantum sphere by term rewriting, enough to verify the isometry,
//!   projection, q-trace, partial-isometry and principality identities that
//!   underpin the construction;
//! * an integral half — [`kring`] models `K_0` of quantum projective space
//!   as the truncated polynomial ring `Z[u]/u^{n+1}` together with its
//!   Fredholm-module pairings, and [`intlin`] provides Smith normal form
//!   with unimodular certificates, kernels, image membership and cokernel
//!   element orders over the integers.
//!
//! [`gysin`] assembles the pipeline: the Euler class of the line bundle of
//! degree `-r` acts on `Z[u]/u^{n+1}` by a strictly lower triangular integer
//! matrix; its kernel is `K_1` of the lens space and its cokernel is `K_0`,
//! with torsion generators given by explicit integer combinations of powers
//! of the pulled-back Euler class.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod gysin;
pub mod intlin;
pub mod kring;
pub mod ncalg;
pub mod qcoeff;

pub use qcoeff::{HalfLaurent, Rational};
