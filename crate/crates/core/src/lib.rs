//! Numerical certification of projective Anosov subgroups of `SL(d, R)` and
//! `SL(d, C)`.
//!
//! The pipeline enumerates geodesic word pairs in the Cayley graph of a finitely
//! generated matrix group, measures how spaced (in the root pseudometric `d_α`) and
//! how straight (in ζ-angles) the associated midpoint sequences are, and checks a
//! finite set of inequalities which guarantee that every orbit of a word geodesic is
//! `d_α`-undistorted.
//!
//! Modules:
//! - [`symspace`]: exact-formula geometry of the symmetric space of `SL(d, K)`.
//! - [`criteria`]: the five assumptions, auxiliary parameter derivation and search.
//! - [`cayley`]: ball enumeration, geodesic pairs, per-pair statistics.
//! - [`certifier`]: job configuration, orchestration, certificates.
//! - [`cli`]: the `anosov-cert` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cayley;
pub mod certifier;
pub mod cli;
pub mod criteria;
pub mod field;
pub mod linalg;
pub mod symspace;

pub use field::{FieldTag, Scalar};
