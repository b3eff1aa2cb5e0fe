//! Geometry of the symmetric space `X = SL(d, K) / SU(d, K)`, modelled as
//! positive-definite Hermitian matrices of determinant one with the metric
//! `⟨X, Y⟩_p = ½ Tr(p⁻¹ X p⁻¹ Y)`.
//!
//! Every operation is a closed formula evaluated in binary64. Points carry their
//! spectral decomposition so that the congruence `p^{-1/2} q p^{-1/2}` is formed as
//! `B B†` with `B = p^{-1/2} q^{1/2}` and read off from the singular values of `B`.

mod angles;
pub(crate) mod distance;
mod types;

use thiserror::Error;

pub use angles::{
    angle, busemann_gap, busemann_gap_standard, cos_angle, dist_to_parallel_set, is_transverse,
    is_transverse_with, ray_to_parallel_bound, segment_zeta_angle, segment_zeta_angle_with, zeta0,
    zeta_angle_bound,
};
pub use distance::{
    act, d_alpha, iota_zeta_flag, iota_zeta_flag_with, midpoint, riem_distance, vec_distance,
    zeta_flag, zeta_flag_with,
};
pub use types::{CartanVector, Flag, FlagType, GroupElement, HyperplaneFlag, LineFlag, Point};

/// Default floor below which a segment is treated as not regular.
pub const REGULARITY_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("segment is not regular: gap {gap:e} <= floor {floor:e}")]
    NotRegular { gap: f64, floor: f64 },
    #[error("flags are not transverse: cos angle {cos} >= {threshold}")]
    NotTransverse { cos: f64, threshold: f64 },
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("{0} decomposition failed to converge")]
    Decomposition(&'static str),
    #[error("determinant deviates from 1 by {deviation:e} (tolerance {tolerance:e})")]
    Determinant { deviation: f64, tolerance: f64 },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("{0}")]
    Invalid(String),
}

/// Validation tolerances for points and group elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub det: f64,
    pub sym: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            det: 1e-9,
            sym: 1e-9,
        }
    }
}

fn check_dims(a: usize, b: usize) -> Result<(), GeometryError> {
    if a == b {
        Ok(())
    } else {
        Err(GeometryError::DimensionMismatch(a, b))
    }
}
