use std::fmt;

use nalgebra::{Complex, ComplexField};
use serde::{Deserialize, Serialize};

/// The ground field `K` of a computation session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Real => f.write_str("real"),
            FieldTag::Complex => f.write_str("complex"),
        }
    }
}

/// Matrix entry type: `f64` for `K = R`, `Complex<f64>` for `K = C`.
pub trait Scalar:
    ComplexField<RealField = f64>
    + faer::traits::ComplexField<Real = f64>
    + Copy
    + Send
    + Sync
    + 'static
{
    const FIELD: FieldTag;

    /// Builds a scalar from real and imaginary parts; `None` if the imaginary part
    /// is nonzero for a real field.
    fn from_parts(re: f64, im: f64) -> Option<Self>;

    fn parts(self) -> (f64, f64);
}

impl Scalar for f64 {
    const FIELD: FieldTag = FieldTag::Real;

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        (im == 0.0).then_some(re)
    }

    fn parts(self) -> (f64, f64) {
        (self, 0.0)
    }
}

impl Scalar for Complex<f64> {
    const FIELD: FieldTag = FieldTag::Complex;

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        Some(Complex::new(re, im))
    }

    fn parts(self) -> (f64, f64) {
        (self.re, self.im)
    }
}
