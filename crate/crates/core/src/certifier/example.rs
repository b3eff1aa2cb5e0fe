use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::config::{Entry, GeneratorSpec, JobConfig};
use crate::cayley::DEFAULT_GRID;
use crate::criteria::DEFAULT_AUX_GRID;
use crate::field::FieldTag;
use crate::symspace::REGULARITY_FLOOR;

/// Relator of the genus-two surface group generated by the example.
pub const EXAMPLE_RELATOR: &str = "adCbADcB";

/// Translation length `T = 2 arccosh(cot(π/8))`.
pub fn example_translation() -> f64 {
    2.0 * (1.0 / (PI / 8.0).tan()).acosh()
}

/// Rotation angles of the generators `a, b, c, d`.
pub fn example_angles() -> [f64; 4] {
    [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0]
}

/// `R(θ) H(T) R(−θ)` with `R` the rotation in the first two coordinates and `H`
/// the hyperbolic rotation in the first and third.
pub fn example_generator(theta: f64, t: f64) -> DMatrix<f64> {
    let r = |a: f64| {
        DMatrix::from_row_slice(
            3,
            3,
            &[a.cos(), a.sin(), 0.0, -a.sin(), a.cos(), 0.0, 0.0, 0.0, 1.0],
        )
    };
    let h = DMatrix::from_row_slice(
        3,
        3,
        &[
            t.cosh(),
            0.0,
            t.sinh(),
            0.0,
            1.0,
            0.0,
            t.sinh(),
            0.0,
            t.cosh(),
        ],
    );
    r(theta) * h * r(-theta)
}

/// The genus-two surface group in `SL(3, R)` surveyed with `k = 4`.
pub fn builtin_example() -> JobConfig {
    let t = example_translation();
    let generators = ["a", "b", "c", "d"]
        .iter()
        .zip(example_angles())
        .map(|(name, theta)| {
            let m = example_generator(theta, t);
            GeneratorSpec {
                name: name.to_string(),
                matrix: m
                    .row_iter()
                    .map(|row| row.iter().map(|&x| Entry::Real(x)).collect())
                    .collect(),
            }
        })
        .collect();
    JobConfig {
        field: FieldTag::Real,
        dim: 3,
        generators,
        half_length: 4,
        dedup_grid: DEFAULT_GRID,
        tolerance: 1e-9,
        aux_grid: DEFAULT_AUX_GRID,
        regularity_floor: REGULARITY_FLOOR,
        word_list: None,
        t: None,
        relators: vec![EXAMPLE_RELATOR.to_string()],
    }
}
