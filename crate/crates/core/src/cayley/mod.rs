//! Cayley-graph enumeration and the per-pair statistics of geodesic words.
//!
//! Elements are enumerated breadth first and identified up to a relative rounding
//! tolerance, so the table records true Cayley distances of the matrix group.
//! Geodesic words of length `2k` are surveyed through their halves: a word
//! `w = w₁w₂` with `|w₁| = |w₂| = k` contributes the spacing `s = d_α(m₁, m₂)` of
//! the midpoints `m₁ = midp(o, w₁⁻¹o)`, `m₂ = midp(o, w₂o)` and the angles `ε⁺`,
//! `ε⁻` at those midpoints.

mod generators;
mod index;
mod stats;
mod table;
mod words;

use thiserror::Error;

pub use generators::GeneratorSet;
pub use index::{Collision, ElementIndex, Slot, EQUALITY_TOL};
pub use stats::{
    aggregate, half_stats, pair_stats, pair_stats_all, survey, Aggregate, Extremum, FirstHalf,
    Obstruction, PairStats, SecondHalf, MAX_RECORDED_OBSTRUCTIONS,
};
pub use table::{build_ball, geodesic_pairs, ElementTable};
pub use words::{import_words, words_to_pairs, ImportedPairs};

/// Default deduplication grid.
pub const DEFAULT_GRID: f64 = 1e-6;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CayleyError {
    #[error("invalid generators: {0}")]
    Generators(String),
    #[error("unknown letter {letter:?} in word {word:?}")]
    UnknownLetter { letter: char, word: String },
    #[error("word {word:?} has length {length}, expected {expected}")]
    WrongLength {
        word: String,
        length: usize,
        expected: usize,
    },
    #[error("line {line}: invalid character {character:?}")]
    InvalidCharacter { line: usize, character: char },
    #[error("dedup grid must be positive and finite, got {0}")]
    InvalidGrid(f64),
    #[error("tolerance collision between {first:?} and {second:?} (separation {separation:e}); the dedup grid is too coarse")]
    ToleranceCollision {
        first: String,
        second: String,
        separation: f64,
    },
    #[error("table radius {radius} is smaller than {needed}")]
    RadiusTooSmall { radius: usize, needed: usize },
    #[error("empty survey")]
    EmptySurvey,
    #[error("{count} pairs have non-regular segments")]
    RegularityObstruction {
        count: usize,
        examples: Vec<(usize, usize)>,
    },
    #[error("{0}")]
    Invalid(String),
}
