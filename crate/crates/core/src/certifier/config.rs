use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::CertError;
use crate::cayley::{GeneratorSet, DEFAULT_GRID};
use crate::criteria::DEFAULT_AUX_GRID;
use crate::field::{FieldTag, Scalar};
use crate::symspace::{GroupElement, REGULARITY_FLOOR};

/// A matrix entry: a number, or `[re, im]` for complex entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    pub fn parts(self) -> (f64, f64) {
        match self {
            Entry::Real(x) => (x, 0.0),
            Entry::Complex([re, im]) => (re, im),
        }
    }
}

/// One named generator; the matrix is given row by row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub matrix: Vec<Vec<Entry>>,
}

fn default_grid() -> f64 {
    DEFAULT_GRID
}

fn default_tolerance() -> f64 {
    1e-9
}

fn default_aux_grid() -> usize {
    DEFAULT_AUX_GRID
}

fn default_floor() -> f64 {
    REGULARITY_FLOOR
}

/// Input of a certification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub field: FieldTag,
    pub dim: usize,
    pub generators: Vec<GeneratorSpec>,
    /// Words of length `2k` are surveyed.
    pub half_length: usize,
    #[serde(default = "default_grid")]
    pub dedup_grid: f64,
    /// Accepted deviation `|det g − 1|`.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_aux_grid")]
    pub aux_grid: usize,
    #[serde(default = "default_floor")]
    pub regularity_floor: f64,
    /// Geodesic words of length `2k`, one per line, used instead of enumeration.
    #[serde(default)]
    pub word_list: Option<PathBuf>,
    /// Fixed interpolation parameter for the auxiliary constants.
    #[serde(default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub relators: Vec<String>,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, CertError> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| CertError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CertError> {
        let text = std::fs::read_to_string(path).map_err(|e| CertError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Compact JSON of the parsed config; the digest is taken over these bytes.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CertError> {
        let bad = |msg: String| Err(CertError::Config(msg));
        if self.dim < 2 {
            return bad(format!("dim must be at least 2, got {}", self.dim));
        }
        if self.half_length < 1 {
            return bad("half_length must be at least 1".into());
        }
        if self.generators.is_empty() {
            return bad("generator list is empty".into());
        }
        if !(self.dedup_grid > 0.0 && self.dedup_grid.is_finite()) {
            return bad(format!(
                "dedup_grid must be positive, got {}",
                self.dedup_grid
            ));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            ));
        }
        if !(self.regularity_floor >= 0.0 && self.regularity_floor.is_finite()) {
            return bad(format!(
                "regularity_floor must be nonnegative, got {}",
                self.regularity_floor
            ));
        }
        if self.aux_grid == 0 {
            return bad("aux_grid must be at least 1".into());
        }
        if let Some(t) = self.t {
            if !(t > 0.0 && t < 1.0) {
                return bad(format!("t must lie in (0, 1), got {t}"));
            }
        }
        for g in &self.generators {
            let mut chars = g.name.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => {}
                _ => {
                    return bad(format!(
                        "generator name {:?} must be a single letter a-z",
                        g.name
                    ))
                }
            }
            if g.matrix.len() != self.dim || g.matrix.iter().any(|row| row.len() != self.dim) {
                return bad(format!(
                    "generator {:?} is not {}x{}",
                    g.name, self.dim, self.dim
                ));
            }
            for e in g.matrix.iter().flatten() {
                let (re, im) = e.parts();
                if !re.is_finite() || !im.is_finite() {
                    return bad(format!("generator {:?} has a non-finite entry", g.name));
                }
                if self.field == FieldTag::Real && matches!(e, Entry::Complex(_)) {
                    return bad(format!(
                        "generator {:?} has a complex entry in a real config",
                        g.name
                    ));
                }
            }
        }
        Ok(())
    }

    /// The generating set over the scalar type matching `field`.
    pub fn generator_set<T: Scalar>(&self) -> Result<GeneratorSet<T>, CertError> {
        if T::FIELD != self.field {
            return Err(CertError::Config(format!(
                "config field is {}, requested {}",
                self.field,
                T::FIELD
            )));
        }
        let mut named = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let m = DMatrix::from_fn(self.dim, self.dim, |i, j| {
                let (re, im) = g.matrix[i][j].parts();
                T::from_parts(re, im).expect("validated entries")
            });
            let element = GroupElement::new(m, self.tolerance)
                .map_err(|e| CertError::Config(format!("generator {:?}: {e}", g.name)))?;
            named.push((g.name.chars().next().expect("validated name"), element));
        }
        Ok(GeneratorSet::new(named, self.relators.clone())?)
    }
}
