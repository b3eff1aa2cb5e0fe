//! End-to-end certification: configuration, survey, auxiliary constants,
//! assumption checks and the resulting certificate.
//!
//! A run is one-sided. `certified` means every assumption passed on a complete,
//! regular survey; any other verdict only says that this run proves nothing.

mod config;
mod example;

use std::path::Path;
use std::time::Instant;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use config::{Entry, GeneratorSpec, JobConfig};
pub use example::{
    builtin_example, example_angles, example_generator, example_translation, EXAMPLE_RELATOR,
};

use crate::cayley::{
    build_ball, geodesic_pairs, import_words, survey, words_to_pairs, Aggregate, CayleyError,
    GeneratorSet,
};
use crate::criteria::{
    search_aux, search_over, AssumptionReport, AuxParams, CriteriaError, Undistortion,
};
use crate::field::{FieldTag, Scalar};

pub const SCHEMA: &str = "anosov-cert/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CertError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

impl CertError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CertError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    NotCertifiedAtThisK,
    RegularityObstruction,
    ToleranceCollision,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Certified => "certified",
            Verdict::NotCertifiedAtThisK => "not-certified-at-this-k",
            Verdict::RegularityObstruction => "regularity-obstruction",
            Verdict::ToleranceCollision => "tolerance-collision",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Pairs enumerated from the ball of radius `2k`.
    Ball,
    /// Pairs read from a word list.
    WordList,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub angles: String,
    pub lengths: String,
}

impl Default for Units {
    fn default() -> Self {
        Self {
            angles: "radians".into(),
            lengths: "root pseudometric d_alpha".into(),
        }
    }
}

/// Words `w₁|w₂` attaining the extremal statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    pub spacing: String,
    pub eps_plus: String,
    pub eps_minus: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub route: Route,
    pub sphere_sizes: Option<Vec<usize>>,
    pub pair_count: usize,
    /// `S = min s`.
    pub spacing: f64,
    /// `ε = max ε⁺ + max ε⁻`.
    pub eps: f64,
    pub eps_plus_max: f64,
    pub eps_minus_max: f64,
    pub min_cos_eps_plus: f64,
    pub min_cos_eps_minus: f64,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedWord {
    pub word: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionSummary {
    pub count: usize,
    pub surveyed_pairs: usize,
    pub examples: Vec<FlaggedWord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub first: String,
    pub second: String,
    pub separation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxReport {
    pub t: f64,
    pub params: AuxParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub tool_version: String,
    pub config_digest: String,
    pub config: JobConfig,
    pub verdict: Verdict,
    pub units: Units,
    pub survey: Option<SurveySummary>,
    pub obstructions: Option<ObstructionSummary>,
    pub collision: Option<CollisionReport>,
    pub aux: Option<AuxReport>,
    pub assumptions: Option<AssumptionReport>,
    pub undistortion: Option<Undistortion>,
    pub diagnostic: Option<String>,
    pub wall_time_seconds: f64,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// A copy with the wall time cleared, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_seconds: 0.0,
            ..self.clone()
        }
    }
}

/// SHA-256 of the canonical config JSON, hex encoded.
pub fn config_digest(config: &JobConfig) -> String {
    hex::encode(Sha256::digest(config.canonical().as_bytes()))
}

/// `certified` exactly when nothing collided, no pair was flagged and every
/// assumption passed.
pub fn decide(collision: bool, flagged: usize, report: Option<&AssumptionReport>) -> Verdict {
    if collision {
        Verdict::ToleranceCollision
    } else if flagged > 0 {
        Verdict::RegularityObstruction
    } else if report.is_some_and(|r| r.all_pass && r.assumptions.iter().all(|a| a.pass)) {
        Verdict::Certified
    } else {
        Verdict::NotCertifiedAtThisK
    }
}

/// Runs the pipeline, reading the word list named in the config if present.
pub fn run(config: &JobConfig) -> Result<Certificate, CertError> {
    let words = match &config.word_list {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| CertError::io(path, e))?),
        None => None,
    };
    run_with_words(config, words.as_deref())
}

/// Runs the pipeline; with `words`, pairs come from that word-list text instead of
/// the ball.
pub fn run_with_words(config: &JobConfig, words: Option<&str>) -> Result<Certificate, CertError> {
    config.validate()?;
    let start = Instant::now();
    let mut cert = match config.field {
        FieldTag::Real => run_typed::<f64>(config, words)?,
        FieldTag::Complex => run_typed::<Complex<f64>>(config, words)?,
    };
    cert.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(cert)
}

struct Surveyed {
    route: Route,
    sphere_sizes: Option<Vec<usize>>,
    names: Vec<String>,
    agg: Aggregate,
}

fn survey_ball<T: Scalar>(
    gens: &GeneratorSet<T>,
    config: &JobConfig,
) -> Result<Surveyed, CayleyError> {
    let k = config.half_length;
    let table = build_ball(gens, 2 * k, config.dedup_grid)?;
    let pairs = geodesic_pairs(&table, k)?;
    let sphere = table.sphere(k);
    let mut local = vec![usize::MAX; table.len()];
    for (i, &g) in sphere.iter().enumerate() {
        local[g as usize] = i;
    }
    let elements: Vec<_> = sphere.iter().map(|&g| table.element(g as usize)).collect();
    let names: Vec<String> = sphere.iter().map(|&g| table.word(g as usize)).collect();
    let sphere_sizes = table.sphere_sizes();
    let pairs: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| (local[a as usize], local[b as usize]))
        .collect();
    drop(table);
    let agg = survey(&elements, &pairs, config.regularity_floor);
    Ok(Surveyed {
        route: Route::Ball,
        sphere_sizes: Some(sphere_sizes),
        names,
        agg,
    })
}

fn survey_words<T: Scalar>(
    gens: &GeneratorSet<T>,
    config: &JobConfig,
    text: &str,
) -> Result<Surveyed, CayleyError> {
    let words = import_words(text)?;
    let imported = words_to_pairs(gens, &words, config.half_length, config.dedup_grid)?;
    drop(words);
    let agg = survey(&imported.elements, &imported.pairs, config.regularity_floor);
    Ok(Surveyed {
        route: Route::WordList,
        sphere_sizes: None,
        names: imported.words,
        agg,
    })
}

fn run_typed<T: Scalar>(config: &JobConfig, words: Option<&str>) -> Result<Certificate, CertError> {
    let gens = config.generator_set::<T>()?;
    let mut cert = Certificate {
        schema: SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        config_digest: config_digest(config),
        config: config.clone(),
        verdict: Verdict::NotCertifiedAtThisK,
        units: Units::default(),
        survey: None,
        obstructions: None,
        collision: None,
        aux: None,
        assumptions: None,
        undistortion: None,
        diagnostic: None,
        wall_time_seconds: 0.0,
    };
    let surveyed = match words {
        None => survey_ball(&gens, config),
        Some(text) => survey_words(&gens, config, text),
    };
    let s = match surveyed {
        Ok(s) => s,
        Err(CayleyError::ToleranceCollision {
            first,
            second,
            separation,
        }) => {
            cert.diagnostic = Some(format!(
                "dedup grid {} is too coarse for this generating set",
                config.dedup_grid
            ));
            cert.collision = Some(CollisionReport {
                first,
                second,
                separation,
            });
            cert.verdict = decide(true, 0, None);
            return Ok(cert);
        }
        Err(e) => return Err(e.into()),
    };
    let pair_word = |g1: usize, g2: usize| format!("{}|{}", s.names[g1], s.names[g2]);
    if s.agg.obstruction_count > 0 {
        cert.obstructions = Some(ObstructionSummary {
            count: s.agg.obstruction_count,
            surveyed_pairs: s.agg.pair_count + s.agg.obstruction_count,
            examples: s
                .agg
                .obstructions
                .iter()
                .map(|o| FlaggedWord {
                    word: pair_word(o.g1, o.g2),
                    reason: o.reason.clone(),
                })
                .collect(),
        });
        cert.diagnostic =
            Some("some surveyed segments are not regular; their flags are undefined".into());
        cert.verdict = decide(false, s.agg.obstruction_count, None);
        return Ok(cert);
    }
    let stats = s.agg.finish(config.dim)?;
    let (min_s, plus, minus) = match (s.agg.min_s, s.agg.max_eps_plus, s.agg.max_eps_minus) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(CayleyError::EmptySurvey.into()),
    };
    cert.survey = Some(SurveySummary {
        route: s.route,
        sphere_sizes: s.sphere_sizes,
        pair_count: stats.pair_count,
        spacing: stats.spacing,
        eps: stats.eps,
        eps_plus_max: plus.value,
        eps_minus_max: minus.value,
        min_cos_eps_plus: plus.value.cos(),
        min_cos_eps_minus: minus.value.cos(),
        witnesses: Witnesses {
            spacing: pair_word(min_s.g1, min_s.g2),
            eps_plus: pair_word(plus.g1, plus.g2),
            eps_minus: pair_word(minus.g1, minus.g2),
        },
    });
    let search = match config.t {
        Some(t) => search_over(&stats, &[t]),
        None => search_aux(&stats, config.aux_grid),
    };
    cert.diagnostic = search.diagnostic.clone();
    if let Some(choice) = search.found.or(search.best) {
        cert.aux = Some(AuxReport {
            t: choice.t,
            params: choice.aux,
        });
        cert.undistortion = choice.report.undistortion;
        cert.assumptions = Some(choice.report);
    }
    cert.verdict = decide(false, 0, cert.assumptions.as_ref());
    if cert.verdict != Verdict::Certified {
        cert.undistortion = None;
    }
    Ok(cert)
}
