//! The five assumptions under which an `S`-spaced, `ε`-straight sequence is
//! `d_α`-undistorted, plus derivation and search of the auxiliary constants.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symspace::zeta0;

/// Slack granted to the non-strict inequalities, absorbing the rounding of the
/// exact inversions performed by [`derive_aux`].
pub const INEQUALITY_SLACK: f64 = 1e-12;

/// Default number of interior grid points for [`search_aux`].
pub const DEFAULT_AUX_GRID: usize = 64;

/// The interpolation parameter used in the worked example, tried first.
pub const PREFERRED_T: f64 = 0.3;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CriteriaError {
    #[error("eps_aux = {eps_aux} must exceed eps = {eps}")]
    InvalidAux { eps_aux: f64, eps: f64 },
    #[error("straightness defect eps = {eps} leaves no admissible auxiliary constants (eps_max = {eps_max}, t = {t})")]
    EpsTooLarge { eps: f64, eps_max: f64, t: f64 },
    #[error("invalid statistics: {0}")]
    InvalidStats(String),
    #[error("interpolation parameter t = {0} must lie in (0, 1)")]
    InvalidT(f64),
}

/// Spacing and straightness of a survey.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StraightSpacedStats {
    pub dim: usize,
    /// Straightness defect, radians.
    pub eps: f64,
    /// Minimal `d_α` spacing.
    pub spacing: f64,
    pub pair_count: usize,
}

impl StraightSpacedStats {
    pub fn new(
        dim: usize,
        eps: f64,
        spacing: f64,
        pair_count: usize,
    ) -> Result<Self, CriteriaError> {
        if dim < 2 {
            return Err(CriteriaError::InvalidStats(format!("dimension {dim} < 2")));
        }
        if !(eps >= 0.0) || !(spacing >= 0.0) {
            return Err(CriteriaError::InvalidStats(format!(
                "need eps >= 0 and S >= 0, got {eps}, {spacing}"
            )));
        }
        Ok(Self {
            dim,
            eps,
            spacing,
            pair_count,
        })
    }
}

/// Auxiliary constants `(ε_aux, δ₁, δ₂, δ₃, δ₄)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxParams {
    pub eps_aux: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub delta4: f64,
}

/// Outcome of one assumption. `margin` is signed: positive means satisfied with
/// room to spare.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Undistortion {
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub assumptions: Vec<AssumptionCheck>,
    pub all_pass: bool,
    pub undistortion: Option<Undistortion>,
}

impl AssumptionReport {
    pub fn min_margin(&self) -> f64 {
        self.assumptions
            .iter()
            .map(|a| a.margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn passes(&self) -> Vec<bool> {
        self.assumptions.iter().map(|a| a.pass).collect()
    }
}

/// `ε_max = arccos(−1/(d−1))`.
pub fn eps_max(dim: usize) -> f64 {
    (-1.0 / (dim as f64 - 1.0)).acos()
}

fn sech_sq(x: f64) -> f64 {
    let c = x.cosh();
    1.0 / (c * c)
}

/// `(1 − d) cos(angle) + d sech²(delta)`.
fn angle_distance_lhs(dim: usize, angle: f64, delta: f64) -> f64 {
    let d = dim as f64;
    (1.0 - d) * angle.cos() + d * sech_sq(delta)
}

pub fn verify_assumptions(
    stats: &StraightSpacedStats,
    aux: &AuxParams,
) -> Result<AssumptionReport, CriteriaError> {
    let (eps, s, dim) = (stats.eps, stats.spacing, stats.dim);
    if !(aux.eps_aux > eps) {
        return Err(CriteriaError::InvalidAux {
            eps_aux: aux.eps_aux,
            eps,
        });
    }
    let d = dim as f64;
    let AuxParams {
        eps_aux,
        delta1,
        delta2,
        delta3,
        delta4,
    } = *aux;

    // 1: both angles stay below ε_max; arguments outside [0, π) fail outright.
    let a1 = {
        let threshold = -1.0 / (d - 1.0);
        let straight_arg = 2.0 * eps_aux - eps;
        let lipschitz_arg = if s > delta4 {
            eps_aux + delta4 * zeta0(dim) / (s - delta4).sinh()
        } else {
            f64::INFINITY
        };
        let in_range = |x: f64| (0.0..PI).contains(&x);
        let value = if in_range(lipschitz_arg) && in_range(straight_arg) {
            lipschitz_arg.cos().min(straight_arg.cos())
        } else {
            -1.0
        };
        let margin = value - threshold;
        let pass = in_range(lipschitz_arg) && in_range(straight_arg) && margin > 0.0;
        check("A1 antipodality", value, threshold, margin, pass)
    };

    let a2 = {
        let value = angle_distance_lhs(dim, eps_aux, delta1).max(angle_distance_lhs(
            dim,
            2.0 * eps_aux - eps,
            delta3,
        ));
        leq("A2 angle to distance", value, 1.0)
    };

    let a3 = leq(
        "A3 distance to angle",
        angle_distance_lhs(dim, eps_aux - eps, delta2),
        1.0,
    );

    let a4 = leq(
        "A4 spacing to distance",
        delta1.exp_m1() * (-s).exp(),
        delta2,
    );

    let a5 = {
        let needed = (2.0 * delta3).min(delta3 + delta3.exp_m1() * (-s).exp());
        let cover_margin = delta4 - needed;
        let spacing_margin = s - 2.0 * delta4;
        let pass = cover_margin >= -INEQUALITY_SLACK && spacing_margin > 0.0;
        let (value, threshold) = if cover_margin <= spacing_margin {
            (delta4, needed)
        } else {
            (s, 2.0 * delta4)
        };
        check(
            "A5 sufficient spacing",
            value,
            threshold,
            cover_margin.min(spacing_margin),
            pass,
        )
    };

    let assumptions = vec![a1, a2, a3, a4, a5];
    let all_pass = assumptions.iter().all(|a| a.pass);
    let undistortion = all_pass.then_some(Undistortion {
        c1: s - 2.0 * delta4,
        c2: 2.0 * delta4,
    });
    Ok(AssumptionReport {
        assumptions,
        all_pass,
        undistortion,
    })
}

fn check(name: &str, value: f64, threshold: f64, margin: f64, pass: bool) -> AssumptionCheck {
    AssumptionCheck {
        name: name.to_string(),
        value,
        threshold,
        margin,
        pass,
    }
}

fn leq(name: &str, value: f64, threshold: f64) -> AssumptionCheck {
    let margin = threshold - value;
    check(name, value, threshold, margin, margin >= -INEQUALITY_SLACK)
}

/// `asech(√((1 − (1 − d) cos(angle)) / d))`, the largest `δ` with
/// `(1 − d) cos(angle) + d sech²(δ) ≤ 1`.
fn delta_for_angle(dim: usize, angle: f64) -> Option<f64> {
    let d = dim as f64;
    let arg = (1.0 - (1.0 - d) * angle.cos()) / d;
    if !(arg > 0.0) || !(arg <= 1.0 + 1e-15) {
        return None;
    }
    let x = arg.min(1.0).sqrt();
    Some((1.0 - x * x).sqrt().atanh())
}

/// Auxiliary constants at `ε_aux = (1 − t) ε + t ε_max`.
pub fn derive_aux(stats: &StraightSpacedStats, t: f64) -> Result<AuxParams, CriteriaError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(CriteriaError::InvalidT(t));
    }
    let (eps, dim) = (stats.eps, stats.dim);
    let eps_max = eps_max(dim);
    let too_large = || CriteriaError::EpsTooLarge { eps, eps_max, t };
    if !(eps < eps_max) {
        return Err(too_large());
    }
    let eps_aux = (1.0 - t) * eps + t * eps_max;
    let straight = 2.0 * eps_aux - eps;
    if !(straight < eps_max) {
        return Err(too_large());
    }
    let delta1 = delta_for_angle(dim, eps_aux).ok_or_else(too_large)?;
    let delta2 = delta_for_angle(dim, eps_aux - eps).ok_or_else(too_large)?;
    let delta3 = delta_for_angle(dim, straight).ok_or_else(too_large)?;
    let delta4 = delta3 + delta3.exp_m1() * (-stats.spacing).exp();
    Ok(AuxParams {
        eps_aux,
        delta1,
        delta2,
        delta3,
        delta4,
    })
}

/// A passing (or best failing) configuration found by [`search_aux`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxChoice {
    pub t: f64,
    pub aux: AuxParams,
    pub report: AssumptionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxSearch {
    /// Passing configuration, if any.
    pub found: Option<AuxChoice>,
    /// Best-margin configuration among evaluated ones (equal to `found` on success).
    pub best: Option<AuxChoice>,
    /// Why no configuration could even be evaluated, if applicable.
    pub diagnostic: Option<String>,
}

/// Tries `t = 0.3` first, then the grid `i / (grid + 1)`; on a grid scan, returns
/// the passing configuration with the largest minimal margin.
pub fn search_aux(stats: &StraightSpacedStats, grid: usize) -> AuxSearch {
    let mut ts = vec![PREFERRED_T];
    ts.extend((1..=grid.max(1)).map(|i| i as f64 / (grid.max(1) + 1) as f64));
    search_over(stats, &ts)
}

/// Evaluates exactly the given values of `t` (first passing preferred value wins
/// when `ts[0]` passes).
pub fn search_over(stats: &StraightSpacedStats, ts: &[f64]) -> AuxSearch {
    let mut best: Option<AuxChoice> = None;
    let mut found: Option<AuxChoice> = None;
    let mut diagnostic = None;
    for (i, &t) in ts.iter().enumerate() {
        let aux = match derive_aux(stats, t) {
            Ok(aux) => aux,
            Err(e) => {
                diagnostic.get_or_insert_with(|| e.to_string());
                continue;
            }
        };
        let Ok(report) = verify_assumptions(stats, &aux) else {
            continue;
        };
        let choice = AuxChoice { t, aux, report };
        if choice.report.all_pass {
            if i == 0 {
                return AuxSearch {
                    found: Some(choice.clone()),
                    best: Some(choice),
                    diagnostic: None,
                };
            }
            if found
                .as_ref()
                .is_none_or(|f| choice.report.min_margin() > f.report.min_margin())
            {
                found = Some(choice.clone());
            }
        }
        if best.as_ref().is_none_or(|b| better(&choice, b)) {
            best = Some(choice);
        }
    }
    if found.is_some() {
        best = found.clone();
        diagnostic = None;
    } else if best.is_some() {
        diagnostic = Some("no auxiliary parameters satisfy all assumptions".into());
    }
    AuxSearch {
        found,
        best,
        diagnostic,
    }
}

fn better(a: &AuxChoice, b: &AuxChoice) -> bool {
    let pa = a.report.assumptions.iter().filter(|x| x.pass).count();
    let pb = b.report.assumptions.iter().filter(|x| x.pass).count();
    pa > pb || (pa == pb && a.report.min_margin() > b.report.min_margin())
}
