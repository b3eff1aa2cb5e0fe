use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CayleyError;
use crate::criteria::StraightSpacedStats;
use crate::field::Scalar;
use crate::symspace::distance::{congruence, iota_zeta_from, reverse_iota_zeta_from, zeta_from};
use crate::symspace::{
    angle, midpoint, Flag, GeometryError, GroupElement, HyperplaneFlag, LineFlag, Point,
};

/// Flagged pairs kept verbatim in an [`Aggregate`]; the rest are only counted.
pub const MAX_RECORDED_OBSTRUCTIONS: usize = 64;

/// Spacing and straightness of one pair `(g1, g2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairStats {
    pub g1: usize,
    pub g2: usize,
    pub s: f64,
    pub eps_plus: f64,
    pub eps_minus: f64,
}

/// Data of `g` used when it is the first half of a word: `m₁ = midp(o, g⁻¹o)` and
/// the line `ζ(m₁ o)`.
#[derive(Debug, Clone)]
pub struct FirstHalf<T: Scalar> {
    m1: Point<T>,
    toward_o: LineFlag<T>,
}

/// Data of `g` used when it is the second half: `m₂ = midp(o, g o)` and the
/// hyperplane `ιζ(m₂ o)`.
#[derive(Debug, Clone)]
pub struct SecondHalf<T: Scalar> {
    m2: Point<T>,
    toward_o: HyperplaneFlag<T>,
}

impl<T: Scalar> FirstHalf<T> {
    pub fn new(g: &GroupElement<T>, floor: f64) -> Result<Self, GeometryError> {
        let o = Point::identity(g.dim());
        let m1 = midpoint(&o, &Point::orbit(&g.inverse()?)?)?;
        let toward_o = zeta_from(&m1, &congruence(&m1, &o)?, floor)?;
        Ok(Self { m1, toward_o })
    }

    pub fn midpoint(&self) -> &Point<T> {
        &self.m1
    }
}

impl<T: Scalar> SecondHalf<T> {
    pub fn new(g: &GroupElement<T>, floor: f64) -> Result<Self, GeometryError> {
        let o = Point::identity(g.dim());
        let m2 = midpoint(&o, &Point::orbit(g)?)?;
        let toward_o = iota_zeta_from(&m2, &congruence(&m2, &o)?, floor)?;
        Ok(Self { m2, toward_o })
    }

    pub fn midpoint(&self) -> &Point<T> {
        &self.m2
    }
}

/// `(s, ε⁺, ε⁻)` from precomputed halves.
pub fn half_stats<T: Scalar>(
    first: &FirstHalf<T>,
    second: &SecondHalf<T>,
    floor: f64,
) -> Result<(f64, f64, f64), GeometryError> {
    let c = congruence(&first.m1, &second.m2)?;
    let s = c.a.first_gap();
    let forward = zeta_from(&first.m1, &c, floor)?;
    let backward = reverse_iota_zeta_from(&second.m2, &c, floor)?;
    let eps_plus = angle(
        &first.m1,
        &Flag::Line(first.toward_o.clone()),
        &Flag::Line(forward),
    )?;
    let eps_minus = angle(
        &second.m2,
        &Flag::Hyperplane(second.toward_o.clone()),
        &Flag::Hyperplane(backward),
    )?;
    Ok((s, eps_plus, eps_minus))
}

/// Statistics of the word `w = w₁w₂` with `w₁ = g1`, `w₂ = g2`.
pub fn pair_stats<T: Scalar>(
    g1: &GroupElement<T>,
    g2: &GroupElement<T>,
    floor: f64,
) -> Result<PairStats, GeometryError> {
    let (s, eps_plus, eps_minus) = half_stats(
        &FirstHalf::new(g1, floor)?,
        &SecondHalf::new(g2, floor)?,
        floor,
    )?;
    Ok(PairStats {
        g1: 0,
        g2: 1,
        s,
        eps_plus,
        eps_minus,
    })
}

/// A pair whose segments are not regular enough to define its flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstruction {
    pub g1: usize,
    pub g2: usize,
    pub reason: String,
}

/// An extremal value together with the pair attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub g1: usize,
    pub g2: usize,
}

impl Extremum {
    fn take(slot: &mut Option<Self>, cand: Self, better: fn(f64, f64) -> bool) {
        match slot {
            None => *slot = Some(cand),
            Some(cur) => {
                let tie = cand.value == cur.value && (cand.g1, cand.g2) < (cur.g1, cur.g2);
                if better(cand.value, cur.value) || tie {
                    *slot = Some(cand);
                }
            }
        }
    }
}

/// Order-independent min/max reduction over pair statistics. Ties are broken by
/// the smallest pair of element indices, so the result does not depend on the
/// order in which pairs are pushed or merged.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub pair_count: usize,
    pub min_s: Option<Extremum>,
    pub max_eps_plus: Option<Extremum>,
    pub max_eps_minus: Option<Extremum>,
    pub obstruction_count: usize,
    pub obstructions: Vec<Obstruction>,
}

fn lt(a: f64, b: f64) -> bool {
    a < b
}

fn gt(a: f64, b: f64) -> bool {
    a > b
}

impl Aggregate {
    pub fn push(&mut self, p: &PairStats) {
        self.pair_count += 1;
        Extremum::take(
            &mut self.min_s,
            Extremum {
                value: p.s,
                g1: p.g1,
                g2: p.g2,
            },
            lt,
        );
        Extremum::take(
            &mut self.max_eps_plus,
            Extremum {
                value: p.eps_plus,
                g1: p.g1,
                g2: p.g2,
            },
            gt,
        );
        Extremum::take(
            &mut self.max_eps_minus,
            Extremum {
                value: p.eps_minus,
                g1: p.g1,
                g2: p.g2,
            },
            gt,
        );
    }

    pub fn flag(&mut self, o: Obstruction) {
        self.obstruction_count += 1;
        self.obstructions.push(o);
        self.trim();
    }

    fn trim(&mut self) {
        self.obstructions.sort_by_key(|o| (o.g1, o.g2));
        self.obstructions.truncate(MAX_RECORDED_OBSTRUCTIONS);
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.pair_count += other.pair_count;
        if let Some(e) = other.min_s {
            Extremum::take(&mut self.min_s, e, lt);
        }
        if let Some(e) = other.max_eps_plus {
            Extremum::take(&mut self.max_eps_plus, e, gt);
        }
        if let Some(e) = other.max_eps_minus {
            Extremum::take(&mut self.max_eps_minus, e, gt);
        }
        self.obstruction_count += other.obstruction_count;
        self.obstructions.extend(other.obstructions);
        self.trim();
        self
    }

    /// `S = min s`, `ε = max ε⁺ + max ε⁻`.
    pub fn finish(&self, dim: usize) -> Result<StraightSpacedStats, CayleyError> {
        if self.obstruction_count > 0 {
            return Err(CayleyError::RegularityObstruction {
                count: self.obstruction_count,
                examples: self.obstructions.iter().map(|o| (o.g1, o.g2)).collect(),
            });
        }
        match (self.min_s, self.max_eps_plus, self.max_eps_minus) {
            (Some(s), Some(p), Some(m)) => {
                StraightSpacedStats::new(dim, p.value + m.value, s.value, self.pair_count)
                    .map_err(|e| CayleyError::Invalid(e.to_string()))
            }
            _ => Err(CayleyError::EmptySurvey),
        }
    }
}

/// Aggregates already computed pair statistics.
pub fn aggregate<'a>(
    pairs: impl IntoIterator<Item = &'a PairStats>,
    dim: usize,
) -> Result<StraightSpacedStats, CayleyError> {
    let mut agg = Aggregate::default();
    for p in pairs {
        agg.push(p);
    }
    agg.finish(dim)
}

/// Surveys `pairs` of indices into `elements`.
///
/// Each referenced element is prepared once in each role; the pair statistics
/// are then evaluated as a parallel map and reduced with [`Aggregate::merge`].
/// Non-regular segments are recorded as obstructions.
pub fn survey<T: Scalar>(
    elements: &[GroupElement<T>],
    pairs: &[(usize, usize)],
    floor: f64,
) -> Aggregate {
    let mut used_first = vec![false; elements.len()];
    let mut used_second = vec![false; elements.len()];
    for &(a, b) in pairs {
        used_first[a] = true;
        used_second[b] = true;
    }
    let firsts: Vec<Option<Result<FirstHalf<T>, String>>> = elements
        .par_iter()
        .zip(&used_first)
        .map(|(g, &u)| u.then(|| FirstHalf::new(g, floor).map_err(|e| format!("first half: {e}"))))
        .collect();
    let seconds: Vec<Option<Result<SecondHalf<T>, String>>> = elements
        .par_iter()
        .zip(&used_second)
        .map(|(g, &u)| {
            u.then(|| SecondHalf::new(g, floor).map_err(|e| format!("second half: {e}")))
        })
        .collect();

    pairs
        .par_iter()
        .fold(Aggregate::default, |mut agg, &(a, b)| {
            let first = firsts[a].as_ref().expect("prepared");
            let second = seconds[b].as_ref().expect("prepared");
            let outcome = match (first, second) {
                (Ok(f), Ok(s)) => half_stats(f, s, floor).map_err(|e| e.to_string()),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            match outcome {
                Ok((s, eps_plus, eps_minus)) => agg.push(&PairStats {
                    g1: a,
                    g2: b,
                    s,
                    eps_plus,
                    eps_minus,
                }),
                Err(reason) => agg.flag(Obstruction {
                    g1: a,
                    g2: b,
                    reason,
                }),
            }
            agg
        })
        .reduce(Aggregate::default, Aggregate::merge)
}

/// Per-pair statistics for every pair, in input order.
pub fn pair_stats_all<T: Scalar>(
    elements: &[GroupElement<T>],
    pairs: &[(usize, usize)],
    floor: f64,
) -> Vec<Result<PairStats, GeometryError>> {
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut p = pair_stats(&elements[a], &elements[b], floor)?;
            p.g1 = a;
            p.g2 = b;
            Ok(p)
        })
        .collect()
}
