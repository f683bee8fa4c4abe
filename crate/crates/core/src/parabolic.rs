//! Parabolic degree and stability of line subbundles, and the
//! Riemann–Roch and dimension counts behind the existence theorem.
//!
//! All arithmetic is exact. A point of a parabolic structure carries a weight
//! `0 < α < 1` and an opaque flag identifier; a candidate subbundle records
//! its degree and, per point, whether its fiber is the flag.

use std::io;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::series::parse_rational;

#[derive(Debug, Error)]
pub enum ParabolicError {
    #[error("weight {0} of point {1:?} is outside (0, 1)")]
    WeightOutOfRange(String, String),
    #[error("candidate has {got} match flags for {expected} points")]
    MatchCount { expected: usize, got: usize },
    #[error("stability needs at least one candidate subbundle")]
    EmptyCandidateList,
    #[error("too many marked points to enumerate match patterns ({0})")]
    TooManyPoints(usize),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn de_rational<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(serde::de::Error::custom)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicPoint {
    pub label: String,
    #[serde(serialize_with = "ser_rational", deserialize_with = "de_rational")]
    pub weight: BigRational,
    pub flag_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParabolicData")]
pub struct ParabolicData {
    pub genus: u32,
    pub points: Vec<ParabolicPoint>,
}

#[derive(Deserialize)]
struct RawParabolicData {
    genus: u32,
    #[serde(default)]
    points: Vec<ParabolicPoint>,
}

impl TryFrom<RawParabolicData> for ParabolicData {
    type Error = ParabolicError;

    fn try_from(raw: RawParabolicData) -> Result<Self, Self::Error> {
        ParabolicData::new(raw.genus, raw.points)
    }
}

impl ParabolicData {
    pub fn new(genus: u32, points: Vec<ParabolicPoint>) -> Result<Self, ParabolicError> {
        for p in &points {
            if !p.weight.is_positive() || p.weight >= BigRational::one() {
                return Err(ParabolicError::WeightOutOfRange(p.weight.to_string(), p.label.clone()));
            }
        }
        Ok(Self { genus, points })
    }

    /// No marked points.
    pub fn trivial(genus: u32) -> Self {
        Self { genus, points: Vec::new() }
    }

    /// Structure with the given weights and distinct flags.
    pub fn with_weights(genus: u32, weights: &[(i64, i64)]) -> Result<Self, ParabolicError> {
        let points = weights
            .iter()
            .enumerate()
            .map(|(i, &(n, d))| ParabolicPoint {
                label: format!("p{}", i + 1),
                weight: BigRational::new(n.into(), d.into()),
                flag_id: format!("W{}", i + 1),
            })
            .collect();
        Self::new(genus, points)
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn weight_sum(&self) -> BigRational {
        self.points.iter().map(|p| p.weight.clone()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubbundleCandidate {
    #[serde(rename = "deg_L")]
    pub deg_l: i64,
    #[serde(default)]
    pub matches: Vec<bool>,
}

impl SubbundleCandidate {
    pub fn new(deg_l: i64, matches: Vec<bool>) -> Self {
        Self { deg_l, matches }
    }
}

/// `par(L) = deg L + ½·Σ γ_i` with `γ_i = α_i` when `L_i = W_i`, else `−α_i`.
pub fn parabolic_degree(
    data: &ParabolicData,
    candidate: &SubbundleCandidate,
) -> Result<BigRational, ParabolicError> {
    if candidate.matches.len() != data.points.len() {
        return Err(ParabolicError::MatchCount {
            expected: data.points.len(),
            got: candidate.matches.len(),
        });
    }
    let gamma: BigRational = data
        .points
        .iter()
        .zip(&candidate.matches)
        .map(|(p, &m)| if m { p.weight.clone() } else { -p.weight.clone() })
        .sum();
    Ok(rat(candidate.deg_l) + gamma / rat(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Semistable,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub verdict: Stability,
    #[serde(serialize_with = "ser_rational")]
    pub max_par: BigRational,
    /// A candidate attaining `max_par` when the verdict is not `stable`.
    pub witness: Option<SubbundleCandidate>,
    #[serde(serialize_with = "ser_rationals")]
    pub degrees: Vec<BigRational>,
}

fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Stability relative to the supplied candidate family.
pub fn stability_verdict(
    data: &ParabolicData,
    candidates: &[SubbundleCandidate],
) -> Result<StabilityReport, ParabolicError> {
    let degrees = candidates
        .iter()
        .map(|c| parabolic_degree(data, c))
        .collect::<Result<Vec<_>, _>>()?;
    let (best, max_par) = degrees
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1))
        .map(|(i, p)| (i, p.clone()))
        .ok_or(ParabolicError::EmptyCandidateList)?;
    let verdict = if max_par.is_positive() {
        Stability::Unstable
    } else if max_par.is_zero() {
        Stability::Semistable
    } else {
        Stability::Stable
    };
    Ok(StabilityReport {
        verdict,
        max_par,
        witness: (verdict != Stability::Stable).then(|| candidates[best].clone()),
        degrees,
    })
}

/// Candidates for a split bundle on the sphere: every degree in
/// `min_deg..=max_deg` with every match pattern.
pub fn enumerate_candidates(
    data: &ParabolicData,
    min_deg: i64,
    max_deg: i64,
) -> Result<Vec<SubbundleCandidate>, ParabolicError> {
    let k = data.points.len();
    if k > 16 {
        return Err(ParabolicError::TooManyPoints(k));
    }
    let mut out = Vec::new();
    for deg in min_deg..=max_deg {
        for mask in 0u32..(1 << k) {
            let matches = (0..k).map(|i| mask & (1 << i) != 0).collect();
            out.push(SubbundleCandidate::new(deg, matches));
        }
    }
    Ok(out)
}

/// Section counts and vanishing thresholds for a line bundle `L` of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiemannRoch {
    #[serde(rename = "h0_L")]
    pub h0_l: i64,
    #[serde(rename = "h0_L2")]
    pub h0_l2: i64,
    #[serde(rename = "h0_EL")]
    pub h0_el: i64,
    /// `d ≥ ½d_P + 2g − 1`.
    pub h1_vanishes: bool,
    /// `d ≥ ½d_P + 2g`.
    pub globally_generated: bool,
}

/// `d_P` enters only through the `½d_P` thresholds, as an exact rational.
pub fn riemann_roch_counts(g: i64, d: i64, d_p: &BigRational) -> RiemannRoch {
    let half = d_p / rat(2);
    let dr = rat(d);
    RiemannRoch {
        h0_l: d - g + 1,
        h0_l2: 2 * d - g + 1,
        h0_el: 2 * d - 2 * g + 2,
        h1_vanishes: dr >= &half + rat(2 * g - 1),
        globally_generated: dr >= &half + rat(2 * g),
    }
}

/// Every count of the existence theorem for `(g, d, d_P)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub g: i64,
    pub d: i64,
    /// Number of marked points, used in the integer bounds.
    pub point_count: i64,
    /// `Σα_i`, used in the `½d_P` thresholds.
    #[serde(serialize_with = "ser_rational")]
    pub weight_sum: BigRational,
    pub required_d: i64,
    pub hypothesis_met: bool,
    #[serde(rename = "h0_L")]
    pub h0_l: i64,
    #[serde(rename = "h0_L2")]
    pub h0_l2: i64,
    #[serde(rename = "h0_EL")]
    pub h0_el: i64,
    pub h1_vanishes: bool,
    pub globally_generated: bool,
    pub dim_grassmannian: i64,
    #[serde(rename = "dim_Q")]
    pub dim_q: i64,
    #[serde(rename = "dim_F_lower")]
    pub dim_f_lower: i64,
    #[serde(rename = "dim_Gspec_lower")]
    pub dim_gspec_lower: i64,
    pub rank_r: i64,
    #[serde(rename = "dim_M_lower")]
    pub dim_m_lower: i64,
}

/// Bounds with separate point count and weight sum.
pub fn existence_bounds_split(g: i64, d: i64, point_count: i64, weight_sum: BigRational) -> BoundsReport {
    let rr = riemann_roch_counts(g, d, &weight_sum);
    let required_d = 7 * g - 3 + point_count;
    BoundsReport {
        g,
        d,
        point_count,
        weight_sum,
        required_d,
        hypothesis_met: d >= required_d,
        h0_l: rr.h0_l,
        h0_l2: rr.h0_l2,
        h0_el: rr.h0_el,
        h1_vanishes: rr.h1_vanishes,
        globally_generated: rr.globally_generated,
        dim_grassmannian: 4 * (d - g),
        dim_q: d - g,
        dim_f_lower: 3 * d - 4 * g + 4,
        dim_gspec_lower: 3 * d - 4 * g,
        rank_r: 2 * d + 3 * g - 3 + point_count,
        dim_m_lower: d - 7 * (g - 1) - point_count - 4,
    }
}

/// Bounds for an integer `d_P` (point count and weight sum both `d_P`).
pub fn existence_bounds(g: i64, d: i64, d_p: i64) -> BoundsReport {
    existence_bounds_split(g, d, d_p, rat(d_p))
}

pub fn existence_bounds_for(data: &ParabolicData, d: i64) -> BoundsReport {
    existence_bounds_split(i64::from(data.genus), d, data.point_count() as i64, data.weight_sum())
}

/// Reports for every `g ≤ g_max`, `d ≤ d_max`, `d_P ≤ dp_max`, ordered by `(g, d, d_P)`.
pub fn bounds_grid(g_max: i64, d_max: i64, dp_max: i64) -> Vec<BoundsReport> {
    let mut out = Vec::new();
    for g in 0..=g_max {
        for d in 0..=d_max {
            for dp in 0..=dp_max {
                out.push(existence_bounds(g, d, dp));
            }
        }
    }
    out
}

pub fn write_bounds_csv<W: io::Write>(rows: &[BoundsReport], out: W) -> Result<(), ParabolicError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Stability input: a parabolic structure and a candidate family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityInput {
    #[serde(flatten)]
    pub data: ParabolicData,
    pub candidates: Vec<SubbundleCandidate>,
}
