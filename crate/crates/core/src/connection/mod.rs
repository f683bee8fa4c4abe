//! Higgs fields, flat connections `∇ = d + Θ`, parallel transport and the
//! non-abelian period problem.
//!
//! Sign convention: flat sections are annihilated by `∇ = d + Θ`, so
//! transport solves `dY = −Θ·Y`. The model end `∇_α = d − Γ_α dz/z` is the
//! field `Θ = −Γ_α dz/z`, whose counterclockwise monodromy is
//! `diag(e^{2πiα}, e^{−2πiα})`.

mod higgs;
mod holonomy;
pub mod integrator;
mod path;

pub use higgs::{
    cousin_data, det_higgs, ktuy_check, ConnectionForm, CousinData, DiagonalEnd, HiggsData,
    HiggsField, KtuyReport,
};
pub use holonomy::{
    holonomy, parallel_transport, period_problem, CommutatorDefect, HolonomyReport, PeriodReport,
    TransportControls, Verdict,
};
pub use path::{Path, PathBuilder, PathLoop, PathSpec, Segment, SegmentSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConnectionError {
    #[error("frame is not special: det A - 1 = {0}")]
    NotSpecial(String),
    #[error("Higgs field is not trace-free: trace = {0}")]
    NotTraceFree(String),
    #[error("Higgs field denominator is zero")]
    ZeroDenominator,
    #[error("Higgs field is not null: det = {0}")]
    NotNull(String),
    #[error("path passes within {distance:e} of the pole at ({}, {})", pole[0], pole[1])]
    PoleTooClose { pole: [f64; 2], distance: f64 },
    #[error("integrator could not meet the tolerance (stalled at s = {s})")]
    ToleranceNotMet { s: f64 },
    #[error("path has no segments")]
    EmptyPath,
    #[error("segment {index} does not start where the previous one ends (gap {gap:e})")]
    DisconnectedPath { index: usize, gap: f64 },
    #[error("loop is not closed (gap {gap:e})")]
    NotClosed { gap: f64 },
    #[error("generator {index} does not share the base point of generator 0")]
    BaseMismatch { index: usize },
}
