//! Piecewise paths in the punctured plane: line segments and circular arcs.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ConnectionError;

/// Relative gap allowed between consecutive segment endpoints.
const JOIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// `center + (from − center)·e^{i·s·sweep}`, `s ∈ [0, 1]`;
    /// positive sweep is counterclockwise.
    Arc {
        center: Complex64,
        from: Complex64,
        sweep: f64,
    },
}

impl Segment {
    pub fn line(from: Complex64, to: Complex64) -> Self {
        Segment::Line { from, to }
    }

    /// Arc around `center` starting at `from`, sweeping `turns` full turns.
    pub fn arc_from(from: Complex64, center: Complex64, turns: f64) -> Self {
        Segment::Arc {
            center,
            from,
            sweep: turns * TAU,
        }
    }

    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Arc { center, from, sweep } => {
                if s == 0.0 {
                    from
                } else {
                    center + (from - center) * Complex64::from_polar(1.0, s * sweep)
                }
            }
        }
    }

    /// `dz/ds`.
    pub fn velocity(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { center, from, sweep } => {
                Complex64::new(0.0, sweep) * (from - center) * Complex64::from_polar(1.0, s * sweep)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc { center, sweep, .. } => Segment::Arc {
                center,
                from: self.end(),
                sweep: -sweep,
            },
        }
    }

    /// Euclidean distance from `p` to the segment's trace.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - from).norm();
                }
                let s = (((p - from) * d.conj()).re / len2).clamp(0.0, 1.0);
                (p - (from + d * s)).norm()
            }
            Segment::Arc { center, from, sweep } => {
                let radius = (from - center).norm();
                let start_angle = (from - center).arg();
                let rel = p - center;
                let endpoints = (p - self.start()).norm().min((p - self.end()).norm());
                if rel.norm() == 0.0 {
                    return radius;
                }
                if sweep.abs() >= TAU {
                    return (rel.norm() - radius).abs();
                }
                // Angle of p measured from the arc start in the sweep direction.
                let offset = (rel.arg() - start_angle) * sweep.signum();
                let offset = offset.rem_euclid(TAU);
                if offset <= sweep.abs() {
                    (rel.norm() - radius).abs()
                } else {
                    endpoints
                }
            }
        }
    }

    fn scale(&self) -> f64 {
        self.start().norm().max(self.end().norm()).max(1.0)
    }

    /// `∮ (x dy − y dx)/2` along the segment.
    fn signed_area(&self) -> f64 {
        match *self {
            Segment::Line { from, to } => 0.5 * (from.re * to.im - from.im * to.re),
            Segment::Arc { center, from, sweep } => {
                let radius = (from - center).norm();
                let start_angle = (from - center).arg();
                // ½∫ Im(conj(z)·z') ds with z = c + r e^{iθ}.
                let (a, b) = (start_angle, start_angle + sweep);
                let sector = 0.5 * radius * radius * sweep;
                let chord = 0.5 * radius * (center.re * (b.sin() - a.sin()) + center.im * (a.cos() - b.cos()));
                sector + chord
            }
        }
    }
}

/// A connected sequence of segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    segments: Vec<Segment>,
}

impl Path {
    pub fn new(segments: Vec<Segment>) -> Result<Self, ConnectionError> {
        if segments.is_empty() {
            return Err(ConnectionError::EmptyPath);
        }
        for (i, w) in segments.windows(2).enumerate() {
            let gap = (w[0].end() - w[1].start()).norm();
            if gap > JOIN_TOL * w[0].scale() {
                return Err(ConnectionError::DisconnectedPath { index: i + 1, gap });
            }
        }
        Ok(Self { segments })
    }

    /// Start a path at `base`; extend with [`PathBuilder`] methods.
    pub fn from(base: Complex64) -> PathBuilder {
        PathBuilder {
            cursor: base,
            segments: Vec::new(),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn start(&self) -> Complex64 {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.segments[self.segments.len() - 1].end()
    }

    pub fn reversed(&self) -> Self {
        Self {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    /// This path followed by `next`.
    pub fn then(&self, next: &Path) -> Result<Self, ConnectionError> {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&next.segments);
        Self::new(segments)
    }

    pub fn is_closed(&self) -> bool {
        (self.end() - self.start()).norm() <= JOIN_TOL * self.segments[0].scale()
    }

    /// Smallest distance from `p` to any segment.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.segments
            .iter()
            .map(|s| s.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Sum of the signed-area integrals of the segments; positive for
    /// counterclockwise closed curves.
    pub fn signed_area(&self) -> f64 {
        self.segments.iter().map(Segment::signed_area).sum()
    }
}

pub struct PathBuilder {
    cursor: Complex64,
    segments: Vec<Segment>,
}

impl PathBuilder {
    pub fn line_to(mut self, to: Complex64) -> Self {
        self.segments.push(Segment::line(self.cursor, to));
        self.cursor = to;
        self
    }

    pub fn arc(mut self, center: Complex64, turns: f64) -> Self {
        let seg = Segment::arc_from(self.cursor, center, turns);
        self.cursor = seg.end();
        self.segments.push(seg);
        self
    }

    pub fn build(self) -> Result<Path, ConnectionError> {
        Path::new(self.segments)
    }

    pub fn close_loop(self) -> Result<PathLoop, ConnectionError> {
        PathLoop::new(self.build()?)
    }
}

/// A closed path; its base point is where it starts and ends.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLoop {
    path: Path,
}

impl PathLoop {
    pub fn new(path: Path) -> Result<Self, ConnectionError> {
        if !path.is_closed() {
            return Err(ConnectionError::NotClosed {
                gap: (path.end() - path.start()).norm(),
            });
        }
        Ok(Self { path })
    }

    /// Full counterclockwise circle around `center` through `base`.
    pub fn circle(center: Complex64, base: Complex64) -> Self {
        Self {
            path: Path {
                segments: vec![Segment::arc_from(base, center, 1.0)],
            },
        }
    }

    pub fn base(&self) -> Complex64 {
        self.path.start()
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn reversed(&self) -> Self {
        Self {
            path: self.path.reversed(),
        }
    }

    pub fn is_counterclockwise(&self) -> bool {
        self.path.signed_area() > 0.0
    }
}

impl AsRef<Path> for PathLoop {
    fn as_ref(&self) -> &Path {
        &self.path
    }
}

impl AsRef<Path> for Path {
    fn as_ref(&self) -> &Path {
        self
    }
}

/// JSON form: `{"base": [re, im], "segments": [...]}` where each segment
/// continues from the previous endpoint:
/// `{"kind": "line", "to": [re, im]}` or
/// `{"kind": "arc", "center": [re, im], "turns": t}` (`t > 0` counterclockwise).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub base: [f64; 2],
    pub segments: Vec<SegmentSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SegmentSpec {
    Line { to: [f64; 2] },
    Arc { center: [f64; 2], turns: f64 },
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl PathSpec {
    pub fn to_path(&self) -> Result<Path, ConnectionError> {
        let mut b = Path::from(c(self.base));
        for s in &self.segments {
            b = match *s {
                SegmentSpec::Line { to } => b.line_to(c(to)),
                SegmentSpec::Arc { center, turns } => b.arc(c(center), turns),
            };
        }
        b.build()
    }

    pub fn to_loop(&self) -> Result<PathLoop, ConnectionError> {
        PathLoop::new(self.to_path()?)
    }

    pub fn from_path(path: &Path) -> Self {
        let p = |z: Complex64| [z.re, z.im];
        Self {
            base: p(path.start()),
            segments: path
                .segments()
                .iter()
                .map(|s| match *s {
                    Segment::Line { to, .. } => SegmentSpec::Line { to: p(to) },
                    Segment::Arc { center, sweep, .. } => SegmentSpec::Arc {
                        center: p(center),
                        turns: sweep / TAU,
                    },
                })
                .collect(),
        }
    }
}
