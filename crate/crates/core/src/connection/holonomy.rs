use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::integrator::{integrate, StepControls};
use super::{ConnectionError, ConnectionForm, Path, PathLoop, Segment};
use crate::mat2::Mat2;

/// Integrator and geometry controls for parallel transport.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportControls {
    pub rtol: f64,
    pub atol: f64,
    /// Minimum distance between the path and any pole.
    pub pole_clearance: f64,
}

impl Default for TransportControls {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            pole_clearance: 1e-3,
        }
    }
}

impl TransportControls {
    pub fn with_rtol(mut self, rtol: f64) -> Self {
        self.rtol = rtol;
        self
    }

    pub fn with_atol(mut self, atol: f64) -> Self {
        self.atol = atol;
        self
    }
}

fn check_clearance<C: ConnectionForm + ?Sized>(
    theta: &C,
    path: &Path,
    clearance: f64,
) -> Result<(), ConnectionError> {
    for &p in theta.poles() {
        let distance = path.distance_to(p);
        if distance < clearance {
            return Err(ConnectionError::PoleTooClose {
                pole: [p.re, p.im],
                distance,
            });
        }
    }
    Ok(())
}

fn transport_segment<C: ConnectionForm + ?Sized>(
    theta: &C,
    seg: &Segment,
    y0: Mat2,
    ctl: &TransportControls,
) -> Result<Mat2, ConnectionError> {
    let rhs = |s: f64| -(theta.coefficient(seg.point(s)).scale(seg.velocity(s)));
    let steps = StepControls {
        rtol: ctl.rtol,
        atol: ctl.atol,
    };
    integrate(rhs, y0, steps).map(|(y, _)| y)
}

/// Parallel transport of the identity frame along `path` for `∇ = d + Θ`.
///
/// Flat sections satisfy `dY/dt = −Θ(z(t))·z'(t)·Y`; the result `Y(1)` maps
/// the fiber at the start point to the fiber at the end point, so
/// transports compose as `T(p₁ then p₂) = T(p₂)·T(p₁)`.
pub fn parallel_transport<C, P>(
    theta: &C,
    path: &P,
    controls: &TransportControls,
) -> Result<Mat2, ConnectionError>
where
    C: ConnectionForm + ?Sized,
    P: AsRef<Path> + ?Sized,
{
    let path = path.as_ref();
    check_clearance(theta, path, controls.pole_clearance)?;
    path.segments()
        .iter()
        .try_fold(Mat2::identity(), |y, seg| transport_segment(theta, seg, y, controls))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Passes,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolonomyReport {
    /// One transport matrix per generator, as 2×2 arrays of `[re, im]`.
    pub matrices: Vec<Mat2>,
    /// `‖U·U* − I‖_F`.
    pub unitary_defects: Vec<f64>,
    /// `|det U − 1|`.
    pub det_defects: Vec<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl HolonomyReport {
    pub fn passes(&self) -> bool {
        self.verdict == Verdict::Passes
    }
}

/// Base-point agreement tolerance, relative to the base modulus.
const BASE_TOL: f64 = 1e-12;

/// Holonomy of each generator loop and its distance from `SU(2)`.
pub fn holonomy<C: ConnectionForm + ?Sized>(
    theta: &C,
    generators: &[PathLoop],
    tol: f64,
    controls: &TransportControls,
) -> Result<HolonomyReport, ConnectionError> {
    if let Some(first) = generators.first() {
        let base = first.base();
        let scale = base.norm().max(1.0);
        if let Some(bad) = generators
            .iter()
            .position(|l| (l.base() - base).norm() > BASE_TOL * scale)
        {
            return Err(ConnectionError::BaseMismatch { index: bad });
        }
    }
    let matrices = generators
        .par_iter()
        .map(|l| parallel_transport(theta, l, controls))
        .collect::<Result<Vec<_>, _>>()?;
    let unitary_defects: Vec<f64> = matrices.iter().map(Mat2::unitary_defect).collect();
    let det_defects: Vec<f64> = matrices
        .iter()
        .map(|m| (m.det() - Complex64::new(1.0, 0.0)).norm())
        .collect();
    let ok = unitary_defects.iter().chain(&det_defects).all(|&d| d <= tol);
    Ok(HolonomyReport {
        matrices,
        unitary_defects,
        det_defects,
        tolerance: tol,
        verdict: if ok { Verdict::Passes } else { Verdict::Fails },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorDefect {
    pub i: usize,
    pub j: usize,
    /// `‖U_i U_j U_i⁻¹ U_j⁻¹ − I‖_F`.
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodReport {
    #[serde(flatten)]
    pub holonomy: HolonomyReport,
    pub abelian: bool,
    pub max_commutator_defect: f64,
    pub commutator_defects: Vec<CommutatorDefect>,
}

impl PeriodReport {
    pub fn passes(&self) -> bool {
        self.holonomy.passes()
    }
}

/// Generator-level check of the non-abelian period problem.
///
/// Passes when every generator holonomy lies in `SU(2)` within `tol`. The
/// caller is responsible for the loops generating the fundamental group.
/// The group is reported abelian when every pairwise commutator is the
/// identity within `tol`.
pub fn period_problem<C: ConnectionForm + ?Sized>(
    theta: &C,
    generators: &[PathLoop],
    tol: f64,
    controls: &TransportControls,
) -> Result<PeriodReport, ConnectionError> {
    let holonomy = holonomy(theta, generators, tol, controls)?;
    let mut commutator_defects = Vec::new();
    let m = &holonomy.matrices;
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            let defect = m[i]
                .group_commutator(&m[j])
                .map(|c| (c - Mat2::identity()).frobenius())
                .unwrap_or(f64::INFINITY);
            commutator_defects.push(CommutatorDefect { i, j, defect });
        }
    }
    let max_commutator_defect = commutator_defects.iter().map(|c| c.defect).fold(0.0, f64::max);
    Ok(PeriodReport {
        holonomy,
        abelian: max_commutator_defect <= tol,
        max_commutator_defect,
        commutator_defects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{DiagonalEnd, HiggsField};
    use crate::series::GaussianRational;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tight() -> TransportControls {
        TransportControls::default().with_rtol(1e-12).with_atol(1e-14)
    }

    fn unit_circle() -> PathLoop {
        PathLoop::circle(z(0.0, 0.0), z(1.0, 0.0))
    }

    #[test]
    fn trivial_connection_is_identity() {
        let loops = vec![
            unit_circle(),
            PathLoop::circle(z(0.5, 0.0), z(1.0, 0.0)),
            Path::from(z(1.0, 0.0)).line_to(z(2.0, 1.0)).line_to(z(1.0, 0.0)).close_loop().unwrap(),
        ];
        let r = period_problem(&HiggsField::zero(), &loops, 1e-8, &TransportControls::default()).unwrap();
        assert!(r.passes() && r.abelian);
        for m in &r.holonomy.matrices {
            assert!((*m - Mat2::identity()).frobenius() < 1e-14);
        }
    }

    #[test]
    fn diagonal_end_closed_forms() {
        for (alpha, expect) in [
            (0.25, Mat2::diag(z(0.0, 1.0), z(0.0, -1.0))),
            (0.5, Mat2::identity() * -1.0),
        ] {
            let y = parallel_transport(&DiagonalEnd::real(alpha), &unit_circle(), &tight()).unwrap();
            assert!((y - expect).frobenius() < 1e-8, "alpha {alpha}: {y:?}");
        }
    }

    #[test]
    fn exact_end_agrees_with_numeric_end() {
        let q = GaussianRational::ratio(1, 4);
        let exact = HiggsField::fuchsian(&[(GaussianRational::from_int(0), [
            [-q.clone(), 0.into()],
            [0.into(), q],
        ])])
        .unwrap();
        let a = parallel_transport(&exact, &unit_circle(), &tight()).unwrap();
        let b = parallel_transport(&DiagonalEnd::real(0.25), &unit_circle(), &tight()).unwrap();
        assert!((a - b).frobenius() < 1e-10);
    }

    #[test]
    fn holonomy_verdicts() {
        let third = DiagonalEnd::real(1.0 / 3.0);
        let r = holonomy(&third, &[unit_circle()], 1e-8, &tight()).unwrap();
        assert!(r.passes());
        assert!((r.matrices[0] - third.expected_monodromy()).frobenius() < 1e-8);

        let imaginary = DiagonalEnd::new(z(0.0, 1.0));
        let r = holonomy(&imaginary, &[unit_circle()], 1e-8, &tight()).unwrap();
        assert!(!r.passes());
        assert!(r.unitary_defects[0] > 1e3);
        let expect = imaginary.expected_monodromy();
        assert!((r.matrices[0] - expect).frobenius() < 1e-8 * expect.frobenius());
    }

    #[test]
    fn pole_clearance_is_enforced() {
        let tiny = PathLoop::circle(z(0.0, 0.0), z(1e-4, 0.0));
        let r = parallel_transport(&DiagonalEnd::real(0.25), &tiny, &TransportControls::default());
        assert!(matches!(r, Err(ConnectionError::PoleTooClose { .. })));
    }

    #[test]
    fn generators_must_share_a_base() {
        let loops = [unit_circle(), PathLoop::circle(z(0.0, 0.0), z(2.0, 0.0))];
        let r = holonomy(&HiggsField::zero(), &loops, 1e-8, &TransportControls::default());
        assert_eq!(r, Err(ConnectionError::BaseMismatch { index: 1 }));
    }

    #[test]
    fn reversal_and_concatenation() {
        let end = DiagonalEnd::real(0.3);
        let p1 = Path::from(z(1.0, 0.0)).line_to(z(1.0, 1.0)).build().unwrap();
        let p2 = Path::from(z(1.0, 1.0)).arc(z(0.0, 0.0), 0.3).build().unwrap();
        let ctl = tight();
        let t1 = parallel_transport(&end, &p1, &ctl).unwrap();
        let t2 = parallel_transport(&end, &p2, &ctl).unwrap();
        let t12 = parallel_transport(&end, &p1.then(&p2).unwrap(), &ctl).unwrap();
        assert!((t12 - t2 * t1).frobenius() < 1e-10);
        let back = parallel_transport(&end, &p1.reversed(), &ctl).unwrap();
        assert!((back * t1 - Mat2::identity()).frobenius() < 1e-10);
    }
}
