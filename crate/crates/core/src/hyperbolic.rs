//! Hyperbolic 3-space and the immersion `f = A·A*` of a Bryant frame.
//!
//! Points live in the Hermitian model `{h = h*, h > 0, det h = 1}` and, for
//! differential geometry, in the hyperboloid `x0² − x1² − x2² − x3² = 1`,
//! `x0 > 0`, identified by
//! `h = [[x0 + x3, x1 + i·x2], [x1 − i·x2, x0 − x3]]`. Sectional curvature is −1.
//!
//! Mean curvature is measured by central finite differences of the
//! hyperboloid-valued map `(u, v) ↦ f(u + iv)`. The second fundamental form
//! is `⟨f_ij, N⟩` for the unit normal `N` tangent to the hyperboloid; the
//! normal is oriented so that Bryant frames give `H = +1`.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::BryantFrame;
use crate::mat2::Mat2;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("frame has a pole at z = 0")]
    PoleAtZero,
    #[error("point {0} lies outside the frame domain")]
    OutsideDomain(Complex64),
    #[error("matrix is not a point of hyperbolic space: {0}")]
    NotHyperbolic(&'static str),
    #[error("first fundamental form is degenerate at {z} (det {det:e}); branch point")]
    DegenerateMetric { z: Complex64, det: f64 },
    #[error("finite-difference step must be positive")]
    BadStep,
}

impl From<SeriesError> for GeometryError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::PoleAtZero => GeometryError::PoleAtZero,
            SeriesError::BadRational(_) => GeometryError::NotHyperbolic("bad coefficient"),
        }
    }
}

const HERMITIAN_TOL: f64 = 1e-12;
const DET_TOL: f64 = 1e-10;
/// `det g` below this is treated as a branch point (area density 1e−9).
const DEGENERATE_DET: f64 = 1e-18;
/// Orientation of the unit normal relative to the Minkowski cross product
/// of `(f, f_u, f_v)`; fixed so the horosphere frame has `H = +1`.
const NORMAL_SIGN: f64 = -1.0;

/// A point of the Hermitian model `L(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermitianPoint {
    h: Mat2,
}

impl HermitianPoint {
    /// Validates Hermitian symmetry (1e−12 Frobenius), unit determinant
    /// (1e−10) and positivity; tolerances are relative to `max(1, ‖h‖²)`.
    pub fn new(h: Mat2) -> Result<Self, GeometryError> {
        let scale = h.frobenius().max(1.0);
        if (h - h.adjoint()).frobenius() > HERMITIAN_TOL * scale {
            return Err(GeometryError::NotHyperbolic("not Hermitian"));
        }
        if (h.det() - 1.0).norm() > DET_TOL * scale * scale {
            return Err(GeometryError::NotHyperbolic("determinant is not 1"));
        }
        if h.a.re <= 0.0 || h.det().re <= 0.0 {
            return Err(GeometryError::NotHyperbolic("not positive definite"));
        }
        Ok(Self { h })
    }

    pub fn identity() -> Self {
        Self { h: Mat2::identity() }
    }

    pub fn matrix(&self) -> Mat2 {
        self.h
    }

    /// `arcosh(½·trace(p·adj q))`.
    pub fn distance(&self, other: &HermitianPoint) -> f64 {
        let c = 0.5 * (self.h * other.h.adjugate()).trace().re;
        c.max(1.0).acosh()
    }

    /// `U·h·U*`, the action of `SL(2, C)`.
    pub fn transform(&self, u: &Mat2) -> Result<Self, GeometryError> {
        Self::new(*u * self.h * u.adjoint())
    }
}

/// A point of the hyperboloid model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl MinkowskiPoint {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Result<Self, GeometryError> {
        let p = Self { x0, x1, x2, x3 };
        if x0 <= 0.0 || (p.minkowski_sqr() + 1.0).abs() > DET_TOL * x0.max(1.0).powi(2) {
            return Err(GeometryError::NotHyperbolic("not on the upper hyperboloid sheet"));
        }
        Ok(p)
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// `−x0² + x1² + x2² + x3²` (−1 on the hyperboloid).
    pub fn minkowski_sqr(&self) -> f64 {
        minkowski(&self.coords(), &self.coords())
    }

    pub fn distance(&self, other: &MinkowskiPoint) -> f64 {
        (-minkowski(&self.coords(), &other.coords())).max(1.0).acosh()
    }

    /// Poincaré ball coordinates `(x1, x2, x3) / (1 + x0)`.
    pub fn to_poincare(&self) -> [f64; 3] {
        let s = 1.0 + self.x0;
        [self.x1 / s, self.x2 / s, self.x3 / s]
    }
}

/// `⟨x, y⟩ = −x0y0 + x1y1 + x2y2 + x3y3`.
fn minkowski(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]
}

pub fn to_minkowski(p: &HermitianPoint) -> MinkowskiPoint {
    let h = p.h;
    MinkowskiPoint {
        x0: 0.5 * (h.a.re + h.d.re),
        x3: 0.5 * (h.a.re - h.d.re),
        x1: h.b.re,
        x2: h.b.im,
    }
}

pub fn from_minkowski(x: &MinkowskiPoint) -> HermitianPoint {
    HermitianPoint {
        h: Mat2::new(
            Complex64::new(x.x0 + x.x3, 0.0),
            Complex64::new(x.x1, x.x2),
            Complex64::new(x.x1, -x.x2),
            Complex64::new(x.x0 - x.x3, 0.0),
        ),
    }
}

/// `A(z)·A(z)*`.
pub fn immerse(frame: &BryantFrame, z: Complex64) -> Result<HermitianPoint, GeometryError> {
    if !frame.domain().contains(z, 0.0) {
        return Err(GeometryError::OutsideDomain(z));
    }
    let a = frame.matrix().eval(z)?;
    HermitianPoint::new(a * a.adjoint())
}

fn immerse_coords(frame: &BryantFrame, z: Complex64) -> Result<[f64; 4], GeometryError> {
    Ok(to_minkowski(&immerse(frame, z)?).coords())
}

/// Mean curvature and fundamental forms at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureSample {
    #[serde(serialize_with = "ser_complex")]
    pub z: Complex64,
    #[serde(rename = "H")]
    pub mean_curvature: f64,
    pub first_form: [[f64; 2]; 2],
    pub second_form: [[f64; 2]; 2],
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn cross3(f: &[f64; 4], fu: &[f64; 4], fv: &[f64; 4]) -> [f64; 4] {
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let m = |r: &[f64; 4], k: usize| r[cols[k]];
        m(f, 0) * (m(fu, 1) * m(fv, 2) - m(fu, 2) * m(fv, 1))
            - m(f, 1) * (m(fu, 0) * m(fv, 2) - m(fu, 2) * m(fv, 0))
            + m(f, 2) * (m(fu, 0) * m(fv, 1) - m(fu, 1) * m(fv, 0))
    };
    let mut n = [0.0; 4];
    for (i, slot) in n.iter_mut().enumerate() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * minor(i);
    }
    n
}

/// Mean curvature by central differences with step `step`.
///
/// Truncation error is `O(step²)`; roundoff contributes about
/// `eps/step²` through the second derivatives.
pub fn mean_curvature(frame: &BryantFrame, z: Complex64, step: f64) -> Result<CurvatureSample, GeometryError> {
    if step.is_nan() || step <= 0.0 {
        return Err(GeometryError::BadStep);
    }
    let at = |du: f64, dv: f64| immerse_coords(frame, z + Complex64::new(du * step, dv * step));
    let f00 = at(0.0, 0.0)?;
    let (fp0, fm0, f0p, f0m) = (at(1.0, 0.0)?, at(-1.0, 0.0)?, at(0.0, 1.0)?, at(0.0, -1.0)?);
    let (fpp, fpm, fmp, fmm) = (at(1.0, 1.0)?, at(1.0, -1.0)?, at(-1.0, 1.0)?, at(-1.0, -1.0)?);

    let h2 = step * step;
    let mut fu = [0.0; 4];
    let mut fv = [0.0; 4];
    let mut fuu = [0.0; 4];
    let mut fvv = [0.0; 4];
    let mut fuv = [0.0; 4];
    for i in 0..4 {
        fu[i] = (fp0[i] - fm0[i]) / (2.0 * step);
        fv[i] = (f0p[i] - f0m[i]) / (2.0 * step);
        fuu[i] = (fp0[i] - 2.0 * f00[i] + fm0[i]) / h2;
        fvv[i] = (f0p[i] - 2.0 * f00[i] + f0m[i]) / h2;
        fuv[i] = (fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4.0 * h2);
    }

    let g = [
        [minkowski(&fu, &fu), minkowski(&fu, &fv)],
        [minkowski(&fv, &fu), minkowski(&fv, &fv)],
    ];
    let det_g = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if det_g <= DEGENERATE_DET {
        return Err(GeometryError::DegenerateMetric { z, det: det_g });
    }

    let cross = cross3(&f00, &fu, &fv);
    let mut normal = [-cross[0], cross[1], cross[2], cross[3]];
    let len = minkowski(&normal, &normal).sqrt();
    for x in normal.iter_mut() {
        *x *= NORMAL_SIGN / len;
    }
    let b = [
        [minkowski(&fuu, &normal), minkowski(&fuv, &normal)],
        [minkowski(&fuv, &normal), minkowski(&fvv, &normal)],
    ];
    let trace = (g[1][1] * b[0][0] - 2.0 * g[0][1] * b[0][1] + g[0][0] * b[1][1]) / det_g;
    Ok(CurvatureSample {
        z,
        mean_curvature: 0.5 * trace,
        first_form: g,
        second_form: b,
    })
}

/// Richardson extrapolation `(4·H(step/2) − H(step)) / 3`.
pub fn mean_curvature_richardson(
    frame: &BryantFrame,
    z: Complex64,
    step: f64,
) -> Result<CurvatureSample, GeometryError> {
    let coarse = mean_curvature(frame, z, step)?;
    let mut fine = mean_curvature(frame, z, 0.5 * step)?;
    fine.mean_curvature = (4.0 * fine.mean_curvature - coarse.mean_curvature) / 3.0;
    Ok(fine)
}

/// Square `n × n` parameter grid `center + [−radius, radius]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    #[serde(with = "complex_pair")]
    pub center: Complex64,
    pub radius: f64,
    pub n: usize,
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

impl Grid {
    pub fn new(center: Complex64, radius: f64, n: usize) -> Self {
        Self { center, radius, n }
    }

    /// Parameter value of vertex `(i, j)`, `i` along `Re z`, `j` along `Im z`.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        if self.n <= 1 {
            return self.center;
        }
        let t = |k: usize| -self.radius + 2.0 * self.radius * k as f64 / (self.n - 1) as f64;
        self.center + Complex64::new(t(i), t(j))
    }

    pub fn points(&self) -> Vec<Complex64> {
        (0..self.n)
            .flat_map(|j| (0..self.n).map(move |i| (i, j)))
            .map(|(i, j)| self.point(i, j))
            .collect()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }
}

/// Sampled surface: one vertex per grid point (`None` where the frame
/// could not be evaluated) and counterclockwise quads between valid vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mesh {
    pub grid: Grid,
    pub vertices: Vec<Option<MinkowskiPoint>>,
    pub faces: Vec<[usize; 4]>,
}

impl Mesh {
    pub fn valid_vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_some()).count()
    }

    pub fn poincare_vertices(&self) -> Vec<Option<[f64; 3]>> {
        self.vertices.iter().map(|v| v.map(|p| p.to_poincare())).collect()
    }

    /// Wavefront OBJ in Poincaré ball coordinates; invalid vertices are
    /// omitted and face indices renumbered (1-based).
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        let mut remap = vec![0usize; self.vertices.len()];
        let mut next = 1;
        for (k, v) in self.vertices.iter().enumerate() {
            if let Some(p) = v {
                let [x, y, z] = p.to_poincare();
                let _ = writeln!(out, "v {x} {y} {z}");
                remap[k] = next;
                next += 1;
            }
        }
        for f in &self.faces {
            let _ = writeln!(
                out,
                "f {} {} {} {}",
                remap[f[0]], remap[f[1]], remap[f[2]], remap[f[3]]
            );
        }
        out
    }
}

/// Evaluates the immersion on `grid` (in parallel over vertices).
pub fn sample_mesh(frame: &BryantFrame, grid: Grid) -> Mesh {
    let vertices: Vec<Option<MinkowskiPoint>> = grid
        .points()
        .into_par_iter()
        .map(|z| immerse(frame, z).ok().map(|p| to_minkowski(&p)))
        .collect();
    let mut faces = Vec::new();
    for j in 0..grid.n.saturating_sub(1) {
        for i in 0..grid.n - 1 {
            let quad = [
                grid.index(i, j),
                grid.index(i + 1, j),
                grid.index(i + 1, j + 1),
                grid.index(i, j + 1),
            ];
            if quad.iter().all(|&k| vertices[k].is_some()) {
                faces.push(quad);
            }
        }
    }
    Mesh {
        grid,
        vertices,
        faces,
    }
}

/// Curvature at every grid point, in grid order.
pub fn curvature_grid(
    frame: &BryantFrame,
    grid: Grid,
    step: f64,
) -> Vec<Result<CurvatureSample, GeometryError>> {
    grid.points()
        .into_par_iter()
        .map(|z| mean_curvature(frame, z, step))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::catalog;
    use crate::series::{GaussianRational, LaurentMatrix};
    use proptest::prelude::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn immerse_examples() {
        let h = catalog("horosphere").unwrap();
        assert_eq!(immerse(&h, z(0.0, 0.0)).unwrap().matrix(), Mat2::identity());
        let w = z(0.3, -0.7);
        let expect = Mat2::new((1.0 + w.norm_sqr()).into(), w, w.conj(), 1.0.into());
        assert!((immerse(&h, w).unwrap().matrix() - expect).frobenius() < 1e-15);
        let l = catalog("lower-shear").unwrap();
        let p = immerse(&l, z(1.0, 0.0)).unwrap().matrix();
        assert!((p - Mat2::real([[1.0, 1.0], [1.0, 2.0]])).frobenius() < 1e-15);
    }

    #[test]
    fn minkowski_examples() {
        let m = to_minkowski(&HermitianPoint::identity());
        assert_eq!(m.coords(), [1.0, 0.0, 0.0, 0.0]);
        let p = HermitianPoint::new(Mat2::real([[2.0, 0.0], [0.0, 0.5]])).unwrap();
        assert_eq!(to_minkowski(&p).coords(), [1.25, 0.0, 0.0, 0.75]);
        let p = HermitianPoint::new(Mat2::real([[1.0, 1.0], [1.0, 2.0]])).unwrap();
        assert_eq!(to_minkowski(&p).coords(), [1.5, 1.0, 0.0, -0.5]);
    }

    #[test]
    fn invalid_points_are_rejected() {
        assert!(HermitianPoint::new(Mat2::real([[2.0, 0.0], [0.0, 1.0]])).is_err());
        assert!(HermitianPoint::new(Mat2::real([[-1.0, 0.0], [0.0, -1.0]])).is_err());
        assert!(HermitianPoint::new(Mat2::real([[1.0, 1.0], [0.0, 1.0]])).is_err());
        assert!(MinkowskiPoint::new(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(MinkowskiPoint::new(-1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn horosphere_and_affine_null_are_cmc1() {
        for name in ["horosphere", "affine-null", "lower-shear", "cusp-degree2"] {
            let f = catalog(name).unwrap();
            for w in [z(0.3, 0.2), z(0.1, 0.0), z(-0.6, 0.45)] {
                let s = mean_curvature(&f, w, 1e-4).unwrap();
                assert!((s.mean_curvature - 1.0).abs() < 1e-4, "{name} at {w}: {}", s.mean_curvature);
            }
        }
    }

    #[test]
    fn branch_point_is_degenerate() {
        let f = catalog("cusp-degree2").unwrap();
        assert!(matches!(
            mean_curvature(&f, z(0.0, 0.0), 1e-4),
            Err(GeometryError::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn second_order_convergence_on_quartic_immersion() {
        // cusp-degree2 immerses as a quartic in (u, v): truncation error is
        // visible above roundoff for moderate steps.
        let f = catalog("cusp-degree2").unwrap();
        let w = z(0.7, 0.4);
        let err = |h: f64| (mean_curvature(&f, w, h).unwrap().mean_curvature - 1.0).abs();
        let (e1, e2) = (err(4e-2), err(2e-2));
        assert!(e1 > 1e-6);
        let ratio = e1 / e2;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
        let r = mean_curvature_richardson(&f, w, 4e-2).unwrap();
        assert!((r.mean_curvature - 1.0).abs() < e2);
    }

    #[test]
    fn mesh_counts() {
        let h = catalog("horosphere").unwrap();
        let m = sample_mesh(&h, Grid::new(z(0.0, 0.0), 1.0, 2));
        assert_eq!((m.valid_vertex_count(), m.faces.len()), (4, 1));
        let m = sample_mesh(&h, Grid::new(z(0.2, 0.1), 1.0, 1));
        assert_eq!((m.vertices.len(), m.faces.len()), (1, 0));
        let m = sample_mesh(&h, Grid::new(z(0.0, 0.0), 1.0, 10));
        assert_eq!((m.valid_vertex_count(), m.faces.len()), (100, 81));
        for p in m.poincare_vertices().into_iter().flatten() {
            assert!(p.iter().map(|x| x * x).sum::<f64>() < 1.0);
        }
        let obj = m.to_obj();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 100);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 81);
        assert!(obj.contains("f 1 2 12 11"));
    }

    #[test]
    fn mesh_drops_faces_at_poles() {
        let m = LaurentMatrix::upper_unipotent(crate::series::LaurentPoly::z_pow(-1));
        let f = BryantFrame::on_plane(m).unwrap();
        let mesh = sample_mesh(&f, Grid::new(z(0.0, 0.0), 1.0, 3));
        assert_eq!(mesh.valid_vertex_count(), 8);
        assert!(mesh.faces.is_empty());
        let obj = mesh.to_obj();
        assert_eq!(obj.lines().count(), 8);
    }

    #[test]
    fn grid_immersions_are_valid_points() {
        for name in crate::frames::CATALOG_NAMES {
            let f = catalog(name).unwrap();
            for w in Grid::new(z(0.0, 0.0), 1.0, 10).points() {
                let p = immerse(&f, w).unwrap();
                let m = to_minkowski(&p);
                assert!(MinkowskiPoint::new(m.x0, m.x1, m.x2, m.x3).is_ok());
            }
        }
    }

    #[test]
    fn unitary_invariance_of_distances() {
        let f = catalog("affine-null").unwrap();
        // U = [[3/5, -4/5 i], [-4/5 i, 3/5]] ∈ SU(2)
        let g = |re, im| GaussianRational::complex_ratio(re, im);
        let u = LaurentMatrix::constant([
            [g((3, 5), (0, 1)), g((0, 1), (-4, 5))],
            [g((0, 1), (-4, 5)), g((3, 5), (0, 1))],
        ]);
        let fu = f.left_mul(&u).unwrap();
        let pts = Grid::new(z(0.0, 0.0), 1.0, 5).points();
        for p in &pts {
            for q in &pts {
                let d = immerse(&f, *p).unwrap().distance(&immerse(&f, *q).unwrap());
                let du = immerse(&fu, *p).unwrap().distance(&immerse(&fu, *q).unwrap());
                assert!((d.cosh() - du.cosh()).abs() < 1e-10 * d.cosh());
            }
        }
    }

    proptest! {
        #[test]
        fn minkowski_round_trip(x1 in -5.0f64..5.0, x2 in -5.0f64..5.0, x3 in -5.0f64..5.0) {
            let x0 = (1.0 + x1 * x1 + x2 * x2 + x3 * x3).sqrt();
            let m = MinkowskiPoint::new(x0, x1, x2, x3).unwrap();
            let h = from_minkowski(&m);
            prop_assert!(HermitianPoint::new(h.matrix()).is_ok());
            let back = to_minkowski(&h);
            for (a, b) in back.coords().iter().zip(m.coords()) {
                prop_assert!((a - b).abs() <= 1e-12 * x0);
            }
            let o = MinkowskiPoint::new(1.0, 0.0, 0.0, 0.0).unwrap();
            prop_assert!((m.distance(&o) - h.distance(&HermitianPoint::identity())).abs() < 1e-9);
        }
    }
}
