//! Bryant frames: unimodular matrices `A(z)` whose derivative is null.
//!
//! The columns of `A = [[a, b], [c, d]]` are the sections `s = (a, c)` and
//! `t = (b, d)`. `A` is special when `det A = 1` and Bryant when in addition
//! `det A' = 0`, i.e. `∇s ∧ ∇t = 0` for the trivial connection.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::roots::polynomial_roots;
use crate::series::rational::squarefree_common_factor;
use crate::series::{LaurentMatrix, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("frame is not special: det A - 1 = {0}")]
    NotSpecial(String),
    #[error("unknown catalog frame `{0}` (known: horosphere, lower-shear, affine-null, cusp-degree2)")]
    UnknownName(String),
    #[error("an entry of A' has a pole at z = 0 inside the search region")]
    RegionContainsPole,
    #[error("A' vanishes identically; branch points are not isolated")]
    ConstantFrame,
    #[error("invalid annulus: need 0 <= r_min <= r_max")]
    BadRegion,
}

/// `{ z : r_min <= |z| <= r_max }`; `r_max` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    pub r_min: f64,
    pub r_max: f64,
}

impl Annulus {
    pub fn new(r_min: f64, r_max: f64) -> Result<Self, FrameError> {
        if !(r_min >= 0.0 && r_max >= r_min) {
            return Err(FrameError::BadRegion);
        }
        Ok(Self { r_min, r_max })
    }

    pub fn plane() -> Self {
        Self {
            r_min: 0.0,
            r_max: f64::INFINITY,
        }
    }

    pub fn disk(r: f64) -> Self {
        Self { r_min: 0.0, r_max: r }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let r = z.norm();
        r >= self.r_min - tol && r <= self.r_max + tol
    }

    pub fn contains_origin(&self) -> bool {
        self.r_min == 0.0
    }
}

impl Default for Annulus {
    fn default() -> Self {
        Self::plane()
    }
}

#[derive(Serialize, Deserialize)]
struct AnnulusRepr {
    r_min: f64,
    /// `null` encodes an unbounded annulus.
    r_max: Option<f64>,
}

impl Serialize for Annulus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AnnulusRepr {
            r_min: self.r_min,
            r_max: self.r_max.is_finite().then_some(self.r_max),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Annulus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AnnulusRepr::deserialize(d)?;
        Annulus::new(r.r_min, r.r_max.unwrap_or(f64::INFINITY)).map_err(serde::de::Error::custom)
    }
}

/// Raw frame file contents, before the unit-determinant check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameData {
    pub matrix: LaurentMatrix,
    #[serde(default)]
    pub domain: Annulus,
}

/// A special frame: `det A = 1` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameData", into = "FrameData")]
pub struct BryantFrame {
    matrix: LaurentMatrix,
    domain: Annulus,
}

impl BryantFrame {
    pub fn new(matrix: LaurentMatrix, domain: Annulus) -> Result<Self, FrameError> {
        let check = check_special(&matrix);
        if !check.is_special {
            return Err(FrameError::NotSpecial(check.det_residual.to_string()));
        }
        Ok(Self { matrix, domain })
    }

    /// Frame on the whole punctured plane.
    pub fn on_plane(matrix: LaurentMatrix) -> Result<Self, FrameError> {
        Self::new(matrix, Annulus::plane())
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    pub fn domain(&self) -> Annulus {
        self.domain
    }

    /// Left multiplication by a constant `SL(2)` matrix.
    pub fn left_mul(&self, u: &LaurentMatrix) -> Result<Self, FrameError> {
        Self::new(u * &self.matrix, self.domain)
    }
}

impl TryFrom<FrameData> for BryantFrame {
    type Error = FrameError;
    fn try_from(f: FrameData) -> Result<Self, FrameError> {
        Self::new(f.matrix, f.domain)
    }
}

impl From<BryantFrame> for FrameData {
    fn from(f: BryantFrame) -> Self {
        FrameData {
            matrix: f.matrix,
            domain: f.domain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialCheck {
    pub is_special: bool,
    pub det_residual: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub is_special: bool,
    pub is_bryant: bool,
    /// `det A − 1`.
    pub det_residual: LaurentPoly,
    /// `det A'`.
    pub null_residual: LaurentPoly,
}

pub fn check_special(a: &LaurentMatrix) -> SpecialCheck {
    let det_residual = &a.det() - &LaurentPoly::one();
    SpecialCheck {
        is_special: det_residual.is_zero(),
        det_residual,
    }
}

pub fn check_bryant(a: &LaurentMatrix) -> FrameReport {
    let SpecialCheck {
        is_special,
        det_residual,
    } = check_special(a);
    let null_residual = omega_quadratic(a);
    FrameReport {
        is_special,
        is_bryant: is_special && null_residual.is_zero(),
        det_residual,
        null_residual,
    }
}

/// Coefficient of `(dz)²` in `∇s ∧ ∇t` for the trivial connection: `det A'`.
pub fn omega_quadratic(a: &LaurentMatrix) -> LaurentPoly {
    a.derivative().det()
}

/// Common zeros of the four entries of `A'` inside `region`.
///
/// The entries are reduced exactly to the square-free part of their common
/// polynomial factor, whose roots are then found numerically; an empty
/// result certifies that `A` immerses on the region. `tol` widens the region
/// boundary and merges roots closer than `tol`.
pub fn branch_points(
    frame: &BryantFrame,
    region: Annulus,
    tol: f64,
) -> Result<Vec<Complex64>, FrameError> {
    let deriv = frame.matrix().derivative();
    let entries = deriv.entries();
    if region.contains_origin() && entries.iter().any(|p| p.pole_order() > 0) {
        return Err(FrameError::RegionContainsPole);
    }
    let common = squarefree_common_factor(&entries).ok_or(FrameError::ConstantFrame)?;
    let coeffs: Vec<Complex64> = common.iter().map(|c| c.to_complex64()).collect();
    let mut found: Vec<Complex64> = Vec::new();
    for r in polynomial_roots(&coeffs) {
        if region.contains(r, tol) && !found.iter().any(|f| (f - r).norm() <= tol) {
            found.push(r);
        }
    }
    found.sort_by(|x, y| x.norm().total_cmp(&y.norm()).then(x.arg().total_cmp(&y.arg())));
    Ok(found)
}

pub const CATALOG_NAMES: [&str; 4] = ["horosphere", "lower-shear", "affine-null", "cusp-degree2"];

/// Named example frames, all Bryant on the whole plane.
pub fn catalog(name: &str) -> Result<BryantFrame, FrameError> {
    let lp = LaurentPoly::from_ints;
    let m = match name {
        "horosphere" => LaurentMatrix::upper_unipotent(LaurentPoly::z()),
        "lower-shear" => LaurentMatrix::lower_unipotent(LaurentPoly::z()),
        "affine-null" => LaurentMatrix::new(
            lp(&[(0, 1), (1, 1)]),
            lp(&[(1, 1)]),
            lp(&[(1, -1)]),
            lp(&[(0, 1), (1, -1)]),
        ),
        "cusp-degree2" => LaurentMatrix::upper_unipotent(lp(&[(2, 1)])),
        other => return Err(FrameError::UnknownName(other.to_string())),
    };
    BryantFrame::on_plane(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_special_frame;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lp(t: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(t)
    }

    fn non_bryant() -> LaurentMatrix {
        LaurentMatrix::new(lp(&[(0, 1)]), lp(&[(1, 1)]), lp(&[(1, 1)]), lp(&[(0, 1), (2, 1)]))
    }

    #[test]
    fn special_examples() {
        assert!(check_special(catalog("horosphere").unwrap().matrix()).is_special);
        let zz = LaurentMatrix::diag(LaurentPoly::z(), LaurentPoly::z());
        let c = check_special(&zz);
        assert!(!c.is_special);
        assert_eq!(c.det_residual, lp(&[(2, 1), (0, -1)]));
        assert!(check_special(catalog("affine-null").unwrap().matrix()).is_special);
    }

    #[test]
    fn bryant_examples() {
        let h = catalog("horosphere").unwrap();
        assert_eq!(h.matrix().derivative(), LaurentMatrix::constant([
            [0.into(), 1.into()],
            [0.into(), 0.into()],
        ]));
        assert!(check_bryant(h.matrix()).is_bryant);
        let a = catalog("affine-null").unwrap();
        assert_eq!(a.matrix().derivative(), LaurentMatrix::constant([
            [1.into(), 1.into()],
            [(-1).into(), (-1).into()],
        ]));
        assert!(check_bryant(a.matrix()).is_bryant);
        let r = check_bryant(&non_bryant());
        assert!(r.is_special && !r.is_bryant);
        assert_eq!(r.null_residual, lp(&[(0, -1)]));
    }

    #[test]
    fn omega_examples() {
        assert!(omega_quadratic(catalog("horosphere").unwrap().matrix()).is_zero());
        assert_eq!(omega_quadratic(&non_bryant()), lp(&[(0, -1)]));
        assert!(omega_quadratic(catalog("cusp-degree2").unwrap().matrix()).is_zero());
    }

    #[test]
    fn branch_point_examples() {
        let disk = Annulus::disk(1.0);
        assert!(branch_points(&catalog("horosphere").unwrap(), disk, 1e-10).unwrap().is_empty());
        let cusp = branch_points(&catalog("cusp-degree2").unwrap(), disk, 1e-10).unwrap();
        assert_eq!(cusp, vec![Complex64::new(0.0, 0.0)]);
        assert!(branch_points(&catalog("affine-null").unwrap(), disk, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn branch_points_of_shifted_cusp() {
        // [[1, (z - 1/2)^3], [0, 1]]: A' = 3(z - 1/2)^2, branch point 1/2 (double)
        let p = lp(&[(3, 8), (2, -12), (1, 6), (0, -1)]).scale(&crate::series::GaussianRational::ratio(1, 8));
        let f = BryantFrame::on_plane(LaurentMatrix::upper_unipotent(p)).unwrap();
        let pts = branch_points(&f, Annulus::disk(1.0), 1e-10).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!(branch_points(&f, Annulus::new(0.6, 2.0).unwrap(), 1e-10).unwrap().is_empty());
    }

    #[test]
    fn branch_points_errors() {
        let f = BryantFrame::on_plane(LaurentMatrix::upper_unipotent(lp(&[(-1, 1)]))).unwrap();
        assert_eq!(branch_points(&f, Annulus::disk(1.0), 1e-10), Err(FrameError::RegionContainsPole));
        assert!(branch_points(&f, Annulus::new(0.5, 1.0).unwrap(), 1e-10).unwrap().is_empty());
        let id = BryantFrame::on_plane(LaurentMatrix::identity()).unwrap();
        assert_eq!(branch_points(&id, Annulus::disk(1.0), 1e-10), Err(FrameError::ConstantFrame));
    }

    #[test]
    fn catalog_definitions() {
        assert_eq!(catalog("horosphere").unwrap().matrix(), &LaurentMatrix::upper_unipotent(LaurentPoly::z()));
        assert_eq!(catalog("lower-shear").unwrap().matrix(), &LaurentMatrix::lower_unipotent(LaurentPoly::z()));
        assert!(matches!(catalog("catenoid"), Err(FrameError::UnknownName(_))));
        for name in CATALOG_NAMES {
            let r = check_bryant(catalog(name).unwrap().matrix());
            assert!(r.is_special && r.is_bryant, "{name}");
            assert!(r.det_residual.is_zero() && r.null_residual.is_zero());
        }
    }

    #[test]
    fn non_special_frames_are_rejected() {
        let zz = LaurentMatrix::diag(LaurentPoly::z(), LaurentPoly::z());
        assert!(matches!(BryantFrame::on_plane(zz), Err(FrameError::NotSpecial(_))));
    }

    #[test]
    fn omega_zero_iff_bryant_on_random_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut bryant = 0;
        for _ in 0..120 {
            let a = random_special_frame(&mut rng, 3, 2);
            let r = check_bryant(&a);
            assert!(r.is_special);
            assert_eq!(omega_quadratic(&a).is_zero(), r.is_bryant);
            assert_eq!(a.swap_columns().det(), -a.det());
            assert_eq!(omega_quadratic(&a.swap_columns()), -omega_quadratic(&a));
            bryant += usize::from(r.is_bryant);
        }
        // single unipotent factors are always Bryant, so both outcomes occur
        assert!(bryant > 0 && bryant < 120);
    }

    #[test]
    fn frame_json_round_trip() {
        let f = catalog("affine-null").unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains(r#""domain":{"r_min":0.0,"r_max":null}"#));
        let back: BryantFrame = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
