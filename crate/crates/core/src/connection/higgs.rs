use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ConnectionError;
use crate::mat2::Mat2;
use crate::roots::polynomial_roots;
use crate::series::{GaussianRational, LaurentMatrix, LaurentPoly, RationalForm};

/// Anything that can be transported along: `∇ = d + Θ` with `Θ = coefficient(z)·dz`.
pub trait ConnectionForm: Sync {
    fn coefficient(&self, z: Complex64) -> Mat2;
    /// Points where the coefficient is (possibly) singular.
    fn poles(&self) -> &[Complex64];
}

/// Trace-free Higgs field `Θ = (numer / den)·dz`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HiggsData", into = "HiggsData")]
pub struct HiggsField {
    numer: LaurentMatrix,
    den: LaurentPoly,
    poles: Vec<Complex64>,
}

/// Wire form of a Higgs field: `{"numer": matrix, "den": poly}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HiggsData {
    pub numer: LaurentMatrix,
    #[serde(default = "LaurentPoly::one")]
    pub den: LaurentPoly,
}

impl TryFrom<HiggsData> for HiggsField {
    type Error = ConnectionError;
    fn try_from(d: HiggsData) -> Result<Self, ConnectionError> {
        HiggsField::new(d.numer, d.den)
    }
}

impl From<HiggsField> for HiggsData {
    fn from(h: HiggsField) -> Self {
        HiggsData {
            numer: h.numer,
            den: h.den,
        }
    }
}

impl HiggsField {
    pub fn new(numer: LaurentMatrix, den: LaurentPoly) -> Result<Self, ConnectionError> {
        if den.is_zero() {
            return Err(ConnectionError::ZeroDenominator);
        }
        let tr = numer.trace();
        if !tr.is_zero() {
            return Err(ConnectionError::NotTraceFree(tr.to_string()));
        }
        let poles = locate_poles(&numer, &den);
        Ok(Self { numer, den, poles })
    }

    pub fn zero() -> Self {
        Self::new(LaurentMatrix::zero(), LaurentPoly::one()).expect("zero field")
    }

    /// Constant-coefficient field `m·dz`.
    pub fn constant(m: [[GaussianRational; 2]; 2]) -> Result<Self, ConnectionError> {
        Self::new(LaurentMatrix::constant(m), LaurentPoly::one())
    }

    /// Maurer–Cartan form `dA·A⁻¹` of a special frame, using `A⁻¹ = adj A`.
    pub fn from_frame(a: &LaurentMatrix) -> Result<Self, ConnectionError> {
        let residual = &a.det() - &LaurentPoly::one();
        if !residual.is_zero() {
            return Err(ConnectionError::NotSpecial(residual.to_string()));
        }
        Self::new(&a.derivative() * &a.adjugate(), LaurentPoly::one())
    }

    /// `Θ = Σ_k R_k·dz / (z − p_k)` over a common denominator.
    ///
    /// With this sign convention the model end `∇_α` has residue `−Γ_α`.
    pub fn fuchsian(
        terms: &[(GaussianRational, [[GaussianRational; 2]; 2])],
    ) -> Result<Self, ConnectionError> {
        let linear = |p: &GaussianRational| {
            LaurentPoly::from_terms([(1, GaussianRational::from_int(1)), (0, -p)])
        };
        let den = terms
            .iter()
            .fold(LaurentPoly::one(), |acc, (p, _)| &acc * &linear(p));
        let mut numer = LaurentMatrix::zero();
        for (i, (_, residue)) in terms.iter().enumerate() {
            let others = terms
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(LaurentPoly::one(), |acc, (_, (p, _))| &acc * &linear(p));
            numer = &numer + &LaurentMatrix::constant(residue.clone()).scale_poly(&others);
        }
        Self::new(numer, den)
    }

    pub fn numer(&self) -> &LaurentMatrix {
        &self.numer
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// `det(numer)`; the field is null iff this vanishes.
    pub fn det_numer(&self) -> LaurentPoly {
        self.numer.det()
    }

    /// `true` when `Θ ≡ 0`.
    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

fn locate_poles(numer: &LaurentMatrix, den: &LaurentPoly) -> Vec<Complex64> {
    if numer.is_zero() {
        return Vec::new();
    }
    let numer_lo = numer
        .entries()
        .iter()
        .filter_map(|p| p.lowest_exp())
        .min()
        .unwrap_or(0);
    let (den_lo, dense) = den.to_dense_shifted();
    let coeffs: Vec<Complex64> = dense.iter().map(|c| c.to_complex64()).collect();
    let mut poles = polynomial_roots(&coeffs);
    if numer_lo < den_lo {
        poles.push(Complex64::new(0.0, 0.0));
    }
    poles
}

impl ConnectionForm for HiggsField {
    fn coefficient(&self, z: Complex64) -> Mat2 {
        let n = self.numer.eval(z).unwrap_or(Mat2::new(
            Complex64::new(f64::NAN, 0.0),
            Complex64::new(f64::NAN, 0.0),
            Complex64::new(f64::NAN, 0.0),
            Complex64::new(f64::NAN, 0.0),
        ));
        let den = self.den.eval(z).unwrap_or(Complex64::new(f64::NAN, 0.0));
        n.scale(den.inv())
    }

    fn poles(&self) -> &[Complex64] {
        &self.poles
    }
}

/// The model end `Θ = −diag(w, −w)·dz/z` with a complex weight `w`.
///
/// Numeric counterpart of [`crate::ends::SingularEnd`], also covering
/// irrational and non-real weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalEnd {
    pub weight: Complex64,
    poles: [Complex64; 1],
}

impl DiagonalEnd {
    pub fn new(weight: Complex64) -> Self {
        Self {
            weight,
            poles: [Complex64::new(0.0, 0.0)],
        }
    }

    pub fn real(alpha: f64) -> Self {
        Self::new(Complex64::new(alpha, 0.0))
    }

    /// `diag(e^{2πiw}, e^{−2πiw})`, the closed-form counterclockwise monodromy.
    pub fn expected_monodromy(&self) -> Mat2 {
        let phase = Complex64::new(0.0, std::f64::consts::TAU) * self.weight;
        Mat2::diag(phase.exp(), (-phase).exp())
    }
}

impl ConnectionForm for DiagonalEnd {
    fn coefficient(&self, z: Complex64) -> Mat2 {
        let w = self.weight / z;
        Mat2::diag(-w, w)
    }

    fn poles(&self) -> &[Complex64] {
        &self.poles
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KtuyReport {
    /// `trace(Θ²)` as a coefficient of `(dz)²`, over `den²`.
    pub trace_theta_sq: RationalForm,
    pub passes: bool,
}

/// `trace(Θ²) = 0`, the null condition written without determinants.
pub fn ktuy_check(theta: &HiggsField) -> KtuyReport {
    let n = theta.numer();
    let trace_theta_sq = RationalForm::new((n * n).trace(), theta.den() * theta.den());
    KtuyReport {
        passes: trace_theta_sq.is_zero(),
        trace_theta_sq,
    }
}

/// `det Θ` as a coefficient of `(dz)²`, over `den²`.
pub fn det_higgs(theta: &HiggsField) -> RationalForm {
    RationalForm::new(theta.det_numer(), theta.den() * theta.den())
}

/// The three Weierstrass 1-forms of a null field, over the field's denominator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CousinData {
    pub numers: [LaurentPoly; 3],
    pub den: LaurentPoly,
}

impl CousinData {
    pub fn forms(&self) -> [RationalForm; 3] {
        self.numers
            .clone()
            .map(|n| RationalForm::new(n, self.den.clone()))
    }

    /// Numerator of `ω1² + ω2² + ω3²` over `den²`.
    pub fn sum_of_squares(&self) -> LaurentPoly {
        self.numers
            .iter()
            .fold(LaurentPoly::zero(), |acc, w| &acc + &(w * w))
    }
}

/// For `Θ = [[α, γ], [β, −α]]`: `ω1 = α`, `ω2 = (β+γ)/2`, `ω3 = i(β−γ)/2`.
///
/// Then `ω1² + ω2² + ω3² = α² + βγ = −det Θ`, which vanishes for null fields.
pub fn cousin_data(theta: &HiggsField) -> Result<CousinData, ConnectionError> {
    let det = theta.det_numer();
    if !det.is_zero() {
        return Err(ConnectionError::NotNull(det.to_string()));
    }
    let n = theta.numer();
    let (alpha, gamma, beta) = (&n.a, &n.b, &n.c);
    let half = GaussianRational::ratio(1, 2);
    let half_i = GaussianRational::complex_ratio((0, 1), (1, 2));
    Ok(CousinData {
        numers: [
            alpha.clone(),
            (beta + gamma).scale(&half),
            (beta - gamma).scale(&half_i),
        ],
        den: theta.den().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::catalog;
    use crate::sampling::{random_null_higgs, random_trace_free_higgs};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn lp(t: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(t)
    }

    fn rank_one() -> HiggsField {
        // [[z, -z²], [1, -z]]
        HiggsField::new(
            LaurentMatrix::new(lp(&[(1, 1)]), lp(&[(2, -1)]), lp(&[(0, 1)]), lp(&[(1, -1)])),
            LaurentPoly::one(),
        )
        .unwrap()
    }

    #[test]
    fn maurer_cartan_examples() {
        let h = HiggsField::from_frame(catalog("horosphere").unwrap().matrix()).unwrap();
        assert_eq!(h.numer(), &LaurentMatrix::constant([[g(0), g(1)], [g(0), g(0)]]));
        let l = HiggsField::from_frame(catalog("lower-shear").unwrap().matrix()).unwrap();
        assert_eq!(l.numer(), &LaurentMatrix::constant([[g(0), g(0)], [g(1), g(0)]]));
        assert!(HiggsField::from_frame(&LaurentMatrix::identity()).unwrap().is_zero());
        let zz = LaurentMatrix::diag(LaurentPoly::z(), LaurentPoly::z());
        assert!(matches!(HiggsField::from_frame(&zz), Err(ConnectionError::NotSpecial(_))));
    }

    #[test]
    fn ktuy_examples() {
        let nil = HiggsField::constant([[g(0), g(1)], [g(0), g(0)]]).unwrap();
        assert!(ktuy_check(&nil).passes);
        let diag = HiggsField::constant([[g(1), g(0)], [g(0), g(-1)]]).unwrap();
        let r = ktuy_check(&diag);
        assert!(!r.passes);
        assert_eq!(r.trace_theta_sq.numer, lp(&[(0, 2)]));
        assert!(ktuy_check(&rank_one()).passes);
    }

    #[test]
    fn det_examples() {
        let h = HiggsField::from_frame(catalog("horosphere").unwrap().matrix()).unwrap();
        assert!(det_higgs(&h).is_zero());
        let diag = HiggsField::constant([[g(1), g(0)], [g(0), g(-1)]]).unwrap();
        assert_eq!(det_higgs(&diag).numer, lp(&[(0, -1)]));
        assert!(det_higgs(&rank_one()).is_zero());
    }

    #[test]
    fn cousin_examples() {
        let nil = HiggsField::constant([[g(0), g(1)], [g(0), g(0)]]).unwrap();
        let c = cousin_data(&nil).unwrap();
        assert_eq!(c.numers[0], LaurentPoly::zero());
        assert_eq!(c.numers[1], LaurentPoly::constant(GaussianRational::ratio(1, 2)));
        assert_eq!(
            c.numers[2],
            LaurentPoly::constant(GaussianRational::complex_ratio((0, 1), (-1, 2)))
        );
        assert!(c.sum_of_squares().is_zero());

        let zero = cousin_data(&HiggsField::zero()).unwrap();
        assert!(zero.numers.iter().all(LaurentPoly::is_zero));

        let c = cousin_data(&rank_one()).unwrap();
        let half = GaussianRational::ratio(1, 2);
        let half_i = GaussianRational::complex_ratio((0, 1), (1, 2));
        assert_eq!(c.numers[0], lp(&[(1, 1)]));
        assert_eq!(c.numers[1], lp(&[(0, 1), (2, -1)]).scale(&half));
        assert_eq!(c.numers[2], lp(&[(0, 1), (2, 1)]).scale(&half_i));
        assert!(c.sum_of_squares().is_zero());

        let diag = HiggsField::constant([[g(1), g(0)], [g(0), g(-1)]]).unwrap();
        assert!(matches!(cousin_data(&diag), Err(ConnectionError::NotNull(_))));
    }

    #[test]
    fn trace_free_is_enforced() {
        let m = LaurentMatrix::constant([[g(1), g(0)], [g(0), g(1)]]);
        assert!(matches!(HiggsField::new(m, LaurentPoly::one()), Err(ConnectionError::NotTraceFree(_))));
        assert_eq!(
            HiggsField::new(LaurentMatrix::zero(), LaurentPoly::zero()),
            Err(ConnectionError::ZeroDenominator)
        );
    }

    #[test]
    fn cayley_hamilton_on_random_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let t = random_trace_free_higgs(&mut rng);
            let k = ktuy_check(&t);
            let d = det_higgs(&t);
            assert_eq!(k.trace_theta_sq.numer, d.numer.scale(&g(-2)));
            assert_eq!(k.passes, d.is_zero());
        }
    }

    #[test]
    fn cousin_on_random_null_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let t = random_null_higgs(&mut rng);
            assert!(cousin_data(&t).unwrap().sum_of_squares().is_zero());
        }
    }

    #[test]
    fn frame_fields_are_null_iff_bryant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let a = crate::sampling::random_special_frame(&mut rng, 3, 1);
            let h = HiggsField::from_frame(&a).unwrap();
            assert_eq!(det_higgs(&h).is_zero(), crate::frames::check_bryant(&a).is_bryant);
        }
    }

    #[test]
    fn fuchsian_poles_and_coefficient() {
        let quarter = GaussianRational::ratio(1, 4);
        let h = HiggsField::fuchsian(&[
            (g(0), [[-quarter.clone(), g(0)], [g(0), quarter.clone()]]),
            (g(1), [[g(0), -quarter.clone()], [-quarter.clone(), g(0)]]),
        ])
        .unwrap();
        let mut poles: Vec<f64> = h.poles().iter().map(|p| p.re).collect();
        poles.sort_by(f64::total_cmp);
        assert!((poles[0]).abs() < 1e-14 && (poles[1] - 1.0).abs() < 1e-14);
        let z = Complex64::new(0.3, 0.4);
        let expect = Mat2::diag(-0.25 / z, 0.25 / z)
            + Mat2::new(0.0.into(), -0.25 / (z - 1.0), -0.25 / (z - 1.0), 0.0.into());
        assert!((h.coefficient(z) - expect).frobenius() < 1e-14);
    }

    #[test]
    fn higgs_json_round_trip() {
        let h = rank_one();
        let s = serde_json::to_string(&h).unwrap();
        let back: HiggsField = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
    }
}
