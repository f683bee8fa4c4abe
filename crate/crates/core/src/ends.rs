//! Ends of finite type: the singular connection `∇_α` on the punctured disk,
//! the quadratic differential `Ω_α`, the punctured-disk Bryant equations,
//! pole-order bounds and the local parabolic structure.
//!
//! Frames use the column convention `s = (a, c)`, `t = (b, d)` for
//! `A = [[a, b], [c, d]]`, and `Γ_α = diag(α, −α)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::connection::HiggsField;
use crate::mat2::Mat2;
use crate::series::{parse_rational, GaussianRational, LaurentMatrix, LaurentPoly, SeriesError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EndsError {
    #[error("weight {0} is outside [0, 1)")]
    WeightOutOfRange(String),
    #[error(transparent)]
    Parse(#[from] SeriesError),
    #[error("s ∧ t = {0} has a pole at 0")]
    HypothesisViolated(String),
    #[error("holonomy is not in SU(2): unitary defect {unitary_defect:e}, det defect {det_defect:e}")]
    NotUnitary { unitary_defect: f64, det_defect: f64 },
    #[error("parabolic structure needs non-trivial holonomy (α > 0)")]
    TrivialHolonomy,
    #[error("conjugating matrix is singular")]
    SingularConjugator,
}

/// The model end `∇_α = d − Γ_α dz/z` with exact weight `0 ≤ α < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularEnd {
    alpha: BigRational,
}

impl SingularEnd {
    pub fn new(alpha: BigRational) -> Result<Self, EndsError> {
        if alpha.is_negative() || alpha >= BigRational::from_integer(1.into()) {
            return Err(EndsError::WeightOutOfRange(alpha.to_string()));
        }
        Ok(Self { alpha })
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self, EndsError> {
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64().unwrap_or(f64::NAN)
    }

    fn alpha_gr(&self) -> GaussianRational {
        GaussianRational::real(self.alpha.clone())
    }

    /// `Γ_α = diag(α, −α)`.
    pub fn residue(&self) -> LaurentMatrix {
        let a = LaurentPoly::constant(self.alpha_gr());
        LaurentMatrix::diag(a.clone(), -a)
    }

    /// `Θ = −Γ_α dz/z`, the field of `∇_α` under `∇ = d + Θ`.
    pub fn as_higgs(&self) -> HiggsField {
        HiggsField::new(-&self.residue(), LaurentPoly::z()).expect("trace-free residue")
    }

    /// Counterclockwise monodromy `diag(e^{2πiα}, e^{−2πiα})`.
    pub fn monodromy(&self) -> Mat2 {
        let phase = Complex64::new(0.0, 2.0 * std::f64::consts::PI * self.alpha_f64()).exp();
        Mat2::diag(phase, phase.conj())
    }
}

impl std::str::FromStr for SingularEnd {
    type Err = EndsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_rational(s)?)
    }
}

impl Serialize for SingularEnd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.alpha.to_string())
    }
}

/// A pair of meromorphic sections `(s, t)`, the columns of a frame matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MeromorphicFramePair {
    pub s: [LaurentPoly; 2],
    pub t: [LaurentPoly; 2],
}

impl MeromorphicFramePair {
    pub fn new(s: [LaurentPoly; 2], t: [LaurentPoly; 2]) -> Self {
        Self { s, t }
    }

    pub fn from_matrix(m: &LaurentMatrix) -> Self {
        Self {
            s: [m.a.clone(), m.c.clone()],
            t: [m.b.clone(), m.d.clone()],
        }
    }

    pub fn matrix(&self) -> LaurentMatrix {
        LaurentMatrix::new(
            self.s[0].clone(),
            self.t[0].clone(),
            self.s[1].clone(),
            self.t[1].clone(),
        )
    }

    /// Smallest `n ≥ 0` with `zⁿs`, `zⁿt` holomorphic at 0.
    pub fn order(&self) -> u32 {
        self.s.iter().chain(&self.t).map(LaurentPoly::pole_order).max().unwrap_or(0)
    }

    /// `s ∧ t = ad − bc`.
    pub fn wedge(&self) -> LaurentPoly {
        &(&self.s[0] * &self.t[1]) - &(&self.t[0] * &self.s[1])
    }
}

/// `∇_α (f, g) = (f′ − αf/z, g′ + αg/z)`, as coefficients of `dz`.
pub fn nabla_alpha(end: &SingularEnd, section: &[LaurentPoly; 2]) -> [LaurentPoly; 2] {
    let a = end.alpha_gr();
    let [f, g] = section;
    [
        &f.derivative() - &f.shift(-1).scale(&a),
        &g.derivative() + &g.shift(-1).scale(&a),
    ]
}

/// `z·A′ − Γ_α·A`, so that `∇_α` applied to both columns is this over `z`.
fn scaled_nabla_matrix(end: &SingularEnd, m: &LaurentMatrix) -> LaurentMatrix {
    &m.derivative().shift(1) - &(&end.residue() * m)
}

/// `Ω_α(s, t) = ∇_α s ∧ ∇_α t = det(A′ − Γ_α·A/z)`, the coefficient of `dz²`.
pub fn omega_alpha(end: &SingularEnd, frame: &MeromorphicFramePair) -> LaurentPoly {
    scaled_nabla_matrix(end, &frame.matrix()).det().shift(-2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StareqResiduals {
    /// `ad − bc − 1`.
    pub r1: LaurentPoly,
    /// `z²(a′d′ − b′c′) + zα(a′d − ad′ − b′c + bc′) − α²`.
    pub r2: LaurentPoly,
}

impl StareqResiduals {
    pub fn is_solution(&self) -> bool {
        self.r1.is_zero() && self.r2.is_zero()
    }
}

/// Residuals of the Bryant equations for the punctured disk.
pub fn stareq_residuals(end: &SingularEnd, frame: &MeromorphicFramePair) -> StareqResiduals {
    let [a, c] = &frame.s;
    let [b, d] = &frame.t;
    let (da, db, dc, dd) = (a.derivative(), b.derivative(), c.derivative(), d.derivative());
    let alpha = end.alpha_gr();
    let r1 = &frame.wedge() - &LaurentPoly::one();
    let quad = (&(&da * &dd) - &(&db * &dc)).shift(2);
    let mixed = &(&(&da * d) - &(a * &dd)) - &(&(&db * c) - &(b * &dc));
    let r2 = &(&quad + &mixed.shift(1).scale(&alpha))
        - &LaurentPoly::constant(&alpha * &alpha);
    StareqResiduals { r1, r2 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PoloBound {
    pub order_n: u32,
    pub pole_order_omega: u32,
    pub bound: u32,
    pub passes: bool,
}

/// Pole order of `Ω_α` against `2n + 1` (`α > 0`) or `2n` (`α = 0`).
pub fn polo_bound_check(end: &SingularEnd, frame: &MeromorphicFramePair) -> Result<PoloBound, EndsError> {
    let wedge = frame.wedge();
    if wedge.pole_order() > 0 {
        return Err(EndsError::HypothesisViolated(wedge.to_string()));
    }
    let n = frame.order();
    let bound = if end.alpha.is_zero() { 2 * n } else { 2 * n + 1 };
    let pole_order_omega = omega_alpha(end, frame).pole_order();
    Ok(PoloBound {
        order_n: n,
        pole_order_omega,
        bound,
        passes: pole_order_omega <= bound,
    })
}

/// Weight read off a holonomy matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightEstimate {
    pub alpha: f64,
    /// Continued-fraction reconstruction, when one with denominator
    /// `≤ MAX_DENOMINATOR` lies within tolerance.
    #[serde(serialize_with = "ser_opt_rational")]
    pub rational: Option<BigRational>,
}

impl WeightEstimate {
    pub fn is_rational(&self) -> bool {
        self.rational.is_some()
    }
}

fn ser_opt_rational<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

pub const MAX_DENOMINATOR: i64 = 1_000_000;

/// Best rational approximation of `x ∈ [0, 1]` among continued-fraction
/// convergents with denominator at most `max_den`, if within `eps`.
pub fn rational_approximation(x: f64, eps: f64, max_den: i64) -> Option<BigRational> {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let a_int = a as i64;
        let (p2, q2) = (a_int * p1 + p0, a_int * q1 + q0);
        if q2 > max_den {
            return None;
        }
        if (x - p2 as f64 / q2 as f64).abs() <= eps {
            return Some(BigRational::new(BigInt::from(p2), BigInt::from(q2)));
        }
        let frac = r - a;
        if frac <= 0.0 {
            return None;
        }
        r = 1.0 / frac;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

/// Recovers `α ∈ [0, 1)` from an `SU(2)` holonomy `U ~ diag(e^{2πiα}, e^{−2πiα})`.
///
/// Of the eigenvalues `e^{±iθ}`, the one whose eigenvector is closest to the
/// first basis vector is taken, so diagonal holonomies return `α` and not
/// `1 − α`.
pub fn weight_from_holonomy(u: &Mat2, tol: f64) -> Result<WeightEstimate, EndsError> {
    let unitary_defect = u.unitary_defect();
    let det_defect = (u.det() - 1.0).norm();
    if unitary_defect > tol || det_defect > tol {
        return Err(EndsError::NotUnitary {
            unitary_defect,
            det_defect,
        });
    }
    let e1 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let [l1, l2] = u.eigenvalues();
    let lambda = if crate::mat2::line_overlap(u.eigenvector(l1), e1)
        >= crate::mat2::line_overlap(u.eigenvector(l2), e1)
    {
        l1
    } else {
        l2
    };
    let turns = lambda.arg() / (2.0 * std::f64::consts::PI);
    let mut alpha = turns.rem_euclid(1.0);
    let eps = tol.max(1e-15);
    let mut rational = rational_approximation(alpha, eps, MAX_DENOMINATOR);
    if rational.as_ref().is_some_and(|r| r == &BigRational::from_integer(1.into())) {
        rational = Some(BigRational::zero());
    }
    if alpha > 1.0 - eps {
        alpha = 0.0;
    }
    Ok(WeightEstimate { alpha, rational })
}

/// Weight and flag of the end: `W = ker(Γ − α)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalParabolicStructure {
    #[serde(serialize_with = "ser_rational")]
    pub weight: BigRational,
    /// Unit vector spanning the flag line, as `[[re, im], [re, im]]`.
    #[serde(serialize_with = "ser_vector")]
    pub flag_line: [Complex64; 2],
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_vector<S: Serializer>(v: &[Complex64; 2], s: S) -> Result<S::Ok, S::Error> {
    [[v[0].re, v[0].im], [v[1].re, v[1].im]].serialize(s)
}

pub fn local_parabolic(end: &SingularEnd) -> Result<LocalParabolicStructure, EndsError> {
    if end.alpha.is_zero() {
        return Err(EndsError::TrivialHolonomy);
    }
    Ok(LocalParabolicStructure {
        weight: end.alpha.clone(),
        flag_line: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    })
}

/// Parabolic structure of the end conjugated by `u`, whose residue is
/// `u·Γ_α·u⁻¹`; the flag is its `α`-eigenline.
pub fn local_parabolic_conjugated(
    end: &SingularEnd,
    u: &Mat2,
) -> Result<LocalParabolicStructure, EndsError> {
    let base = local_parabolic(end)?;
    let inv = u.inverse().ok_or(EndsError::SingularConjugator)?;
    let a = end.alpha_f64();
    let residue = *u * Mat2::diag(a.into(), (-a).into()) * inv;
    Ok(LocalParabolicStructure {
        flag_line: residue.eigenvector(a.into()),
        ..base
    })
}

/// `‖(Γ − weight)·v‖` for a residue `Γ` and flag vector `v`.
pub fn flag_residual(residue: &Mat2, structure: &LocalParabolicStructure) -> f64 {
    let w = structure.weight.to_f64().unwrap_or(f64::NAN);
    let v = (*residue - Mat2::identity() * w).apply(structure.flag_line);
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// Hermitian metric `diag(|z|^{−2α}, |z|^{2α})`, flat for `∇_α`.
pub fn end_metric(alpha: f64, z: Complex64) -> Mat2 {
    let w = z.norm_sqr();
    Mat2::diag(w.powf(-alpha).into(), w.powf(alpha).into())
}

/// `|∂_e⟨s, s⟩ − 2·Re⟨∇_e s, s⟩|` at `z` along direction `e`, with the
/// derivative of the norm taken by central differences of width `step`.
/// Vanishes (to `O(step²)`) when `metric` is compatible with `∇_α`.
pub fn compatibility_defect(
    end: &SingularEnd,
    metric: impl Fn(f64, Complex64) -> Mat2,
    section: &[LaurentPoly; 2],
    z: Complex64,
    direction: Complex64,
    step: f64,
) -> Result<f64, EndsError> {
    let alpha = end.alpha_f64();
    let pair = |p: &[LaurentPoly; 2], w: Complex64| -> Result<[Complex64; 2], EndsError> {
        Ok([p[0].eval(w)?, p[1].eval(w)?])
    };
    let inner = |h: &Mat2, x: [Complex64; 2], y: [Complex64; 2]| {
        let hy = h.apply(y);
        x[0] * hy[0].conj() + x[1] * hy[1].conj()
    };
    let norm_at = |w: Complex64| -> Result<f64, EndsError> {
        let s = pair(section, w)?;
        Ok(inner(&metric(alpha, w), s, s).re)
    };
    let d_norm = (norm_at(z + direction * step)? - norm_at(z - direction * step)?) / (2.0 * step);
    let s = pair(section, z)?;
    let ns = pair(&nabla_alpha(end, section), z)?;
    let ns = [ns[0] * direction, ns[1] * direction];
    let rhs = 2.0 * inner(&metric(alpha, z), ns, s).re;
    Ok((d_norm - rhs).abs())
}

/// End-analysis report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndReport {
    pub alpha: SingularEnd,
    pub order_n: u32,
    pub omega_pole_order: u32,
    pub polo_bound: u32,
    pub polo_pass: bool,
    pub stareq_pass: bool,
    pub r1: String,
    pub r2: String,
    pub parabolic: Option<LocalParabolicStructure>,
}

impl EndReport {
    pub fn passes(&self) -> bool {
        self.polo_pass && self.stareq_pass
    }
}

pub fn end_report(end: &SingularEnd, frame: &MeromorphicFramePair) -> Result<EndReport, EndsError> {
    let polo = polo_bound_check(end, frame)?;
    let res = stareq_residuals(end, frame);
    Ok(EndReport {
        alpha: end.clone(),
        order_n: polo.order_n,
        omega_pole_order: polo.pole_order_omega,
        polo_bound: polo.bound,
        polo_pass: polo.passes,
        stareq_pass: res.is_solution(),
        r1: res.r1.to_string(),
        r2: res.r2.to_string(),
        parabolic: local_parabolic(end).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{parallel_transport, PathLoop, TransportControls};
    use crate::frames::omega_quadratic;
    use crate::sampling::random_frame_of_order;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn end(n: i64, d: i64) -> SingularEnd {
        SingularEnd::ratio(n, d).unwrap()
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(terms)
    }

    fn q(n: i64, d: i64) -> LaurentPoly {
        LaurentPoly::constant(GaussianRational::ratio(n, d))
    }

    fn diag_frame(k: i32) -> MeromorphicFramePair {
        MeromorphicFramePair::from_matrix(&LaurentMatrix::diag(
            LaurentPoly::z_pow(k),
            LaurentPoly::z_pow(-k),
        ))
    }

    fn identity() -> MeromorphicFramePair {
        MeromorphicFramePair::from_matrix(&LaurentMatrix::identity())
    }

    #[test]
    fn weights_are_validated() {
        assert!(SingularEnd::ratio(1, 1).is_err());
        assert!(SingularEnd::ratio(-1, 3).is_err());
        assert!("3/4".parse::<SingularEnd>().is_ok());
        assert!("0.5".parse::<SingularEnd>().is_err());
    }

    #[test]
    fn nabla_examples() {
        let one = LaurentPoly::one();
        let r = nabla_alpha(&end(0, 1), &[one.clone(), one]);
        assert!(r[0].is_zero() && r[1].is_zero());
        let r = nabla_alpha(&end(1, 2), &[LaurentPoly::z(), LaurentPoly::zero()]);
        assert_eq!(r, [q(1, 2), LaurentPoly::zero()]);
        let r = nabla_alpha(&end(1, 3), &[LaurentPoly::zero(), LaurentPoly::z_pow(-1)]);
        assert_eq!(r[1], LaurentPoly::monomial(GaussianRational::ratio(-2, 3), -2));
    }

    #[test]
    fn omega_examples() {
        for (n, d) in [(0, 1), (1, 4), (1, 2), (2, 3)] {
            let e = end(n, d);
            let a = GaussianRational::ratio(n, d);
            let one = GaussianRational::from_int(1);
            let m = &one - &a;
            let p = &one + &a;
            assert_eq!(omega_alpha(&e, &diag_frame(1)), LaurentPoly::monomial(-(&m * &m), -2));
            assert_eq!(omega_alpha(&e, &diag_frame(-1)), LaurentPoly::monomial(-(&p * &p), -2));
        }
        assert!(omega_alpha(&end(0, 1), &identity()).is_zero());
    }

    #[test]
    fn stareq_examples() {
        let r = stareq_residuals(&end(0, 1), &identity());
        assert!(r.is_solution());
        let r = stareq_residuals(&end(1, 4), &identity());
        assert!(r.r1.is_zero());
        assert_eq!(r.r2, q(-1, 16));
        let r = stareq_residuals(&end(1, 2), &diag_frame(1));
        assert!(r.r1.is_zero());
        assert_eq!(r.r2, q(-1, 4));
    }

    #[test]
    fn polo_examples() {
        let p = polo_bound_check(&end(1, 2), &diag_frame(1)).unwrap();
        assert_eq!((p.order_n, p.pole_order_omega, p.bound, p.passes), (1, 2, 3, true));
        let p = polo_bound_check(&end(0, 1), &diag_frame(1)).unwrap();
        assert_eq!((p.pole_order_omega, p.bound, p.passes), (2, 2, true));
        // Ω_α(identity) = −α²/z²: order-0 frames exceed 2n + 1 when α > 0.
        let p = polo_bound_check(&end(1, 4), &identity()).unwrap();
        assert_eq!((p.order_n, p.pole_order_omega, p.bound, p.passes), (0, 2, 1, false));
        let bad = MeromorphicFramePair::new(
            [LaurentPoly::z_pow(-1), LaurentPoly::zero()],
            [LaurentPoly::zero(), LaurentPoly::one()],
        );
        assert!(matches!(
            polo_bound_check(&end(1, 4), &bad),
            Err(EndsError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn omega_matches_stareq_and_quadratic_on_random_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..120 {
            let m = random_frame_of_order(&mut rng, (k % 5) as u32);
            let f = MeromorphicFramePair::from_matrix(&m);
            assert_eq!(&m * &m.adjugate(), LaurentMatrix::identity());
            for (n, d) in [(0, 1), (1, 4), (1, 2), (3, 4)] {
                let e = end(n, d);
                let r = stareq_residuals(&e, &f);
                assert!(r.r1.is_zero());
                assert_eq!(r.r2, omega_alpha(&e, &f).shift(2));
            }
            assert_eq!(omega_alpha(&end(0, 1), &f), omega_quadratic(&m));
        }
    }

    #[test]
    fn polo_bound_holds_for_positive_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 0..100 {
            let m = random_frame_of_order(&mut rng, 1 + (k % 4) as u32);
            let f = MeromorphicFramePair::from_matrix(&m);
            for (n, d) in [(0, 1), (1, 4), (1, 2), (3, 4)] {
                assert!(polo_bound_check(&end(n, d), &f).unwrap().passes, "{m}");
            }
        }
    }

    #[test]
    fn weight_examples() {
        let w = |u: Mat2| weight_from_holonomy(&u, 1e-8).unwrap().rational.unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(w(Mat2::identity()), r(0, 1));
        assert_eq!(w(Mat2::diag(Complex64::i(), -Complex64::i())), r(1, 4));
        assert_eq!(w(Mat2::identity() * -1.0), r(1, 2));
        assert!(matches!(
            weight_from_holonomy(&(Mat2::identity() * 2.0), 1e-8),
            Err(EndsError::NotUnitary { .. })
        ));
        let irr = 0.5 * (5f64.sqrt() - 1.0);
        let phase = Complex64::new(0.0, 2.0 * std::f64::consts::PI * irr).exp();
        let est = weight_from_holonomy(&Mat2::diag(phase, phase.conj()), 1e-13).unwrap();
        assert!(!est.is_rational());
        assert!((est.alpha - irr).abs() < 1e-12);
    }

    #[test]
    fn weight_round_trip_through_transport() {
        let ctl = TransportControls::default().with_rtol(1e-12).with_atol(1e-14);
        let circle = PathLoop::circle(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        for (n, d) in [(0, 1), (1, 6), (1, 4), (1, 3), (1, 2), (2, 3)] {
            let e = end(n, d);
            let u = parallel_transport(&e.as_higgs(), &circle, &ctl).unwrap();
            assert!((u - e.monodromy()).frobenius() < 1e-9);
            let est = weight_from_holonomy(&u, 1e-8).unwrap();
            assert_eq!(est.rational.as_ref(), Some(e.alpha()));
        }
    }

    #[test]
    fn parabolic_structures() {
        let p = local_parabolic(&end(1, 3)).unwrap();
        assert_eq!(p.weight, BigRational::new(1.into(), 3.into()));
        assert_eq!(p.flag_line[0], Complex64::new(1.0, 0.0));
        assert_eq!(local_parabolic(&end(0, 1)), Err(EndsError::TrivialHolonomy));

        let c = 0.8f64;
        let u = Mat2::new(c.into(), Complex64::new(0.0, 0.6), Complex64::new(0.0, 0.6), c.into());
        let e = end(1, 3);
        let p = local_parabolic_conjugated(&e, &u).unwrap();
        let expect = u.apply([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert!((crate::mat2::line_overlap(p.flag_line, expect) - 1.0).abs() < 1e-10);
        let third = 1.0 / 3.0;
        let residue = u * Mat2::diag(third.into(), (-third).into()) * u.inverse().unwrap();
        assert!(flag_residual(&residue, &p) < 1e-10);
    }

    #[test]
    fn model_metric_is_compatible() {
        let e = end(1, 3);
        let sections = [
            [LaurentPoly::one(), LaurentPoly::zero()],
            [lp(&[(0, 1), (2, 3)]), lp(&[(-1, 2), (1, -1)])],
        ];
        let swapped = |a: f64, z: Complex64| end_metric(-a, z);
        for s in &sections {
            for z in [Complex64::new(0.7, 0.2), Complex64::new(-0.4, 1.1)] {
                for dir in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
                    let good = compatibility_defect(&e, end_metric, s, z, dir, 1e-5).unwrap();
                    assert!(good < 1e-6, "{good}");
                }
            }
        }
        let bad = compatibility_defect(
            &e,
            swapped,
            &sections[0],
            Complex64::new(0.7, 0.2),
            Complex64::new(1.0, 0.0),
            1e-5,
        )
        .unwrap();
        assert!(bad > 0.1);
    }

    #[test]
    fn report_json() {
        let r = end_report(&end(1, 2), &diag_frame(1)).unwrap();
        assert!(r.polo_pass && !r.stareq_pass && !r.passes());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["alpha"], "1/2");
        assert_eq!(v["omega_pole_order"], 2);
        assert_eq!(v["parabolic"]["weight"], "1/2");
        let r = end_report(&end(0, 1), &identity()).unwrap();
        assert!(r.passes() && r.parabolic.is_none());
    }
}
