//! Numerical 2×2 complex matrices.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major `[[a, b], [c, d]]` over `f64` complex numbers.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self::new(a, ZERO, ZERO, d)
    }

    pub fn real(m: [[f64; 2]; 2]) -> Self {
        Self::new(
            m[0][0].into(),
            m[0][1].into(),
            m[1][0].into(),
            m[1][1].into(),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    /// Classical adjugate `[[d, -b], [-c, a]]`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        Some(self.adjugate().scale(det.inv()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn frobenius(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm()).max(self.d.norm())
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// `‖M·M* − I‖_F`.
    pub fn unitary_defect(&self) -> f64 {
        (*self * self.adjoint() - Self::identity()).frobenius()
    }

    /// Group commutator `X·Y·X⁻¹·Y⁻¹`.
    pub fn group_commutator(&self, other: &Self) -> Option<Self> {
        Some(*self * *other * self.inverse()? * other.inverse()?)
    }

    /// Eigenvalues, the one with the larger real part first when they differ.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half_tr = self.trace() * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let (l1, l2) = (half_tr + disc, half_tr - disc);
        if l1.re >= l2.re {
            [l1, l2]
        } else {
            [l2, l1]
        }
    }

    /// Unit eigenvector for eigenvalue `lambda`, taken from the better
    /// conditioned row of `M − λI`.
    pub fn eigenvector(&self, lambda: Complex64) -> [Complex64; 2] {
        let (a, b, c, d) = (self.a - lambda, self.b, self.c, self.d - lambda);
        let row1 = a.norm_sqr() + b.norm_sqr();
        let row2 = c.norm_sqr() + d.norm_sqr();
        let v = if row1 == 0.0 && row2 == 0.0 {
            [ONE, ZERO]
        } else if row1 >= row2 {
            [b, -a]
        } else {
            [d, -c]
        };
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    }

    pub fn to_array(&self) -> [[[f64; 2]; 2]; 2] {
        let p = |z: Complex64| [z.re, z.im];
        [[p(self.a), p(self.b)], [p(self.c), p(self.d)]]
    }

    pub fn from_array(m: [[[f64; 2]; 2]; 2]) -> Self {
        let z = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        Self::new(z(m[0][0]), z(m[0][1]), z(m[1][0]), z(m[1][1]))
    }
}

/// `|⟨u, v⟩|` for unit vectors: 1 when they span the same line.
pub fn line_overlap(u: [Complex64; 2], v: [Complex64; 2]) -> f64 {
    (u[0].conj() * v[0] + u[1].conj() * v[1]).norm()
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        Mat2::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, r: Mat2) {
        *self = *self + r;
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self * -1.0
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::from_array(<[[[f64; 2]; 2]; 2]>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenpairs_of_conjugated_diagonal() {
        let u = Mat2::real([[0.6, -0.8], [0.8, 0.6]]);
        let m = u * Mat2::diag(0.25.into(), (-0.25).into()) * u.adjoint();
        let [l1, l2] = m.eigenvalues();
        assert!((l1 - 0.25).norm() < 1e-14 && (l2 + 0.25).norm() < 1e-14);
        let v = m.eigenvector(l1);
        assert!((line_overlap(v, u.apply([ONE, ZERO])) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_defect_of_rotation_is_zero() {
        let u = Mat2::diag(Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -0.3));
        assert!(u.unitary_defect() < 1e-15);
    }
}
