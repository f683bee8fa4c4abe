use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{GaussianRational, LaurentPoly, SeriesError};
use crate::mat2::Mat2;

/// A 2×2 matrix `[[a, b], [c, d]]` of Laurent polynomials.
///
/// When the matrix is a frame its first column is the section `s` and its
/// second column is `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentMatrix {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
    pub d: LaurentPoly,
}

impl LaurentMatrix {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(
            LaurentPoly::one(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::one(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Constant matrix from four coefficients.
    pub fn constant(m: [[GaussianRational; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn diag(a: LaurentPoly, d: LaurentPoly) -> Self {
        Self::new(a, LaurentPoly::zero(), LaurentPoly::zero(), d)
    }

    /// `[[1, p], [0, 1]]`.
    pub fn upper_unipotent(p: LaurentPoly) -> Self {
        Self::new(LaurentPoly::one(), p, LaurentPoly::zero(), LaurentPoly::one())
    }

    /// `[[1, 0], [p, 1]]`.
    pub fn lower_unipotent(p: LaurentPoly) -> Self {
        Self::new(LaurentPoly::one(), LaurentPoly::zero(), p, LaurentPoly::one())
    }

    pub fn entries(&self) -> [&LaurentPoly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.a + &self.d
    }

    /// Entrywise derivative.
    pub fn derivative(&self) -> Self {
        self.map(LaurentPoly::derivative)
    }

    /// `[[d, -b], [-c, a]]`; equals the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        self.map(|p| p.scale(s))
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        self.map(|e| e * p)
    }

    pub fn shift(&self, k: i32) -> Self {
        self.map(|p| p.shift(k))
    }

    pub fn swap_rows(&self) -> Self {
        Self::new(self.c.clone(), self.d.clone(), self.a.clone(), self.b.clone())
    }

    /// Exchanges the frame sections `s` and `t`.
    pub fn swap_columns(&self) -> Self {
        Self::new(self.b.clone(), self.a.clone(), self.d.clone(), self.c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|p| p.is_zero())
    }

    /// Largest pole order at `z = 0` over the four entries.
    pub fn pole_order(&self) -> u32 {
        self.entries().iter().map(|p| p.pole_order()).max().unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Result<Mat2, SeriesError> {
        Ok(Mat2::new(
            self.a.eval(z)?,
            self.b.eval(z)?,
            self.c.eval(z)?,
            self.d.eval(z)?,
        ))
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl<'a> Mul<&'a LaurentMatrix> for &'a LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, r: &'a LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix::new(
            &(&self.a * &r.a) + &(&self.b * &r.c),
            &(&self.a * &r.b) + &(&self.b * &r.d),
            &(&self.c * &r.a) + &(&self.d * &r.c),
            &(&self.c * &r.b) + &(&self.d * &r.d),
        )
    }
}

impl<'a> Add<&'a LaurentMatrix> for &'a LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, r: &'a LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix::new(&self.a + &r.a, &self.b + &r.b, &self.c + &r.c, &self.d + &r.d)
    }
}

impl<'a> Sub<&'a LaurentMatrix> for &'a LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, r: &'a LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix::new(&self.a - &r.a, &self.b - &r.b, &self.c - &r.c, &self.d - &r.d)
    }
}

impl Neg for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn neg(self) -> LaurentMatrix {
        self.map(|p| -p)
    }
}
