//! Laurent polynomials with exact Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{GaussianRational, SeriesError};

/// A finite sum `Σ c_k z^k`, `k ∈ Z`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so the
/// lowest and highest exponents are the first and last entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, GaussianRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·z^k`.
    pub fn monomial(c: GaussianRational, k: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(k, c)] }
        }
    }

    /// The coordinate `z`.
    pub fn z() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    /// `z^k` with unit coefficient.
    pub fn z_pow(k: i32) -> Self {
        Self::monomial(GaussianRational::one(), k)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, GaussianRational)>,
    {
        let mut acc: BTreeMap<i32, GaussianRational> = BTreeMap::new();
        for (k, c) in terms {
            *acc.entry(k).or_default() += &c;
        }
        Self::from_sorted_map(acc)
    }

    /// Integer coefficients, e.g. `from_ints(&[(-1, 1), (1, 1)])` is `z⁻¹ + z`.
    pub fn from_ints(terms: &[(i32, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(k, c)| (k, GaussianRational::from_int(c))),
        )
    }

    fn from_sorted_map(map: BTreeMap<i32, GaussianRational>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i32, GaussianRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest_exp(&self) -> Option<i32> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn highest_exp(&self) -> Option<i32> {
        self.terms.last().map(|(k, _)| *k)
    }

    /// Coefficient of `z^k` (zero when absent).
    pub fn coeff(&self, k: i32) -> GaussianRational {
        self.terms
            .binary_search_by_key(&k, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// `true` iff this is the constant `c` (including `c = 0`).
    pub fn is_constant(&self) -> bool {
        matches!(self.terms.as_slice(), [] | [(0, _)])
    }

    /// Order of the pole at `z = 0`; zero for holomorphic polynomials and,
    /// by convention, for the zero polynomial.
    pub fn pole_order(&self) -> u32 {
        match self.lowest_exp() {
            Some(k) if k < 0 => k.unsigned_abs(),
            _ => 0,
        }
    }

    /// Formal derivative `d/dz`.
    pub fn derivative(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| *k != 0)
                .map(|(k, c)| (k - 1, c * &GaussianRational::from_int(i64::from(*k))))
                .collect(),
        }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Complex conjugation of the coefficients.
    pub fn conj_coeffs(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Numerical value at `z`.
    ///
    /// The nonnegative and negative parts are each summed by Horner's rule,
    /// in `z` and `1/z` respectively.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, SeriesError> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let lo = self.lowest_exp().unwrap_or(0);
        if lo < 0 && z == Complex64::new(0.0, 0.0) {
            return Err(SeriesError::PoleAtZero);
        }
        let mut pos = Complex64::new(0.0, 0.0);
        let hi = self.highest_exp().unwrap_or(0);
        if hi >= 0 {
            let mut it = self.terms.iter().rev().filter(|(k, _)| *k >= 0).peekable();
            for k in (0..=hi).rev() {
                pos *= z;
                if let Some((e, c)) = it.peek() {
                    if *e == k {
                        pos += c.to_complex64();
                        it.next();
                    }
                }
            }
        }
        let mut neg = Complex64::new(0.0, 0.0);
        if lo < 0 {
            let w = z.inv();
            let mut it = self.terms.iter().filter(|(k, _)| *k < 0).peekable();
            for k in lo..0 {
                if let Some((e, c)) = it.peek() {
                    if *e == k {
                        neg += c.to_complex64();
                        it.next();
                    }
                }
                neg *= w;
            }
        }
        Ok(pos + neg)
    }

    /// Coefficients of `z^{-lo}·p` as an ordinary polynomial, lowest degree first.
    pub(crate) fn to_dense_shifted(&self) -> (i32, Vec<GaussianRational>) {
        let Some(lo) = self.lowest_exp() else {
            return (0, Vec::new());
        };
        let hi = self.highest_exp().unwrap_or(lo);
        let mut dense = vec![GaussianRational::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.terms {
            dense[(k - lo) as usize] = c.clone();
        }
        (lo, dense)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

fn merge(p: &LaurentPoly, q: &LaurentPoly, negate_q: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &GaussianRational| if negate_q { -c } else { c.clone() };
    while i < p.terms.len() || j < q.terms.len() {
        match (p.terms.get(i), q.terms.get(j)) {
            (Some((a, ca)), Some((b, cb))) if a == b => {
                let s = if negate_q { ca - cb } else { ca + cb };
                if !s.is_zero() {
                    out.push((*a, s));
                }
                i += 1;
                j += 1;
            }
            (Some((a, ca)), Some((b, _))) if a < b => {
                out.push((*a, ca.clone()));
                i += 1;
            }
            (Some(_), Some((b, cb))) => {
                out.push((*b, sign(cb)));
                j += 1;
            }
            (Some((a, ca)), None) => {
                out.push((*a, ca.clone()));
                i += 1;
            }
            (None, Some((b, cb))) => {
                out.push((*b, sign(cb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    LaurentPoly { terms: out }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i32, GaussianRational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                *acc.entry(a + b).or_default() += &(ca * cb);
            }
        }
        LaurentPoly::from_sorted_map(acc)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<GaussianRational> for LaurentPoly {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}
