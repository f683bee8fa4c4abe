use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{GaussianRational, LaurentPoly, SeriesError};

/// A quotient `numer / den` of Laurent polynomials.
///
/// Used for coefficients of `dz` or `(dz)²` of forms built from a Higgs
/// field with a scalar denominator. No cancellation is attempted; a form is
/// zero exactly when its numerator is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalForm {
    pub numer: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalForm {
    pub fn new(numer: LaurentPoly, den: LaurentPoly) -> Self {
        Self { numer, den }
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, SeriesError> {
        Ok(self.numer.eval(z)? / self.den.eval(z)?)
    }

    /// Equality as rational functions: `p/q = r/s ⇔ p·s = r·q`.
    pub fn same_function(&self, other: &RationalForm) -> bool {
        &self.numer * &other.den == &other.numer * &self.den
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({}) / ({})", self.numer, self.den)
        }
    }
}

/// Dense polynomial over `Q(i)`, lowest degree first, no trailing zeros.
type Dense = Vec<GaussianRational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rem(mut a: Dense, b: &Dense) -> Dense {
    let lead_inv = b.last().and_then(GaussianRational::inv).expect("nonzero divisor");
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let q = a.last().unwrap() * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            let t = &a[shift + i] - &(&q * c);
            a[shift + i] = t;
        }
        a = trim(a);
    }
    a
}

fn monic(p: Dense) -> Dense {
    match p.last().and_then(GaussianRational::inv) {
        Some(inv) => p.iter().map(|c| c * &inv).collect(),
        None => p,
    }
}

fn gcd_dense(a: Dense, b: Dense) -> Dense {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn derivative_dense(p: &Dense) -> Dense {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
        .collect()
}

fn exact_div(a: &Dense, b: &Dense) -> Dense {
    let lead_inv = b.last().and_then(GaussianRational::inv).expect("nonzero divisor");
    let mut a = a.clone();
    let mut q = vec![GaussianRational::zero(); a.len().saturating_sub(b.len()) + 1];
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let c = a.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            let t = &a[shift + i] - &(&c * bc);
            a[shift + i] = t;
        }
        q[shift] = c;
        a = trim(a);
    }
    trim(q)
}

/// Monic greatest common divisor of the polynomial parts `z^{-lo}·p` of
/// the nonzero inputs, with every root made simple (square-free part).
///
/// The factor `z` is kept when every input vanishes at 0 after shifting;
/// returns `None` when all inputs are zero.
pub(crate) fn squarefree_common_factor(polys: &[&LaurentPoly]) -> Option<Vec<GaussianRational>> {
    let mut acc: Option<Dense> = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let (lo, mut dense) = p.to_dense_shifted();
        // Restore genuine zeros at the origin for holomorphic entries.
        if lo > 0 {
            let mut padded = vec![GaussianRational::zero(); lo as usize];
            padded.append(&mut dense);
            dense = padded;
        }
        acc = Some(match acc {
            None => monic(trim(dense)),
            Some(g) => gcd_dense(g, dense),
        });
    }
    let g = acc?;
    if g.len() <= 1 {
        return Some(vec![GaussianRational::one()]);
    }
    let d = gcd_dense(g.clone(), derivative_dense(&g));
    Some(monic(exact_div(&g, &d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_factor_of_shared_root() {
        // (z-1)²(z+2) and (z-1)(z+3): gcd z - 1
        let p = LaurentPoly::from_ints(&[(0, 2), (1, -3), (3, 1)]);
        let q = LaurentPoly::from_ints(&[(0, -3), (1, 2), (2, 1)]);
        let g = squarefree_common_factor(&[&p, &q]).unwrap();
        assert_eq!(g, vec![GaussianRational::from_int(-1), GaussianRational::from_int(1)]);
    }

    #[test]
    fn squarefree_part_of_power() {
        let p = LaurentPoly::from_ints(&[(4, 7)]);
        let g = squarefree_common_factor(&[&p]).unwrap();
        assert_eq!(g, vec![GaussianRational::zero(), GaussianRational::one()]);
    }

    #[test]
    fn negative_powers_do_not_create_roots_at_zero() {
        let p = LaurentPoly::from_ints(&[(-2, 1)]);
        assert_eq!(squarefree_common_factor(&[&p]).unwrap(), vec![GaussianRational::one()]);
    }

    #[test]
    fn all_zero_is_none() {
        assert!(squarefree_common_factor(&[&LaurentPoly::zero()]).is_none());
    }
}
