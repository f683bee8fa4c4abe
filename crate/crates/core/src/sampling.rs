//! Random exact objects for property checks and demonstrations.
//!
//! Every generator produces its invariant by construction: special frames
//! are products of unipotent matrices (determinant one without solving
//! anything), null Higgs fields are rank-one nilpotents.

use rand::Rng;

use crate::connection::HiggsField;
use crate::series::{GaussianRational, LaurentMatrix, LaurentPoly};

fn small_coeff<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    let den = rng.gen_range(1..=3);
    let re = rng.gen_range(-4..=4);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-3..=3) } else { 0 };
    GaussianRational::complex_ratio((re, den), (im, den))
}

/// Up to `max_terms` terms with exponents in `lo..=hi`.
pub fn random_laurent<R: Rng + ?Sized>(rng: &mut R, lo: i32, hi: i32, max_terms: usize) -> LaurentPoly {
    let n = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms((0..n).map(|_| (rng.gen_range(lo..=hi), small_coeff(rng))))
}

/// Nonzero variant of [`random_laurent`].
pub fn random_nonzero_laurent<R: Rng + ?Sized>(rng: &mut R, lo: i32, hi: i32, max_terms: usize) -> LaurentPoly {
    loop {
        let p = random_laurent(rng, lo, hi, max_terms.max(1));
        if !p.is_zero() {
            return p;
        }
    }
}

/// Product of `1..=max_factors` alternating upper/lower unipotent matrices
/// with off-diagonal entries of exponent range `-max_neg..=2`.
pub fn random_special_frame<R: Rng + ?Sized>(rng: &mut R, max_factors: usize, max_neg: i32) -> LaurentMatrix {
    let factors = rng.gen_range(1..=max_factors.max(1));
    let mut upper = rng.gen_bool(0.5);
    let mut m = LaurentMatrix::identity();
    for _ in 0..factors {
        let p = random_nonzero_laurent(rng, -max_neg, 2, 3);
        let f = if upper {
            LaurentMatrix::upper_unipotent(p)
        } else {
            LaurentMatrix::lower_unipotent(p)
        };
        m = &m * &f;
        upper = !upper;
    }
    m
}

/// A special frame with pole order exactly `order` at the origin, built as
/// a unipotent product times `diag(z^k, z^-k)`; rejection-sampled.
pub fn random_frame_of_order<R: Rng + ?Sized>(rng: &mut R, order: u32) -> LaurentMatrix {
    loop {
        let max_neg = rng.gen_range(0..=order.min(2) as i32);
        let mut m = random_special_frame(rng, 3, max_neg);
        if order > 0 && rng.gen_bool(0.5) {
            let k = rng.gen_range(-(order as i32)..=order as i32);
            m = &m * &LaurentMatrix::diag(LaurentPoly::z_pow(k), LaurentPoly::z_pow(-k));
        }
        if m.pole_order() == order {
            return m;
        }
    }
}

/// Trace-free `[[α, γ], [β, −α]] / den` with random Laurent entries.
pub fn random_trace_free_higgs<R: Rng + ?Sized>(rng: &mut R) -> HiggsField {
    let alpha = random_laurent(rng, -2, 2, 3);
    let numer = LaurentMatrix::new(
        alpha.clone(),
        random_laurent(rng, -2, 2, 3),
        random_laurent(rng, -2, 2, 3),
        -alpha,
    );
    HiggsField::new(numer, random_den(rng)).expect("trace-free by construction")
}

/// Rank-one nilpotent `r·[[pq, −p²], [q², −pq]] / den`, so `det = 0`.
pub fn random_null_higgs<R: Rng + ?Sized>(rng: &mut R) -> HiggsField {
    let p = random_laurent(rng, -2, 2, 3);
    let q = random_laurent(rng, -2, 2, 3);
    let r = random_nonzero_laurent(rng, -1, 1, 2);
    let pq = &p * &q;
    let numer = LaurentMatrix::new(pq.clone(), -(&p * &p), &q * &q, -pq).scale_poly(&r);
    HiggsField::new(numer, random_den(rng)).expect("trace-free by construction")
}

fn random_den<R: Rng + ?Sized>(rng: &mut R) -> LaurentPoly {
    if rng.gen_bool(0.5) {
        LaurentPoly::one()
    } else {
        random_nonzero_laurent(rng, 0, 2, 2)
    }
}
