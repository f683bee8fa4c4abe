//! Roots of complex polynomials by simultaneous (Aberth–Ehrlich) iteration.

use num_complex::Complex64;

const MAX_ITER: usize = 500;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots, with multiplicity, of `Σ coeffs[k] z^k`.
///
/// Leading zero coefficients are ignored. Intended for the small, square-free
/// polynomials produced by the exact layer; multiple roots converge only to
/// about `sqrt(eps)`.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs: Vec<Complex64> = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    let mut zeros_at_origin = 0;
    while coeffs.first().is_some_and(|c| c.norm() == 0.0) && coeffs.len() > 1 {
        coeffs.remove(0);
        zeros_at_origin += 1;
    }
    let n = coeffs.len().saturating_sub(1);
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if n == 0 {
        return roots;
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        roots.push(-monic[0]);
        return roots;
    }

    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();

    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // Newton polish.
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    roots.extend(z);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn contains(roots: &[Complex64], target: Complex64, tol: f64) -> bool {
        roots.iter().any(|r| (r - target).norm() < tol)
    }

    #[test]
    fn cubic_with_complex_roots() {
        // (z - 1)(z - i)(z + 2) = z³ + (1 - i)z² + (-2 - i)z + 2i
        let roots = polynomial_roots(&[c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), c(1.0, 0.0)]);
        assert_eq!(roots.len(), 3);
        for t in [c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0)] {
            assert!(contains(&roots, t, 1e-12), "{t} missing from {roots:?}");
        }
    }

    #[test]
    fn factors_of_z_are_exact() {
        let roots = polynomial_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(roots.iter().filter(|r| r.norm() == 0.0).count(), 2);
        assert!(contains(&roots, c(1.0, 0.0), 1e-14));
    }

    #[test]
    fn roots_of_unity() {
        let mut coeffs = vec![c(0.0, 0.0); 9];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[8] = c(1.0, 0.0);
        let roots = polynomial_roots(&coeffs);
        for k in 0..8 {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 8.0);
            assert!(contains(&roots, w, 1e-12));
        }
    }
}
