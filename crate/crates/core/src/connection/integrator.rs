//! Dormand–Prince 5(4) for the matrix equation `dY/ds = F(s)·Y` on `s ∈ [0, 1]`.

use crate::mat2::Mat2;

use super::ConnectionError;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights (first-same-as-last: equal to the last row of `A`).
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const MIN_STEP: f64 = 1e-14;
const MAX_STEPS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControls {
    pub rtol: f64,
    pub atol: f64,
}

/// Statistics of one integration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
}

fn error_norm(err: &Mat2, y0: &Mat2, y1: &Mat2, ctl: StepControls) -> f64 {
    let e = [err.a, err.b, err.c, err.d];
    let p = [y0.a, y0.b, y0.c, y0.d];
    let q = [y1.a, y1.b, y1.c, y1.d];
    let sum: f64 = (0..4)
        .map(|i| {
            let sc = ctl.atol + ctl.rtol * p[i].norm().max(q[i].norm());
            (e[i].norm() / sc).powi(2)
        })
        .sum();
    (sum / 4.0).sqrt()
}

/// Integrates `dY/ds = rhs(s)·Y` from `Y(0) = y0` to `s = 1`.
pub fn integrate<F>(rhs: F, y0: Mat2, ctl: StepControls) -> Result<(Mat2, Stats), ConnectionError>
where
    F: Fn(f64) -> Mat2,
{
    let mut s = 0.0;
    let mut y = y0;
    let mut h: f64 = 1e-2;
    let mut stats = Stats::default();
    let mut k1 = rhs(0.0) * y;
    while s < 1.0 {
        if stats.accepted + stats.rejected > MAX_STEPS {
            return Err(ConnectionError::ToleranceNotMet { s });
        }
        h = h.min(1.0 - s);
        let mut k = [Mat2::zero(); 7];
        k[0] = k1;
        for i in 1..7 {
            let mut yi = y;
            for j in 0..i {
                if A[i][j] != 0.0 {
                    yi += k[j] * (h * A[i][j]);
                }
            }
            k[i] = rhs(s + C[i] * h) * yi;
        }
        let mut y5 = y;
        let mut err = Mat2::zero();
        for i in 0..7 {
            if B5[i] != 0.0 {
                y5 += k[i] * (h * B5[i]);
            }
            err += k[i] * (h * (B5[i] - B4[i]));
        }
        let en = error_norm(&err, &y, &y5, ctl);
        if !en.is_finite() {
            return Err(ConnectionError::ToleranceNotMet { s });
        }
        if en <= 1.0 {
            s += h;
            y = y5;
            k1 = k[6];
            stats.accepted += 1;
            let factor = if en == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * en.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            h *= factor;
        } else {
            stats.rejected += 1;
            h *= (SAFETY * en.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
            if h < MIN_STEP {
                return Err(ConnectionError::ToleranceNotMet { s });
            }
        }
    }
    Ok((y, stats))
}
