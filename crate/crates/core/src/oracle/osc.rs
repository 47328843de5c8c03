use super::accel::euler_transform;
use super::quad::{quad_1d_with, QuadOptions, QuadResult};

/// Number of half-period slabs summed before acceleration.
const SLABS: usize = 64;

/// `∫_0^∞ f` for integrands whose sign pattern repeats every `half_period`
/// from `first_zero` on.
///
/// `[0, first_zero]` is integrated directly; after that the integrals over
/// consecutive slabs of width `half_period` form an alternating series whose
/// partial sums are accelerated by [`euler_transform`](super::euler_transform).
pub fn quad_oscillatory<F: Fn(f64) -> f64>(f: F, first_zero: f64, half_period: f64, tol: f64) -> QuadResult {
    let opts = QuadOptions { abs_tol: tol * 0.01, rel_tol: 0.0, max_subdivisions: 2000 };
    let head = quad_1d_with(&f, 0.0, first_zero, &opts);
    let slab_opts = QuadOptions { abs_tol: tol / (10.0 * SLABS as f64), ..opts };
    let mut sums = Vec::with_capacity(SLABS);
    let mut acc = head.value;
    let mut err = head.error_estimate;
    let mut subdivisions = head.subdivisions;
    let mut converged = head.converged;
    let mut slabs = Vec::with_capacity(SLABS);
    for k in 0..SLABS {
        let a = first_zero + k as f64 * half_period;
        let r = quad_1d_with(&f, a, a + half_period, &slab_opts);
        acc += r.value;
        err += r.error_estimate;
        subdivisions += r.subdivisions;
        converged &= r.converged;
        slabs.push(r.value);
        sums.push(acc);
    }
    let tail = &slabs[SLABS / 2..];
    let alternating = tail.windows(2).all(|w| w[0] * w[1] <= 0.0);
    let tail_negligible = tail.iter().all(|v| v.abs() <= tol * 1e-3);
    if !alternating && !tail_negligible {
        return QuadResult { value: acc, error_estimate: f64::INFINITY, subdivisions, converged: false };
    }
    match euler_transform(&sums) {
        Ok(e) => {
            let error_estimate = err + e.stabilization;
            QuadResult { value: e.value, error_estimate, subdivisions, converged: converged && error_estimate <= tol }
        }
        Err(_) => QuadResult { value: acc, error_estimate: f64::INFINITY, subdivisions, converged: false },
    }
}
