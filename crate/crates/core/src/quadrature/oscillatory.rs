//! Line integrals of slowly decaying oscillatory integrands.

use alloc::vec::Vec;

use super::{gk, GridProfile, IntegralResult, QuadValue};
use crate::error::{ConeError, Result};

/// Wynn's epsilon extrapolation of a sequence of partial sums; returns the
/// limit estimate and the difference between the last two estimates.
pub fn wynn_epsilon<T: QuadValue>(seq: &[T]) -> (T, f64) {
    let n = seq.len();
    if n == 0 {
        return (T::zero(), f64::INFINITY);
    }
    if n < 3 {
        let last = seq[n - 1];
        let err = if n == 2 { (seq[1] - seq[0]).magnitude() } else { f64::INFINITY };
        return (last, err);
    }
    // prev = column k−1, cur = column k.
    let mut prev: Vec<T> = alloc::vec![T::zero(); n + 1];
    let mut cur: Vec<T> = seq.to_vec();
    let mut estimates: Vec<T> = alloc::vec![seq[n - 1]];
    let mut k = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        let mut broke = false;
        for j in 0..cur.len() - 1 {
            let diff = cur[j + 1] - cur[j];
            if diff.magnitude() <= f64::MIN_POSITIVE * 1e10 {
                broke = true;
                break;
            }
            next.push(prev[j + 1] + T::one() / diff);
        }
        if broke {
            break;
        }
        k += 1;
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            if let Some(v) = cur.last() {
                if v.is_finite_value() {
                    estimates.push(*v);
                }
            }
        }
    }
    let best = estimates[estimates.len() - 1];
    let err = if estimates.len() >= 2 {
        (best - estimates[estimates.len() - 2]).magnitude()
    } else {
        (seq[n - 1] - seq[n - 2]).magnitude()
    };
    (best, err)
}

/// `∫_ℝ f(x) dx` for integrands oscillating with the given half period in
/// the tails: adaptive rule on `[−core, core]`, then half-period chunks
/// accelerated by Wynn's epsilon on each side.
pub fn integrate_oscillatory_line<T: QuadValue>(
    f: impl Fn(f64) -> T,
    half_period: f64,
    core: f64,
    chunks: usize,
    profile: &GridProfile,
) -> Result<IntegralResult<T>> {
    profile.validate()?;
    if !(half_period > 0.0) || !(core > 0.0) {
        return Err(ConeError::invalid("half period and core width must be positive"));
    }
    let mut g = |x: f64| f(x);
    let centre = gk::adaptive(&mut g, -core, core, profile.panels[0], profile.depth, 0.1 * profile.abs_tol, 0.1 * profile.rel_tol);
    let mut evaluations = centre.evaluations;
    let mut error = centre.error;
    let mut total = centre.value;
    for sign in [1.0, -1.0] {
        let mut partial = T::zero();
        let mut sums = Vec::with_capacity(chunks);
        for k in 0..chunks {
            let a = core + half_period * k as f64;
            let b = a + half_period;
            let (lo, hi) = if sign > 0.0 { (a, b) } else { (-b, -a) };
            let seg = gk::adaptive(&mut g, lo, hi, 1, profile.depth, 0.01 * profile.abs_tol, 0.01 * profile.rel_tol);
            evaluations += seg.evaluations;
            error += seg.error;
            partial = partial + seg.value;
            sums.push(partial);
        }
        let (limit, err) = wynn_epsilon(&sums);
        total = total + limit;
        error += err;
    }
    let target = profile.abs_tol.max(profile.rel_tol * total.magnitude());
    if error > target.max(1e3 * f64::EPSILON * total.magnitude()) && error > 10.0 * target {
        return Err(ConeError::Precision { estimate: error, target });
    }
    Ok(IntegralResult { value: total, error_estimate: error, evaluations })
}
