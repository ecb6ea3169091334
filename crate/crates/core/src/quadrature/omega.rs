//! Integration over the symmetric cone and the reduced `G/N` integral.

use core::f64::consts::{PI, SQRT_2};

#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;

use super::{integrate_1d, integrate_2d, integrate_3d, GridProfile, IntegralResult, Interval, QuadValue};
use crate::calibration::GN_MEASURE_CONSTANT;
use crate::error::Result;
use crate::jordan::{Algebra, AlgebraFamily, JordanElement};

/// Ratio of the trace-form Lebesgue measure on `V` to coordinate measure
/// `dx11 dx22 dx12` on `Sym(2, ℝ)`. Fixed by the box calibration
/// `∫_Ω e^{−tr x} dx = Γ_Ω(3/2, 3/2)`.
pub const OMEGA_MEASURE_FACTOR: f64 = SQRT_2;

/// `∫_Ω f(x) dx`.
///
/// Rank 2 uses `x = R(φ) diag(λ2 + s, λ2) R(φ)ᵀ` with `φ ∈ [0, π)`,
/// `λ2, s > 0`; the coordinate Jacobian is `s`.
pub fn integrate_omega<T: QuadValue>(
    f: impl Fn(&JordanElement) -> T,
    alg: Algebra,
    profile: &GridProfile,
) -> Result<IntegralResult<T>> {
    match alg.family() {
        AlgebraFamily::RankOneReal => integrate_1d(|u| f(&JordanElement::scalar(u)), Interval::From(0.0), profile),
        AlgebraFamily::SymMatrices2 => {
            let g = |l2: f64, s: f64, phi: f64| {
                let x = crate::jordan::sym2_from_spectral(l2 + s, l2, phi);
                f(&x) * s
            };
            let r = integrate_3d(g, Interval::From(0.0), Interval::From(0.0), Interval::Finite(0.0, PI), profile)?;
            Ok(r.scaled(OMEGA_MEASURE_FACTOR))
        }
    }
}

/// `∫_Ω f(x) dx` for `f` depending only on the eigenvalues, given as
/// `f(λ1, λ2)` with `λ1 ≥ λ2` (rank 1 passes `λ2 = λ1`).
pub fn integrate_omega_invariant<T: QuadValue>(
    f: impl Fn(f64, f64) -> T,
    alg: Algebra,
    profile: &GridProfile,
) -> Result<IntegralResult<T>> {
    match alg.family() {
        AlgebraFamily::RankOneReal => integrate_1d(|u| f(u, u), Interval::From(0.0), profile),
        AlgebraFamily::SymMatrices2 => {
            let r = integrate_2d(|l2: f64, s: f64| f(l2 + s, l2) * s, Interval::From(0.0), Interval::From(0.0), profile)?;
            Ok(r.scaled(PI * OMEGA_MEASURE_FACTOR))
        }
    }
}

/// Normalization of the `G/N` measure relative to `dk dl` reduced to `Ω`.
pub fn gn_measure_constant(_alg: Algebra) -> f64 {
    GN_MEASURE_CONSTANT
}

/// `∫_{G/N} φ d(gN)` for a `K`-invariant integrand written as a function of
/// `x = l·e`, i.e. `C·∫_Ω φ(x) Δ(x)^{−2n/r} dx` with `C` the calibrated
/// measure constant.
pub fn integrate_gn_lowest_ktype(
    phi: impl Fn(&JordanElement) -> f64,
    alg: Algebra,
    profile: &GridProfile,
) -> Result<IntegralResult<f64>> {
    let p = 2.0 * alg.n_over_r();
    let r = integrate_omega(|x| phi(x) * x.det().powf(-p), alg, profile)?;
    Ok(r.scaled(gn_measure_constant(alg)))
}
